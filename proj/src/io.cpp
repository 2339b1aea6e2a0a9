#include "sumner/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "sumner/error.hpp"

namespace sumner::io {

namespace {

struct LineReader {
    std::istream& in;
    std::size_t line_no = 0;

    bool next(std::string& line) {
        if (!std::getline(in, line)) return false;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }
};

/// Splits on spaces/tabs, remembering each token's 1-based column.
std::vector<std::pair<std::string, std::size_t>> tokens(const std::string& line) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i == line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        out.emplace_back(line.substr(start, i - start), start + 1);
    }
    return out;
}

long parse_count(const std::string& tok, std::size_t line, std::size_t col, const char* what) {
    long value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 0)
        throw ParseError(line, col, std::string("expected non-negative integer ") + what + ", got '" + tok + "'");
    return value;
}

std::size_t parse_header(LineReader& r, const char* keyword) {
    std::string line;
    if (!r.next(line)) throw ParseError(1, 1, std::string("missing header '") + keyword + " n'");
    const auto toks = tokens(line);
    if (toks.empty() || toks[0].first != keyword)
        throw ParseError(r.line_no, toks.empty() ? 1 : toks[0].second, std::string("expected header '") + keyword + " n'");
    if (toks.size() != 2) throw ParseError(r.line_no, toks.size() < 2 ? line.size() + 1 : toks[2].second, "header takes exactly one count");
    const long n = parse_count(toks[1].first, r.line_no, toks[1].second, "vertex count");
    if (n < 1) throw ParseError(r.line_no, toks[1].second, "vertex count must be at least 1");
    return static_cast<std::size_t>(n);
}

void expect_end(LineReader& r) {
    std::string line;
    while (r.next(line))
        if (!tokens(line).empty()) throw ParseError(r.line_no, tokens(line)[0].second, "unexpected trailing content");
}

} // namespace

Tournament parse_tournament(std::istream& in) {
    LineReader r{in};
    const std::size_t n = parse_header(r, "tournament");
    std::vector<std::string> rows;
    std::vector<std::size_t> row_line;
    std::string line;
    while (rows.size() < n) {
        if (!r.next(line)) throw ParseError(r.line_no + 1, 1, "expected " + std::to_string(n) + " matrix rows, got " + std::to_string(rows.size()));
        if (line.size() != n)
            throw ParseError(r.line_no, std::min(line.size(), n) + 1, "row must have exactly " + std::to_string(n) + " characters");
        for (std::size_t j = 0; j < n; ++j)
            if (line[j] != '0' && line[j] != '1') throw ParseError(r.line_no, j + 1, "matrix entries must be 0 or 1");
        rows.push_back(line);
        row_line.push_back(r.line_no);
    }
    expect_end(r);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i][i] != '0') throw ParseError(row_line[i], i + 1, "diagonal entry must be 0");
        for (std::size_t j = i + 1; j < n; ++j)
            if (rows[i][j] == rows[j][i])
                throw ParseError(row_line[j], i + 1,
                                 "entry must be the complement of row " + std::to_string(i) + ", column " + std::to_string(j));
    }
    return Tournament::from_predicate(n, [&](Vertex u, Vertex v) {
        return rows[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] == '1';
    });
}

Tournament parse_tournament(const std::string& text) {
    std::istringstream in(text);
    return parse_tournament(in);
}

DirectedTree parse_tree(std::istream& in) {
    LineReader r{in};
    const std::size_t n = parse_header(r, "tree");
    std::vector<Arc> arcs;
    std::vector<Vertex> uf(n);
    for (std::size_t i = 0; i < n; ++i) uf[i] = static_cast<Vertex>(i);
    const auto find = [&](Vertex x) {
        while (uf[static_cast<std::size_t>(x)] != x) x = uf[static_cast<std::size_t>(x)];
        return x;
    };
    std::string line;
    while (arcs.size() + 1 < n) {
        if (!r.next(line)) throw ParseError(r.line_no + 1, 1, "expected " + std::to_string(n - 1) + " arc lines, got " + std::to_string(arcs.size()));
        const auto toks = tokens(line);
        if (toks.size() != 2) throw ParseError(r.line_no, toks.empty() ? 1 : toks[0].second, "arc line must be 'u v'");
        Arc a{};
        for (int k = 0; k < 2; ++k) {
            const long v = parse_count(toks[static_cast<std::size_t>(k)].first, r.line_no, toks[static_cast<std::size_t>(k)].second, "vertex id");
            if (static_cast<std::size_t>(v) >= n) throw ParseError(r.line_no, toks[static_cast<std::size_t>(k)].second, "vertex id out of range");
            (k == 0 ? a.tail : a.head) = static_cast<Vertex>(v);
        }
        if (a.tail == a.head) throw ParseError(r.line_no, toks[1].second, "self-loop");
        const Vertex ra = find(a.tail), rb = find(a.head);
        if (ra == rb) throw ParseError(r.line_no, 1, "arc closes a cycle or repeats a pair");
        uf[static_cast<std::size_t>(ra)] = rb;
        arcs.push_back(a);
    }
    expect_end(r);
    return DirectedTree(n, std::move(arcs));
}

DirectedTree parse_tree(const std::string& text) {
    std::istringstream in(text);
    return parse_tree(in);
}

std::string format_tournament(const Tournament& g) {
    std::string out = "tournament " + std::to_string(g.order()) + "\n";
    for (std::size_t i = 0; i < g.order(); ++i) {
        for (std::size_t j = 0; j < g.order(); ++j) out.push_back(g.arc(static_cast<Vertex>(i), static_cast<Vertex>(j)) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

std::string format_tree(const DirectedTree& t) {
    std::string out = "tree " + std::to_string(t.order()) + "\n";
    for (const Arc& a : t.arcs()) out += std::to_string(a.tail) + " " + std::to_string(a.head) + "\n";
    return out;
}

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
    return in;
}

} // namespace

Tournament read_tournament_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_tournament(in);
}

DirectedTree read_tree_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_tree(in);
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
    out << contents;
}

} // namespace sumner::io
