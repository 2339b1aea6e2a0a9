#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <string>

#include "sumner/error.hpp"
#include "sumner/graph_ops.hpp"

namespace sumner {

// ---------------------------------------------------------------- Tournament

Tournament::Tournament(std::size_t n) : out_(n, VertexSet(n)), in_(n, VertexSet(n)) {}

void Tournament::orient(Vertex u, Vertex v) {
    out_[static_cast<std::size_t>(u)].insert(v);
    in_[static_cast<std::size_t>(v)].insert(u);
}

Tournament Tournament::from_out_rows(std::vector<VertexSet> rows) {
    const std::size_t n = rows.size();
    if (n == 0) throw InvalidArgument("tournament needs at least one vertex");
    for (std::size_t u = 0; u < n; ++u) {
        if (rows[u].universe() != n) throw InvalidArgument("row " + std::to_string(u) + " has wrong universe");
        if (rows[u].contains(static_cast<Vertex>(u))) throw InvalidArgument("self-arc at " + std::to_string(u));
    }
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            const bool uv = rows[u].contains(static_cast<Vertex>(v));
            const bool vu = rows[v].contains(static_cast<Vertex>(u));
            if (uv == vu)
                throw InvalidArgument("pair {" + std::to_string(u) + "," + std::to_string(v) + "} has " +
                                      (uv ? "both arcs" : "no arc"));
        }
    Tournament g(n);
    for (std::size_t u = 0; u < n; ++u) rows[u].for_each([&](Vertex v) { g.orient(static_cast<Vertex>(u), v); });
    return g;
}

// -------------------------------------------------------------- DirectedTree

DirectedTree::DirectedTree(std::size_t n, std::vector<Arc> arcs, std::optional<Vertex> root)
    : arcs_(std::move(arcs)), adjacency_(n), root_(root) {
    if (n == 0) throw InvalidArgument("tree needs at least one vertex");
    if (arcs_.size() != n - 1)
        throw InvalidArgument("tree on " + std::to_string(n) + " vertices needs " + std::to_string(n - 1) +
                              " arcs, got " + std::to_string(arcs_.size()));
    const auto in_range = [n](Vertex v) { return v >= 0 && static_cast<std::size_t>(v) < n; };
    if (root_ && !in_range(*root_)) throw InvalidArgument("root out of range");
    // Union-find detects both repeated pairs and cycles.
    std::vector<Vertex> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    const auto find = [&](Vertex x) {
        while (uf[static_cast<std::size_t>(x)] != x) x = uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
        return x;
    };
    for (const Arc& a : arcs_) {
        if (!in_range(a.tail) || !in_range(a.head))
            throw InvalidArgument("arc " + std::to_string(a.tail) + "->" + std::to_string(a.head) + " out of range");
        if (a.tail == a.head) throw InvalidArgument("self-loop at " + std::to_string(a.tail));
        const Vertex ra = find(a.tail), rb = find(a.head);
        if (ra == rb)
            throw InvalidArgument("arc " + std::to_string(a.tail) + "->" + std::to_string(a.head) +
                                  " closes a cycle or repeats a pair");
        uf[static_cast<std::size_t>(ra)] = rb;
        adjacency_[static_cast<std::size_t>(a.tail)].push_back({a.head, true});
        adjacency_[static_cast<std::size_t>(a.head)].push_back({a.tail, false});
    }
}

DirectedTree DirectedTree::with_root(Vertex r) const { return DirectedTree(order(), arcs_, r); }

std::size_t DirectedTree::out_degree(Vertex v) const {
    const auto& nb = neighbours(v);
    return static_cast<std::size_t>(std::count_if(nb.begin(), nb.end(), [](const Neighbour& x) { return x.outgoing; }));
}

std::size_t DirectedTree::in_degree(Vertex v) const { return degree(v) - out_degree(v); }

bool DirectedTree::has_arc(Vertex u, Vertex v) const {
    const auto& nb = neighbours(u);
    return std::any_of(nb.begin(), nb.end(), [v](const Neighbour& x) { return x.vertex == v && x.outgoing; });
}

std::vector<Vertex> DirectedTree::leaves() const {
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < order(); ++v)
        if (adjacency_[v].size() == 1) out.push_back(static_cast<Vertex>(v));
    return out;
}

DirectedTree::Hanging DirectedTree::hang(Vertex root) const {
    Hanging h;
    h.parent.assign(order(), -1);
    h.order.reserve(order());
    std::vector<char> seen(order(), 0);
    h.order.push_back(root);
    seen.at(static_cast<std::size_t>(root)) = 1;
    for (std::size_t i = 0; i < h.order.size(); ++i) {
        const Vertex x = h.order[i];
        for (const Neighbour& nb : neighbours(x)) {
            if (seen[static_cast<std::size_t>(nb.vertex)]) continue;
            seen[static_cast<std::size_t>(nb.vertex)] = 1;
            h.parent[static_cast<std::size_t>(nb.vertex)] = x;
            h.order.push_back(nb.vertex);
        }
    }
    return h;
}

InducedSubtree induced_subtree(const DirectedTree& t, const VertexSet& keep) {
    if (keep.universe() != t.order()) throw InvalidArgument("vertex set universe does not match tree order");
    if (keep.empty()) throw InvalidArgument("induced subtree of an empty set");
    InducedSubtree out;
    out.to_parent = keep.to_vector();
    std::vector<Vertex> local(t.order(), -1);
    for (std::size_t i = 0; i < out.to_parent.size(); ++i) local[static_cast<std::size_t>(out.to_parent[i])] = static_cast<Vertex>(i);
    std::vector<Arc> arcs;
    for (const Arc& a : t.arcs())
        if (keep.contains(a.tail) && keep.contains(a.head))
            arcs.push_back({local[static_cast<std::size_t>(a.tail)], local[static_cast<std::size_t>(a.head)]});
    if (arcs.size() + 1 != out.to_parent.size()) throw InvalidArgument("vertex set does not induce a connected subtree");
    std::optional<Vertex> root;
    if (t.root() && keep.contains(*t.root())) root = local[static_cast<std::size_t>(*t.root())];
    out.tree = DirectedTree(out.to_parent.size(), std::move(arcs), root);
    return out;
}

DirectedTree delete_leaf(const DirectedTree& t, Vertex leaf) {
    if (t.order() < 2 || t.degree(leaf) != 1) throw InvalidArgument("vertex " + std::to_string(leaf) + " is not a leaf");
    const auto shift = [leaf](Vertex v) { return v > leaf ? v - 1 : v; };
    std::vector<Arc> arcs;
    for (const Arc& a : t.arcs())
        if (a.tail != leaf && a.head != leaf) arcs.push_back({shift(a.tail), shift(a.head)});
    std::optional<Vertex> root;
    if (t.root() && *t.root() != leaf) root = shift(*t.root());
    return DirectedTree(t.order() - 1, std::move(arcs), root);
}

// ----------------------------------------------------------------- Embedding

Embedding Embedding::from_images(std::vector<Vertex> images) {
    Embedding e;
    e.image_ = std::move(images);
    for (Vertex& v : e.image_)
        if (v < -1) throw InvalidArgument("negative image id");
    return e;
}

void Embedding::assign(Vertex t, Vertex v) {
    if (v < 0) throw InvalidArgument("image must be a vertex id");
    image_.at(static_cast<std::size_t>(t)) = v;
}

std::size_t Embedding::mapped_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(image_.begin(), image_.end(), [](Vertex v) { return v >= 0; }));
}

VertexSet Embedding::image_set(std::size_t host_order) const {
    VertexSet s(host_order);
    for (Vertex v : image_)
        if (v >= 0) s.insert(v);
    return s;
}

// ------------------------------------------------------------ structural ops

namespace {

void check_vertex(const Tournament& g, Vertex v) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.order())
        throw InvalidArgument("vertex " + std::to_string(v) + " out of range for tournament of order " +
                              std::to_string(g.order()));
}

void check_universe(const Tournament& g, const VertexSet& s) {
    if (s.universe() != g.order()) throw InvalidArgument("vertex set universe does not match tournament order");
}

} // namespace

Degrees degrees(const Tournament& g, Vertex v) {
    check_vertex(g, v);
    return {g.outdegree(v), g.indegree(v)};
}

VertexSet restricted_neighbourhood(const Tournament& g, Vertex v, const VertexSet& s, Direction direction) {
    check_vertex(g, v);
    check_universe(g, s);
    return (direction == Direction::out ? g.out(v) : g.in(v)) & s;
}

InducedSubtournament induced_subtournament(const Tournament& g, const VertexSet& s) {
    check_universe(g, s);
    if (s.empty()) throw InvalidArgument("induced subtournament of an empty set");
    InducedSubtournament out;
    out.to_host = s.to_vector();
    const auto& h = out.to_host;
    out.tournament = Tournament::from_predicate(h.size(), [&](Vertex a, Vertex b) {
        return g.arc(h[static_cast<std::size_t>(a)], h[static_cast<std::size_t>(b)]);
    });
    return out;
}

Tournament reverse(const Tournament& g) {
    return Tournament::from_predicate(g.order(), [&](Vertex u, Vertex v) { return g.arc(v, u); });
}

DirectedTree reverse(const DirectedTree& t) {
    std::vector<Arc> arcs;
    arcs.reserve(t.arcs().size());
    for (const Arc& a : t.arcs()) arcs.push_back({a.head, a.tail});
    return DirectedTree(t.order(), std::move(arcs), t.root());
}

bool is_valid_partial_embedding(const DirectedTree& t, const Tournament& g, const Embedding& phi) {
    if (phi.tree_order() != t.order()) return false;
    std::vector<char> used(g.order(), 0);
    for (Vertex v : phi.images()) {
        if (v < 0) continue;
        if (static_cast<std::size_t>(v) >= g.order() || used[static_cast<std::size_t>(v)]) return false;
        used[static_cast<std::size_t>(v)] = 1;
    }
    for (const Arc& a : t.arcs()) {
        const Vertex x = phi[a.tail], y = phi[a.head];
        if (x >= 0 && y >= 0 && !g.arc(x, y)) return false;
    }
    return true;
}

bool is_valid_embedding(const DirectedTree& t, const Tournament& g, const Embedding& phi) {
    if (phi.tree_order() != t.order() || !phi.is_total())
        throw PartialEmbedding("embedding maps " + std::to_string(phi.mapped_count()) + " of " +
                               std::to_string(t.order()) + " tree vertices");
    return is_valid_partial_embedding(t, g, phi);
}

std::size_t directed_edge_count(const Tournament& g, const VertexSet& u, const VertexSet& v) {
    check_universe(g, u);
    check_universe(g, v);
    std::size_t c = 0;
    u.for_each([&](Vertex x) { c += count_and(g.out(x), v); });
    return c;
}

Density density(const Tournament& g, const VertexSet& u, const VertexSet& v) {
    check_universe(g, u);
    check_universe(g, v);
    if (u.empty() || v.empty()) throw InvalidArgument("density needs nonempty sets");
    if (u.intersects(v)) throw InvalidArgument("density needs disjoint sets");
    return {static_cast<std::int64_t>(directed_edge_count(g, u, v)),
            static_cast<std::int64_t>(u.count() * v.count())};
}

Tournament relabel(const Tournament& g, const std::vector<Vertex>& perm) {
    const std::size_t n = g.order();
    if (perm.size() != n) throw InvalidArgument("permutation size mismatch");
    std::vector<Vertex> inv(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const Vertex p = perm[i];
        if (p < 0 || static_cast<std::size_t>(p) >= n || inv[static_cast<std::size_t>(p)] != -1)
            throw InvalidArgument("not a permutation");
        inv[static_cast<std::size_t>(p)] = static_cast<Vertex>(i);
    }
    return Tournament::from_predicate(n, [&](Vertex a, Vertex b) {
        return g.arc(inv[static_cast<std::size_t>(a)], inv[static_cast<std::size_t>(b)]);
    });
}

DirectedTree relabel(const DirectedTree& t, const std::vector<Vertex>& perm) {
    if (perm.size() != t.order()) throw InvalidArgument("permutation size mismatch");
    std::vector<Arc> arcs;
    for (const Arc& a : t.arcs()) arcs.push_back({perm[static_cast<std::size_t>(a.tail)], perm[static_cast<std::size_t>(a.head)]});
    std::optional<Vertex> root;
    if (t.root()) root = perm[static_cast<std::size_t>(*t.root())];
    return DirectedTree(t.order(), std::move(arcs), root);
}

// ----------------------------------------------------------- canonical forms

namespace {

/// Colour refinement by out-neighbour colour multisets. Colours are ranks of
/// signatures, so they are invariant under relabelling.
std::vector<int> refined_colours(const Tournament& g) {
    const std::size_t n = g.order();
    std::vector<int> colour(n);
    for (std::size_t v = 0; v < n; ++v) colour[v] = static_cast<int>(g.outdegree(static_cast<Vertex>(v)));
    std::size_t classes = 0;
    for (std::size_t round = 0; round < n; ++round) {
        std::vector<std::vector<int>> sig(n);
        for (std::size_t v = 0; v < n; ++v) {
            sig[v].push_back(colour[v]);
            std::vector<int> outs;
            g.out(static_cast<Vertex>(v)).for_each([&](Vertex w) { outs.push_back(colour[static_cast<std::size_t>(w)]); });
            std::sort(outs.begin(), outs.end());
            sig[v].insert(sig[v].end(), outs.begin(), outs.end());
        }
        std::vector<std::vector<int>> sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t v = 0; v < n; ++v)
            colour[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
        if (sorted.size() == classes) break;
        classes = sorted.size();
    }
    return colour;
}

/// Lexicographic branch-and-bound over colour-respecting vertex orders. The
/// code of an order p is the sequence of columns; column k holds, for j < k,
/// the bit arc(p_j → p_k).
class CanonicalSearch {
public:
    explicit CanonicalSearch(const Tournament& g) : g_(g), n_(g.order()) {
        const std::vector<int> colour = refined_colours(g);
        order_.resize(n_);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) {
            return colour[static_cast<std::size_t>(a)] < colour[static_cast<std::size_t>(b)];
        });
        cell_of_position_.resize(n_);
        for (std::size_t k = 0; k < n_; ++k) cell_of_position_[k] = colour[static_cast<std::size_t>(order_[k])];
        vertex_colour_ = colour;
        code_.assign(n_ * (n_ - 1) / 2, 0);
        used_.assign(n_, 0);
        pos_.assign(n_, -1);
    }

    std::string run() {
        search(0, false);
        std::string key;
        key.push_back(static_cast<char>(n_));
        unsigned char byte = 0;
        int nbits = 0;
        for (unsigned char bit : best_) {
            byte = static_cast<unsigned char>((byte << 1) | bit);
            if (++nbits == 8) {
                key.push_back(static_cast<char>(byte));
                byte = 0;
                nbits = 0;
            }
        }
        if (nbits) key.push_back(static_cast<char>(byte << (8 - nbits)));
        return key;
    }

private:
    // `less` means the current prefix is already strictly below the best.
    void search(std::size_t k, bool less) {
        if (k == n_) {
            if (!have_best_ || less) {
                best_ = code_;
                have_best_ = true;
            }
            return;
        }
        const std::size_t base = k * (k - 1) / 2;
        for (Vertex v : order_) {
            if (used_[static_cast<std::size_t>(v)] || vertex_colour_[static_cast<std::size_t>(v)] != cell_of_position_[k]) continue;
            bool now_less = less;
            bool prune = false;
            for (std::size_t j = 0; j < k; ++j) {
                const unsigned char bit = g_.arc(pos_[j], v) ? 1 : 0;
                code_[base + j] = bit;
                if (have_best_ && !now_less) {
                    if (bit > best_[base + j]) { prune = true; break; }
                    if (bit < best_[base + j]) now_less = true;
                }
            }
            if (prune) continue;
            used_[static_cast<std::size_t>(v)] = 1;
            pos_[k] = v;
            search(k + 1, now_less);
            used_[static_cast<std::size_t>(v)] = 0;
        }
    }

    const Tournament& g_;
    std::size_t n_;
    std::vector<Vertex> order_;
    std::vector<int> cell_of_position_;
    std::vector<int> vertex_colour_;
    std::vector<unsigned char> code_, best_;
    std::vector<char> used_;
    std::vector<Vertex> pos_;
    bool have_best_ = false;
};

std::string rooted_code(const DirectedTree& t, Vertex v, Vertex parent) {
    std::vector<std::string> children;
    for (const auto& nb : t.neighbours(v)) {
        if (nb.vertex == parent) continue;
        children.push_back((nb.outgoing ? "o" : "i") + rooted_code(t, nb.vertex, v));
    }
    std::sort(children.begin(), children.end());
    std::string out = "(";
    for (const auto& c : children) out += c;
    out += ")";
    return out;
}

} // namespace

std::string canonical_form(const Tournament& g, std::size_t limit) {
    if (g.order() > limit)
        throw CapExceeded("canonical_form limited to " + std::to_string(limit) + " vertices, got " + std::to_string(g.order()));
    if (g.order() == 0) return std::string(1, '\0');
    return CanonicalSearch(g).run();
}

std::string canonical_form(const DirectedTree& t) {
    const std::size_t n = t.order();
    // Centres by repeated leaf stripping.
    std::vector<std::size_t> deg(n);
    std::vector<Vertex> layer;
    for (std::size_t v = 0; v < n; ++v) {
        deg[v] = t.degree(static_cast<Vertex>(v));
        if (deg[v] <= 1) layer.push_back(static_cast<Vertex>(v));
    }
    std::size_t remaining = n;
    while (remaining > 2) {
        std::vector<Vertex> next;
        for (Vertex leaf : layer) {
            --remaining;
            for (const auto& nb : t.neighbours(leaf))
                if (--deg[static_cast<std::size_t>(nb.vertex)] == 1) next.push_back(nb.vertex);
        }
        layer = std::move(next);
    }
    std::string best;
    for (Vertex c : layer) {
        std::string code = rooted_code(t, c, -1);
        if (best.empty() || code < best) best = std::move(code);
    }
    return best;
}

} // namespace sumner
