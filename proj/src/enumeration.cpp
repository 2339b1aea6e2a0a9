#include "sumner/enumeration.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sumner/error.hpp"
#include "sumner/generators.hpp"
#include "sumner/graph_ops.hpp"

namespace sumner {

std::uint64_t labelled_tournament_count(std::size_t n) {
    const std::size_t pairs = n * (n - 1) / 2;
    if (pairs >= 64) throw CapExceeded("labelled tournament count overflows 64 bits for n=" + std::to_string(n));
    return std::uint64_t{1} << pairs;
}

Tournament tournament_from_index(std::size_t n, std::uint64_t index) {
    std::size_t k = 0;
    return Tournament::from_predicate(n, [&](Vertex, Vertex) { return ((index >> k++) & 1U) != 0; });
}

void for_each_labelled_tournament(std::size_t n, std::uint64_t first, std::uint64_t last,
                                  const std::function<void(std::uint64_t, const Tournament&)>& visit) {
    if (n > labelled_enumeration_cap)
        throw CapExceeded("labelled enumeration limited to n <= " + std::to_string(labelled_enumeration_cap));
    last = std::min(last, labelled_tournament_count(n));
    for (std::uint64_t i = first; i < last; ++i) visit(i, tournament_from_index(n, i));
}

Tournament tournament_from_canonical_key(const std::string& key) {
    if (key.empty()) throw InvalidArgument("empty canonical key");
    const auto n = static_cast<std::size_t>(static_cast<unsigned char>(key[0]));
    std::vector<unsigned char> bits;
    for (std::size_t i = 1; i < key.size(); ++i)
        for (int b = 7; b >= 0; --b) bits.push_back(static_cast<unsigned char>((static_cast<unsigned char>(key[i]) >> b) & 1U));
    if (bits.size() < n * (n - 1) / 2) throw InvalidArgument("canonical key too short");
    // Column k lists arc(j → k) for j < k.
    return Tournament::from_predicate(n, [&](Vertex j, Vertex k) {
        const auto kk = static_cast<std::size_t>(k);
        return bits[kk * (kk - 1) / 2 + static_cast<std::size_t>(j)] != 0;
    });
}

std::vector<Tournament> tournament_classes(std::size_t n) {
    if (n == 0) throw InvalidArgument("tournaments need at least one vertex");
    if (n > iso_tournament_cap)
        throw CapExceeded("isomorphism-class enumeration limited to n <= " + std::to_string(iso_tournament_cap));
    std::vector<Tournament> current{transitive_tournament(1)};
    for (std::size_t m = 2; m <= n; ++m) {
        std::set<std::string> keys;
        for (const Tournament& base : current) {
            const std::size_t old = m - 1;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << old); ++mask) {
                // New vertex `old` beats exactly the vertices in `mask`.
                const Tournament ext = Tournament::from_predicate(m, [&](Vertex u, Vertex v) {
                    if (static_cast<std::size_t>(v) == old) return ((mask >> u) & 1U) == 0;
                    return base.arc(u, v);
                });
                keys.insert(canonical_form(ext));
            }
        }
        current.clear();
        for (const auto& key : keys) current.push_back(tournament_from_canonical_key(key));
    }
    return current;
}

std::vector<DirectedTree> oriented_tree_classes(std::size_t n) {
    if (n == 0) throw InvalidArgument("trees need at least one vertex");
    if (n > iso_tree_cap) throw CapExceeded("tree enumeration limited to n <= " + std::to_string(iso_tree_cap));
    std::vector<DirectedTree> current{DirectedTree(1, {})};
    for (std::size_t m = 2; m <= n; ++m) {
        std::map<std::string, DirectedTree> classes;
        for (const DirectedTree& base : current)
            for (std::size_t v = 0; v + 1 < m; ++v)
                for (const bool outward : {true, false}) {
                    std::vector<Arc> arcs = base.arcs();
                    const auto leaf = static_cast<Vertex>(m - 1);
                    arcs.push_back(outward ? Arc{static_cast<Vertex>(v), leaf} : Arc{leaf, static_cast<Vertex>(v)});
                    DirectedTree ext(m, std::move(arcs));
                    std::string key = canonical_form(ext);
                    classes.try_emplace(std::move(key), std::move(ext));
                }
        current.clear();
        for (auto& [key, tree] : classes) current.push_back(std::move(tree));
    }
    return current;
}

} // namespace sumner
