#pragma once

// Brute-force reference implementations. They share no code with the library
// beyond the Tournament / DirectedTree containers and use arc() only.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sumner/directed_tree.hpp"
#include "sumner/tournament.hpp"

namespace oracle {

using sumner::DirectedTree;
using sumner::Tournament;
using sumner::Vertex;

/// First injective arc-preserving map found by trying host vertices for tree
/// vertices 0, 1, … in order.
inline std::optional<std::vector<Vertex>> find_embedding(const DirectedTree& t, const Tournament& g) {
    const std::size_t n = t.order(), m = g.order();
    std::vector<Vertex> map(n, -1);
    std::vector<bool> used(m, false);
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == n) return true;
        for (std::size_t h = 0; h < m; ++h) {
            if (used[h]) continue;
            bool ok = true;
            for (const sumner::Arc& a : t.arcs()) {
                const auto tail = static_cast<std::size_t>(a.tail), head = static_cast<std::size_t>(a.head);
                if (tail == i && head < i && !g.arc(static_cast<Vertex>(h), map[head])) ok = false;
                if (head == i && tail < i && !g.arc(map[tail], static_cast<Vertex>(h))) ok = false;
            }
            if (!ok) continue;
            map[i] = static_cast<Vertex>(h);
            used[h] = true;
            if (go(i + 1)) return true;
            used[h] = false;
        }
        map[i] = -1;
        return false;
    };
    if (n > m) return std::nullopt;
    if (go(0)) return map;
    return std::nullopt;
}

inline bool embeds(const DirectedTree& t, const Tournament& g) { return find_embedding(t, g).has_value(); }

/// Lexicographically least upper-triangle bit string over all relabellings.
inline std::string canonical_key(const Tournament& g) {
    const std::size_t n = g.order();
    std::vector<Vertex> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::string best;
    do {
        std::string s;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s.push_back(g.arc(p[i], p[j]) ? '1' : '0');
        if (best.empty() || s < best) best = s;
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

/// Tree key: least sorted arc list over all relabellings.
inline std::string tree_key(const DirectedTree& t) {
    const std::size_t n = t.order();
    std::vector<Vertex> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::string best = "~";
    do {
        std::vector<std::pair<Vertex, Vertex>> arcs;
        for (const sumner::Arc& a : t.arcs()) arcs.emplace_back(p[static_cast<std::size_t>(a.tail)], p[static_cast<std::size_t>(a.head)]);
        std::sort(arcs.begin(), arcs.end());
        std::string s;
        for (const auto& [u, v] : arcs) s += std::to_string(u) + ">" + std::to_string(v) + ",";
        best = std::min(best, s);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

/// Sizes of the components of T − x.
inline std::vector<std::size_t> components_without(const DirectedTree& t, Vertex x) {
    const std::size_t n = t.order();
    std::vector<int> comp(n, -1);
    std::vector<std::size_t> sizes;
    for (std::size_t s = 0; s < n; ++s) {
        if (static_cast<Vertex>(s) == x || comp[s] >= 0) continue;
        std::vector<Vertex> stack{static_cast<Vertex>(s)};
        comp[s] = static_cast<int>(sizes.size());
        std::size_t size = 0;
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            ++size;
            for (const sumner::Arc& a : t.arcs()) {
                Vertex w = -1;
                if (a.tail == v) w = a.head;
                if (a.head == v) w = a.tail;
                if (w < 0 || w == x || comp[static_cast<std::size_t>(w)] >= 0) continue;
                comp[static_cast<std::size_t>(w)] = comp[s];
                stack.push_back(w);
            }
        }
        sizes.push_back(size);
    }
    return sizes;
}

/// Core by definition: every component of T − x has at most (1 − 1/Δ)n vertices.
inline std::vector<Vertex> core(const DirectedTree& t, int delta) {
    std::vector<Vertex> out;
    const auto n = static_cast<long>(t.order());
    for (std::size_t x = 0; x < t.order(); ++x) {
        bool keep = true;
        for (std::size_t s : components_without(t, static_cast<Vertex>(x)))
            if (delta * static_cast<long>(s) > (delta - 1) * n) keep = false;
        if (keep) out.push_back(static_cast<Vertex>(x));
    }
    return out;
}

/// Maximum number of forward arcs over all orders.
inline std::size_t max_forward_arcs(const Tournament& g) {
    const std::size_t n = g.order();
    std::vector<Vertex> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::size_t best = 0;
    do {
        std::size_t f = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) f += g.arc(p[i], p[j]);
        best = std::max(best, f);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

/// Robust expansion by definition, every subset checked.
inline bool is_expander(const Tournament& g, double mu, double nu) {
    const std::size_t n = g.order();
    const auto need = static_cast<std::size_t>(std::ceil(mu * static_cast<double>(n) - 1e-9));
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        const auto k = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (static_cast<double>(k) + 1e-9 < nu * static_cast<double>(n) || static_cast<double>(k) > (1 - nu) * static_cast<double>(n) + 1e-9)
            continue;
        std::size_t rn = 0;
        for (std::size_t v = 0; v < n; ++v) {
            std::size_t in = 0;
            for (std::size_t u = 0; u < n; ++u)
                if (((mask >> u) & 1U) && g.arc(static_cast<Vertex>(u), static_cast<Vertex>(v))) ++in;
            if (in >= need) ++rn;
        }
        if (rn < k + need) return false;
    }
    return true;
}

/// Closure of H: add the k-vertex prefix toward the root of every member of
/// H, and of every member with two or more children in the set, until stable.
inline std::set<Vertex> leading_paths(const DirectedTree& t, const std::set<Vertex>& h, int k) {
    const auto hang = t.hang(*t.root());
    const auto prefix = [&](Vertex v, std::set<Vertex>& into) {
        for (int i = 0; i < k && v >= 0; ++i) {
            into.insert(v);
            v = hang.parent[static_cast<std::size_t>(v)];
        }
    };
    std::set<Vertex> s;
    for (Vertex v : h) prefix(v, s);
    for (bool changed = true; changed;) {
        changed = false;
        const std::set<Vertex> before = s;
        for (Vertex v : before) {
            int children = 0;
            for (Vertex w : before)
                if (hang.parent[static_cast<std::size_t>(w)] == v) ++children;
            if (children >= 2) prefix(v, s);
        }
        changed = s != before;
    }
    return s;
}

} // namespace oracle
