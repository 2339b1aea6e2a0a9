#include "sumner/generators.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

#include "sumner/error.hpp"
#include "sumner/rng.hpp"

namespace sumner {

Tournament transitive_tournament(std::size_t n) {
    return Tournament::from_predicate(n, [](Vertex, Vertex) { return true; });
}

Tournament rotational_regular_tournament(std::size_t m) {
    if (m % 2 == 0) throw InvalidArgument("rotational regular tournament needs odd order, got " + std::to_string(m));
    const auto half = static_cast<Vertex>((m - 1) / 2);
    const auto mm = static_cast<Vertex>(m);
    return Tournament::from_predicate(m, [=](Vertex i, Vertex j) {
        const Vertex diff = ((j - i) % mm + mm) % mm;
        return diff >= 1 && diff <= half;
    });
}

Tournament ordered_blocks(const std::vector<Tournament>& blocks) {
    std::vector<std::size_t> block_of;
    std::vector<Vertex> local;
    std::size_t total = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (std::size_t i = 0; i < blocks[b].order(); ++i) {
            block_of.push_back(b);
            local.push_back(static_cast<Vertex>(i));
        }
        total += blocks[b].order();
    }
    return Tournament::from_predicate(total, [&](Vertex u, Vertex v) {
        const std::size_t bu = block_of[static_cast<std::size_t>(u)], bv = block_of[static_cast<std::size_t>(v)];
        if (bu != bv) return bu < bv;
        return blocks[bu].arc(local[static_cast<std::size_t>(u)], local[static_cast<std::size_t>(v)]);
    });
}

DirectedTree inward_star(std::size_t n) {
    if (n < 2) throw InvalidArgument("inward star needs at least 2 vertices");
    std::vector<Arc> arcs;
    for (std::size_t i = 1; i < n; ++i) arcs.push_back({static_cast<Vertex>(i), 0});
    return DirectedTree(n, std::move(arcs));
}

DirectedTree outward_star(std::size_t n) {
    if (n < 2) throw InvalidArgument("outward star needs at least 2 vertices");
    std::vector<Arc> arcs;
    for (std::size_t i = 1; i < n; ++i) arcs.push_back({0, static_cast<Vertex>(i)});
    return DirectedTree(n, std::move(arcs), 0);
}

DirectedTree directed_path(std::size_t n) {
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i + 1 < n; ++i) arcs.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
    return DirectedTree(n, std::move(arcs), 0);
}

namespace {

/// Edges of the labelled tree encoded by `code`, in decoding order.
std::vector<std::pair<Vertex, Vertex>> prufer_decode(const std::vector<Vertex>& code, std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    if (n == 1) return edges;
    if (n == 2) return {{0, 1}};
    std::vector<int> degree(n, 1);
    for (Vertex v : code) ++degree[static_cast<std::size_t>(v)];
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
    for (std::size_t v = 0; v < n; ++v)
        if (degree[v] == 1) leaves.push(static_cast<Vertex>(v));
    for (Vertex v : code) {
        const Vertex leaf = leaves.top();
        leaves.pop();
        edges.emplace_back(leaf, v);
        if (--degree[static_cast<std::size_t>(v)] == 1) leaves.push(v);
    }
    const Vertex a = leaves.top();
    leaves.pop();
    const Vertex b = leaves.top();
    edges.emplace_back(a, b);
    return edges;
}

std::vector<std::pair<Vertex, Vertex>> random_labelled_tree(std::size_t n, Rng& rng) {
    std::vector<Vertex> code;
    if (n > 2)
        for (std::size_t i = 0; i + 2 < n; ++i) code.push_back(static_cast<Vertex>(rng.below(n)));
    return prufer_decode(code, n);
}

} // namespace

NearExtremalPair near_extremal_pair(std::size_t n, std::size_t ell, FillerMode filler, Seed seed) {
    if (ell < 1) throw InvalidArgument("near-extremal pair needs path length >= 1");
    if (n <= ell || (n - ell) % 2 != 0)
        throw InvalidArgument("near-extremal pair needs n - l even and positive (n=" + std::to_string(n) +
                              ", l=" + std::to_string(ell) + ")");
    const std::size_t y = (n - ell) / 2;

    std::vector<Arc> arcs;
    for (std::size_t i = 0; i + 1 < ell; ++i) arcs.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
    const auto terminal = static_cast<Vertex>(ell - 1);
    for (std::size_t i = 0; i < y; ++i) arcs.push_back({terminal, static_cast<Vertex>(ell + i)});
    for (std::size_t i = 0; i < y; ++i) arcs.push_back({static_cast<Vertex>(ell + y + i), 0});
    DirectedTree tree(n, std::move(arcs));

    // Host ids: Y first, then Z, then X.
    const std::size_t side = 2 * y - 1;
    const Tournament regular = rotational_regular_tournament(side);
    const Tournament filler_t = ell - 1 == 0 ? Tournament{}
                                : filler == FillerMode::transitive ? transitive_tournament(ell - 1)
                                                                   : random_tournament(ell - 1, seed);
    const std::size_t total = 2 * side + (ell - 1);
    enum Cls { Y, Z, X };
    const auto cls = [&](Vertex v) {
        const auto u = static_cast<std::size_t>(v);
        return u < side ? Y : u < 2 * side ? Z : X;
    };
    const auto local = [&](Vertex v) {
        const auto u = static_cast<std::size_t>(v);
        return static_cast<Vertex>(u < side ? u : u < 2 * side ? u - side : u - 2 * side);
    };
    Tournament host = Tournament::from_predicate(total, [&](Vertex u, Vertex v) {
        const Cls cu = cls(u), cv = cls(v);
        if (cu == cv) return cu == X ? filler_t.arc(local(u), local(v)) : regular.arc(local(u), local(v));
        if (cu == Z) return true;
        if (cv == Z) return false;
        return cu == X; // X→Y
    });
    NearExtremalPair out{std::move(tree), std::move(host), y, VertexSet(total), VertexSet(total), VertexSet(total)};
    for (std::size_t v = 0; v < total; ++v) {
        switch (cls(static_cast<Vertex>(v))) {
            case Y: out.ys.insert(static_cast<Vertex>(v)); break;
            case Z: out.zs.insert(static_cast<Vertex>(v)); break;
            case X: out.xs.insert(static_cast<Vertex>(v)); break;
        }
    }
    return out;
}

Tournament random_tournament(std::size_t n, Seed seed) {
    Rng rng(seed, "random_tournament");
    return Tournament::from_predicate(n, [&](Vertex, Vertex) { return rng.bit(); });
}

DirectedTree random_oriented_tree(std::size_t n, Seed seed) {
    if (n == 0) throw InvalidArgument("tree needs at least one vertex");
    Rng rng(seed, "random_oriented_tree");
    std::vector<Arc> arcs;
    for (const auto& [u, v] : random_labelled_tree(n, rng))
        arcs.push_back(rng.bit() ? Arc{u, v} : Arc{v, u});
    return DirectedTree(n, std::move(arcs));
}

DirectedTree random_outbranching(std::size_t n, Seed seed) {
    if (n == 0) throw InvalidArgument("tree needs at least one vertex");
    Rng rng(seed, "random_outbranching");
    std::vector<Arc> undirected;
    for (const auto& [u, v] : random_labelled_tree(n, rng)) undirected.push_back({u, v});
    const DirectedTree shape(n, undirected);
    const auto h = shape.hang(0);
    std::vector<Arc> arcs;
    for (std::size_t v = 1; v < n; ++v) arcs.push_back({h.parent[v], static_cast<Vertex>(v)});
    return DirectedTree(n, std::move(arcs), 0);
}

DirectedTree random_out_rooted_tree(std::size_t n, std::size_t max_component, Seed seed) {
    if (n == 0) throw InvalidArgument("tree needs at least one vertex");
    if (n > 1 && max_component == 0) throw InvalidArgument("components must be allowed at least one vertex");
    Rng rng(seed, "random_out_rooted_tree");
    std::vector<Arc> arcs;
    std::size_t next = 1;
    while (next < n) {
        const std::size_t size = 1 + rng.below(std::min(max_component, n - next));
        const auto base = static_cast<Vertex>(next);
        for (const auto& [u, v] : random_labelled_tree(size, rng))
            arcs.push_back(rng.bit() ? Arc{base + u, base + v} : Arc{base + v, base + u});
        arcs.push_back({0, base + static_cast<Vertex>(rng.below(size))});
        next += size;
    }
    return DirectedTree(n, std::move(arcs), 0);
}

} // namespace sumner
