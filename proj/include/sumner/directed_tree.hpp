#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sumner/vertex_set.hpp"

namespace sumner {

struct Arc {
    Vertex tail;
    Vertex head;

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Oriented tree on [0, n) with an optional root. Construction validates that
/// the underlying graph is a tree.
class DirectedTree {
public:
    struct Neighbour {
        Vertex vertex;
        /// True when the arc points from the owning vertex to `vertex`.
        bool outgoing;
    };

    DirectedTree() = default;
    DirectedTree(std::size_t n, std::vector<Arc> arcs, std::optional<Vertex> root = std::nullopt);

    std::size_t order() const noexcept { return adjacency_.size(); }
    const std::vector<Arc>& arcs() const noexcept { return arcs_; }
    std::optional<Vertex> root() const noexcept { return root_; }
    DirectedTree with_root(Vertex r) const;

    const std::vector<Neighbour>& neighbours(Vertex v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
    std::size_t degree(Vertex v) const { return neighbours(v).size(); }
    std::size_t out_degree(Vertex v) const;
    std::size_t in_degree(Vertex v) const;

    bool has_arc(Vertex u, Vertex v) const;
    bool adjacent(Vertex u, Vertex v) const { return has_arc(u, v) || has_arc(v, u); }

    std::vector<Vertex> leaves() const;

    /// Parent of each vertex when hung from `root` (-1 at the root), and the
    /// BFS order used to compute it.
    struct Hanging {
        std::vector<Vertex> parent;
        std::vector<Vertex> order;
    };
    Hanging hang(Vertex root) const;

    friend bool operator==(const DirectedTree& a, const DirectedTree& b) {
        return a.order() == b.order() && a.arcs_ == b.arcs_ && a.root_ == b.root_;
    }

private:
    std::vector<Arc> arcs_;
    std::vector<std::vector<Neighbour>> adjacency_;
    std::optional<Vertex> root_;
};

/// Subtree of `t` induced by `keep` (must be connected), relabelled to
/// [0, |keep|) in ascending id order. `to_parent[i]` is the original id.
struct InducedSubtree {
    DirectedTree tree;
    std::vector<Vertex> to_parent;
};
InducedSubtree induced_subtree(const DirectedTree& t, const VertexSet& keep);

/// The tree with vertex `leaf` removed and ids above it shifted down by one.
DirectedTree delete_leaf(const DirectedTree& t, Vertex leaf);

} // namespace sumner
