#pragma once

#include <cstddef>
#include <vector>

#include "sumner/directed_tree.hpp"
#include "sumner/graph_ops.hpp"
#include "sumner/vertex_set.hpp"

namespace sumner {

/// Edge weights w_e(x), inweights and outweights of every vertex, from one
/// pass of subtree counting.
class WeightProfile {
public:
    explicit WeightProfile(const DirectedTree& t);

    /// Number of vertices reached from x through the edge {x, y}.
    std::size_t edge_weight(Vertex x, Vertex y) const;
    std::size_t inweight(Vertex x) const { return inweight_.at(static_cast<std::size_t>(x)); }
    std::size_t outweight(Vertex x) const { return outweight_.at(static_cast<std::size_t>(x)); }

private:
    std::size_t order_;
    std::vector<Vertex> parent_;
    std::vector<std::size_t> subtree_;
    std::vector<std::size_t> inweight_, outweight_;
};

std::size_t edge_weight(const DirectedTree& t, Vertex x, Vertex y);

/// A component of T − C together with its unique connecting arc.
struct AttachedComponent {
    VertexSet vertices;
    /// `in` when the connecting arc points into C.
    Direction side;
    Vertex attachment; ///< endpoint in C
    Vertex entry;      ///< endpoint in the component
    std::size_t size() const { return vertices.count(); }
};

struct ComponentSplit {
    /// Ordered by smallest member id.
    std::vector<AttachedComponent> components;
    std::size_t inweight = 0;
    std::size_t outweight = 0;

    std::size_t max_component_size() const;
};

/// Components of T − C classified as in/out components of C.
ComponentSplit components_against(const DirectedTree& t, const VertexSet& c);

struct CoreTree {
    int delta = 2;
    VertexSet vertices;
    std::vector<Arc> arcs;
    std::size_t size() const { return vertices.count(); }
};

/// Δ-core: x is kept iff Δ·w_e(x) ≤ (Δ−1)·n for every incident e.
CoreTree core_tree(const DirectedTree& t, int delta);

/// Closure of H under k-vertex root-ward prefixes, re-applied at every vertex
/// having two or more children inside the current set. Requires a root.
VertexSet leading_paths(const DirectedTree& t, const VertexSet& h, int k);

} // namespace sumner
