#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sumner/directed_tree.hpp"
#include "sumner/embedding.hpp"
#include "sumner/tournament.hpp"
#include "sumner/vertex_set.hpp"

namespace sumner {

enum class Direction { in, out };

struct Degrees {
    std::size_t out;
    std::size_t in;
    friend bool operator==(const Degrees&, const Degrees&) = default;
};

Degrees degrees(const Tournament& g, Vertex v);

/// N⁺(v) ∩ S or N⁻(v) ∩ S.
VertexSet restricted_neighbourhood(const Tournament& g, Vertex v, const VertexSet& s, Direction direction);

struct InducedSubtournament {
    Tournament tournament;
    /// Host id of each vertex of `tournament`, ascending.
    std::vector<Vertex> to_host;
};

InducedSubtournament induced_subtournament(const Tournament& g, const VertexSet& s);

Tournament reverse(const Tournament& g);
DirectedTree reverse(const DirectedTree& t);

/// Injective and arc-preserving. Throws PartialEmbedding if φ is not total.
bool is_valid_embedding(const DirectedTree& t, const Tournament& g, const Embedding& phi);

/// Same checks on the mapped part only.
bool is_valid_partial_embedding(const DirectedTree& t, const Tournament& g, const Embedding& phi);

/// e(G[U → V]).
std::size_t directed_edge_count(const Tournament& g, const VertexSet& u, const VertexSet& v);

/// Exact ratio e(G[U→V]) / (|U||V|).
struct Density {
    std::int64_t arcs = 0;
    std::int64_t pairs = 1;
    double value() const noexcept { return static_cast<double>(arcs) / static_cast<double>(pairs); }
};

Density density(const Tournament& g, const VertexSet& u, const VertexSet& v);

inline constexpr std::size_t default_canonical_limit = 10;

/// Permutation-minimal adjacency encoding; equal iff isomorphic.
std::string canonical_form(const Tournament& g, std::size_t limit = default_canonical_limit);

/// Relabelling: result has arc perm[u]→perm[v] iff g has u→v.
Tournament relabel(const Tournament& g, const std::vector<Vertex>& perm);
DirectedTree relabel(const DirectedTree& t, const std::vector<Vertex>& perm);

/// Canonical string of an oriented tree (root ignored); equal iff isomorphic.
std::string canonical_form(const DirectedTree& t);

} // namespace sumner
