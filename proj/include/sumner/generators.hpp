#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sumner/directed_tree.hpp"
#include "sumner/tournament.hpp"
#include "sumner/vertex_set.hpp"

namespace sumner {

using Seed = std::uint64_t;

// Deterministic families.

/// i→j iff i < j.
Tournament transitive_tournament(std::size_t n);

/// i→j iff (j − i) mod m ∈ [1, (m−1)/2]. Requires odd m.
Tournament rotational_regular_tournament(std::size_t m);

/// All arcs run from an earlier block to a later block; block k occupies the
/// next |block k| ids.
Tournament ordered_blocks(const std::vector<Tournament>& blocks);

/// Centre 0 with n−1 in-arcs.
DirectedTree inward_star(std::size_t n);
/// Centre 0 with n−1 out-arcs; rooted at the centre.
DirectedTree outward_star(std::size_t n);
/// 0→1→…→n−1, rooted at 0.
DirectedTree directed_path(std::size_t n);

enum class FillerMode { transitive, random };

struct NearExtremalPair {
    DirectedTree tree;
    Tournament tournament;
    std::size_t y = 0;
    /// Vertex classes of the host.
    VertexSet ys, zs, xs;
};

/// Tree: directed path on ℓ vertices (ids 0..ℓ−1), y = (n−ℓ)/2 out-leaves at
/// the terminal vertex and y in-leaves at the initial vertex. Host: regular Y
/// and Z on 2y−1 vertices each, X on ℓ−1 vertices (transitive, or seeded
/// random), arcs Z→X, X→Y and Z→Y.
NearExtremalPair near_extremal_pair(std::size_t n, std::size_t ell, FillerMode filler = FillerMode::transitive,
                                    Seed seed = 0);

// Seeded families. Each call draws from its own named stream.

/// One PRNG bit per pair in order (0,1),(0,2),…,(n−2,n−1); 1 means i→j.
Tournament random_tournament(std::size_t n, Seed seed);

/// Uniform labelled tree by Prüfer decoding, each edge oriented by one bit.
DirectedTree random_oriented_tree(std::size_t n, Seed seed);

/// Uniform labelled tree oriented away from vertex 0 (rooted at 0).
DirectedTree random_outbranching(std::size_t n, Seed seed);

/// Random tree where every arc points away from the root 0 and the root's
/// subtrees have at most `max_component` vertices each.
DirectedTree random_out_rooted_tree(std::size_t n, std::size_t max_component, Seed seed);

} // namespace sumner
