#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sumner/directed_tree.hpp"
#include "sumner/tournament.hpp"

namespace sumner {

inline constexpr std::size_t labelled_enumeration_cap = 10;
inline constexpr std::size_t iso_tournament_cap = 8;
inline constexpr std::size_t iso_tree_cap = 10;

/// 2^{n(n−1)/2}.
std::uint64_t labelled_tournament_count(std::size_t n);

/// Bit k of `index` orients the k-th pair in order (0,1),(0,2),…; 1 means i→j.
/// Disjoint index ranges give disjoint slices of the labelled stream.
Tournament tournament_from_index(std::size_t n, std::uint64_t index);

/// Streams labelled tournaments with indices in [first, last).
void for_each_labelled_tournament(std::size_t n, std::uint64_t first, std::uint64_t last,
                                  const std::function<void(std::uint64_t, const Tournament&)>& visit);

/// Rebuilds the canonical labelling encoded by canonical_form().
Tournament tournament_from_canonical_key(const std::string& key);

/// One canonically labelled representative per isomorphism class, sorted by
/// canonical key. Built by one-vertex extension of the classes on n−1.
std::vector<Tournament> tournament_classes(std::size_t n);

/// One representative per isomorphism class of oriented trees on n vertices,
/// sorted by canonical form. Built by leaf extension.
std::vector<DirectedTree> oriented_tree_classes(std::size_t n);

} // namespace sumner
