#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sumner/directed_tree.hpp"
#include "sumner/embedding.hpp"
#include "sumner/tournament.hpp"
#include "sumner/vertex_set.hpp"

namespace sumner {

inline constexpr std::uint64_t default_node_budget = 10'000'000;

/// Side conditions for an embedding search.
struct SearchConstraints {
    /// (tree vertex, host vertex) pairs that must hold.
    std::vector<std::pair<Vertex, Vertex>> pinned;
    /// Host vertices usable by every tree vertex; unset means all.
    std::optional<VertexSet> domain;
    /// Optional per-tree-vertex candidate sets (indexed by tree vertex).
    std::vector<std::optional<VertexSet>> allowed;
    /// Host vertices that may not be used (occupied elsewhere).
    std::optional<VertexSet> forbidden;
    /// Search-node cap; unset means default_node_budget.
    std::optional<std::uint64_t> node_budget;
};

enum class Verdict { found, not_found, budget_exhausted, unknown };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct EmbedOutcome {
    Verdict verdict = Verdict::unknown;
    /// Total when verdict == found.
    std::optional<Embedding> embedding;
    std::uint64_t nodes = 0;
    /// Name of the procedure that produced the verdict.
    std::string strategy;
    /// Set by embed_outbranching when the exhaustive fallback decided.
    bool used_fallback = false;

    bool found() const noexcept { return verdict == Verdict::found; }
};

/// True iff `phi` is a valid total embedding that honours every constraint.
bool satisfies_constraints(const DirectedTree& t, const Tournament& g, const SearchConstraints& c, const Embedding& phi);

/// Complete backtracking search. NotFound is a non-existence certificate for
/// embeddings honouring `c`. Throws InfeasiblePinning when two pinned tree
/// vertices contradict the host's arcs.
EmbedOutcome exhaustive_embed(const DirectedTree& t, const Tournament& g, const SearchConstraints& c = {});

/// Single greedy pass, no backtracking. Reports Found or BudgetExhausted only.
EmbedOutcome greedy_embed(const DirectedTree& t, const Tournament& g, const SearchConstraints& c = {});

/// Greedy first, then exhaustive search under the same constraints.
EmbedOutcome greedy_then_exhaustive(const DirectedTree& t, const Tournament& g, const SearchConstraints& c = {});

/// Hamiltonian directed path by insertion: vertex k goes in front of the
/// first path vertex it beats, else at the end.
std::vector<Vertex> redei_path(const Tournament& g);

/// Embedding of directed_path(|G|) along redei_path(g).
Embedding redei_path_embedding(const Tournament& g);

enum class MedianMode { exact, local };

inline constexpr std::size_t exact_median_cap = 20;

struct MedianOrder {
    std::vector<Vertex> order;
    std::size_t forward_arcs = 0;
};

/// Number of arcs pointing from an earlier to a later vertex of `order`.
std::size_t forward_arc_count(const Tournament& g, const std::vector<Vertex>& order);

/// exact: subset dynamic programme (n ≤ 20), maximum forward arcs.
/// local: interval-move local search to a fixed point from five rotations of
/// the Rédei path; best result kept.
MedianOrder median_order(const Tournament& g, MedianMode mode);

/// Root of `t` if every root-to-vertex path is directed away from it.
std::optional<Vertex> outbranching_root(const DirectedTree& t);

struct OutbranchingOptions {
    /// Largest host on which the exhaustive fallback runs.
    std::size_t fallback_cap = 24;
    std::uint64_t node_budget = default_node_budget;
};

/// Median-order greedy: root at the first vertex of a median order, each
/// child at the earliest unused out-neighbour of its parent's image lying
/// later in the order. Unchecked greedy output never escapes: the result is
/// validated, and on failure the exhaustive fallback decides when |G| is
/// within the cap.
EmbedOutcome embed_outbranching(const DirectedTree& t, const Tournament& g, const OutbranchingOptions& options = {});

} // namespace sumner
