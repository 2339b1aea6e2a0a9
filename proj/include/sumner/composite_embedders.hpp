#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "sumner/base_embedders.hpp"
#include "sumner/directed_tree.hpp"
#include "sumner/embedding.hpp"
#include "sumner/generators.hpp"
#include "sumner/tournament.hpp"
#include "sumner/vertex_set.hpp"

namespace sumner {

// Lemma procedures validate their hypotheses first and throw
// HypothesisViolation naming the failed condition. Inner embeddings go
// through greedy_then_exhaustive; an inner failure throws
// InnerEmbeddingFailure. Every returned embedding has been re-validated.

/// Embeds `sub` inside `domain` of `g`, returning the map into g's ids.
/// Throws InnerEmbeddingFailure when no embedding is found.
Embedding embed_inside(const DirectedTree& sub, const Tournament& g, const VertexSet& domain,
                       std::uint64_t node_budget = default_node_budget);

struct RoundTheBackInstance {
    /// Rooted at t; t must have no in-arcs.
    DirectedTree tree;
    /// Bound on the order of every component of T − t.
    std::size_t d = 0;
    Tournament host;
    Vertex v = 0;
    /// {v}, N, X partition V(host).
    VertexSet n_set, x_set;
};

struct RoundTheBackResult {
    Embedding embedding;
    std::size_t x_occupied = 0;
};

/// Throws HypothesisViolation on the first failing hypothesis.
void validate(const RoundTheBackInstance& inst);

/// t ↦ v, components of T − t in decreasing order of size, at most 4d
/// vertices of X occupied (verified).
RoundTheBackResult round_the_back(const RoundTheBackInstance& inst);

enum class OneByOneVariant { a, b, c };

struct OneByOneInstance {
    DirectedTree tree;
    /// Vertices of the subtree T_c (tree universe).
    VertexSet core;
    /// Embedding of T_c into S; exactly the core vertices are mapped.
    Embedding partial;
    Tournament host;
    /// Disjoint host sets; S ∪ N need not cover the host.
    VertexSet s_set, n_set;
    /// Bound on the order of every component of T − T_c.
    std::size_t d = 0;
    OneByOneVariant variant = OneByOneVariant::a;
    /// N′ ⊆ N and r for variant b; optional for variant c.
    std::optional<VertexSet> n_prime;
    std::size_t r = 0;
};

struct OneByOneResult {
    Embedding embedding;
    /// Vertices of T − T_c embedded in N′ (N when N′ is not given).
    std::size_t landed_in_n_prime = 0;
};

void validate(const OneByOneInstance& inst);

/// Extends the T_c embedding component by component inside N; variant b also
/// lands at least r vertices in N′ (verified).
OneByOneResult extend_one_by_one(const OneByOneInstance& inst);

struct TwoSetInstance {
    DirectedTree tree;
    /// V(F⁻), V(F⁺): partition V(T); every arc between them goes F⁻→F⁺.
    VertexSet f_minus, f_plus;
    Tournament host;
    /// Disjoint host sets.
    VertexSet y_set, z_set;
    double gamma = 0.0;
    double alpha = 0.0;
    /// Embedding of a largest F⁺ component into G[Y] (primal) or of a largest
    /// F⁻ component into G[Z] (dual); nothing else mapped.
    Embedding seed;
};

void validate(const TwoSetInstance& inst);
void validate_dual(const TwoSetInstance& inst);

/// F⁺ components into out-neighbourhoods within Y, F⁻ components into
/// in-neighbourhoods within Z, each joined to the already embedded part.
Embedding component_by_component(const TwoSetInstance& inst);

/// Reverses T and G, swaps the roles of the sets, runs the primal and returns
/// the same map.
Embedding dual_component_by_component(const TwoSetInstance& inst);

/// Instance with every arc reversed and F⁻/F⁺, Y/Z swapped.
TwoSetInstance reverse(const TwoSetInstance& inst);

/// d⁺(v), d⁻(v) ≥ (1−γ)(n−1)/2 for every v.
bool is_almost_regular(const Tournament& g, double gamma);

enum class DegreeCase { i, ii, iii, iv };

DegreeCase degree_case_from_string(const std::string& s);
std::string to_string(DegreeCase c);

/// Hypothesis of the chosen case holds for every vertex.
bool degree_case_holds(const Tournament& g, double alpha, DegreeCase c);

/// Deletes every vertex with d⁺ > (1+√α)(n−1)/2 (case i; the other cases
/// reduce to it through reversal). Returns the kept set after checking it
/// has ≥ (1−γ)n vertices and induces a γ-almost-regular tournament;
/// otherwise VerificationFailure.
VertexSet almost_regular_subtournament(const Tournament& g, double alpha, DegreeCase c, double gamma);

struct StarShapedOptions {
    /// Lower bound, as a fraction of |T|, on the outweight for the
    /// round-the-back branch.
    double alpha = 0.1;
    std::uint64_t node_budget = default_node_budget;
};

/// |core(T, Δ)| = 1 and |G| ≥ 2|T| − 2. Found or BudgetExhausted.
EmbedOutcome embed_star_shaped(const DirectedTree& t, const Tournament& g, int delta,
                               const StarShapedOptions& options = {});

struct PortfolioConfig {
    int delta = 2;
    std::uint64_t node_budget = default_node_budget;
    /// Largest host on which the exhaustive stage runs.
    std::size_t exhaustive_cap = 64;
    bool use_greedy = true;
    bool use_outbranching = true;
    bool use_star_shaped = true;
    bool use_two_set = true;
    bool use_exhaustive = true;
};

/// greedy, outbranching, star-shaped, two-set, exhaustive; first verified
/// Found wins. NotFound comes only from the exhaustive stage.
EmbedOutcome portfolio_embed(const DirectedTree& t, const Tournament& g, const PortfolioConfig& config = {});

/// Two-set attempt on its own: core arc split, median-order Y/Z cut.
EmbedOutcome embed_two_set(const DirectedTree& t, const Tournament& g, int delta,
                           std::uint64_t node_budget = default_node_budget);

// Generator-built instances satisfying the lemma hypotheses.

RoundTheBackInstance random_round_the_back_instance(std::size_t tree_order, std::size_t d, Seed seed);
OneByOneInstance random_one_by_one_instance(std::size_t tree_order, OneByOneVariant variant, Seed seed);
TwoSetInstance random_two_set_instance(std::size_t tree_order, Seed seed);

} // namespace sumner
