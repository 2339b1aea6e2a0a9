#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sumner/generators.hpp"
#include "sumner/tournament.hpp"
#include "sumner/vertex_set.hpp"

namespace sumner {

// Fractional thresholds such as μn are taken as ⌈μ·n⌉, where n is the order
// of the tournament the predicate is evaluated on.

/// ⌈x·n⌉ with a small tolerance against representation error.
std::size_t ceil_fraction(double x, std::size_t n);

/// Vertices with at least ⌈μn⌉ in-neighbours in S.
VertexSet robust_out_neighbourhood(const Tournament& g, const VertexSet& s, double mu);

enum class ExpanderStatus { expander, not_expander, unknown };
enum class CheckMode { exact, sampled };

std::string to_string(ExpanderStatus s);
std::string to_string(CheckMode m);

inline constexpr std::size_t exact_expander_cap = 20;

struct ExpanderVerdict {
    ExpanderStatus status = ExpanderStatus::unknown;
    CheckMode mode = CheckMode::exact;
    double mu = 0, nu = 0;
    /// Set iff status == not_expander.
    std::optional<VertexSet> witness;
    /// Subsets evaluated.
    std::uint64_t checked = 0;
};

/// True iff νn ≤ |S| ≤ (1−ν)n and |RN⁺_μ(S)| < |S| + ⌈μn⌉.
bool is_expansion_witness(const Tournament& g, const VertexSet& s, double mu, double nu);

/// exact: every admissible S in increasing bitmask order (n ≤ 20); the first
/// witness is returned. sampled: structured candidates (degree-order
/// prefixes and suffixes, in/out-neighbourhoods) then `sample_budget` random
/// admissible sets; no witness gives Unknown.
ExpanderVerdict is_robust_outexpander(const Tournament& g, double mu, double nu, CheckMode mode,
                                      std::uint64_t sample_budget = 1000, Seed seed = 0);

using ExpanderChecker = std::function<ExpanderVerdict(const Tournament&)>;

/// Exact up to `exact_limit` vertices, sampled above.
ExpanderChecker default_expander_checker(double mu, double nu, std::size_t exact_limit = exact_expander_cap,
                                         std::uint64_t sample_budget = 1000, Seed seed = 0);

struct NonExpanderSplit {
    /// False means Unknown: no qualifying partition was found.
    bool found = false;
    VertexSet s, s_prime;
    /// e(G[S → S′]).
    std::size_t cross = 0;
    /// 4μn².
    double bound = 0;
};

/// Partition with νn < |S|, |S′| < (1−ν)n and e(S→S′) ≤ 4μn², found by cut
/// sweeps over several orders and single-vertex local search; the minimum
/// (then most balanced) qualifying cut is returned. Throws InvalidArgument
/// when G is certified to be an expander or the witness does not witness.
NonExpanderSplit non_expander_split(const Tournament& g, double mu, double nu,
                                    const std::optional<VertexSet>& witness = std::nullopt,
                                    std::uint64_t sample_budget = 1000, Seed seed = 0);

enum class PieceClass { expander, small, unknown };
std::string to_string(PieceClass c);

struct SplitParameters {
    double mu = 0.05, nu = 0.05, eta = 0.02, gamma = 0.2;
};

struct SplitResult {
    std::vector<VertexSet> pieces;
    std::vector<PieceClass> classes;
    /// Checker verdict for each piece of order ≥ γn.
    std::vector<std::optional<ExpanderVerdict>> verdicts;
    std::vector<std::pair<Vertex, Vertex>> bad_edges;
    VertexSet deleted;
    SplitParameters parameters;
    std::size_t iterations = 0;
    /// Some piece of order ≥ γn could be neither certified nor split.
    bool flagged = false;
};

/// Steps (1)–(5): peel low-outdegree and low-indegree vertices, split
/// non-expanders, record bad edges, delete vertices in more than √η·n bad
/// edges. ηn, √ηn and γn use the order of G; the checker sees G[S_ℓ].
SplitResult tournament_split(const Tournament& g, const SplitParameters& p, const ExpanderChecker& checker);

struct SplitAudit {
    /// |⋃ S_i| ≥ (1−γ)n.
    bool coverage = false;
    /// Every v ∈ S_i has ≤ γn in-neighbours later and ≤ γn out-neighbours earlier.
    bool ordering = false;
    /// Pieces of order ≥ γn carry an Expander verdict with δ⁰ ≥ ηn.
    bool classification = false;
    /// Every deleted vertex lies in more than √η·n bad edges.
    bool deletions = false;
    std::size_t covered = 0;
    std::size_t worst_back_degree = 0;
};

SplitAudit audit_split(const Tournament& g, const SplitResult& r);

struct ClusterDensities {
    std::size_t k = 0;
    std::size_t m = 0;
    /// d[i][j] = density of G[V_i → V_j]; diagonal unused (0).
    std::vector<std::vector<double>> d;
};

/// Pairwise densities of disjoint, equal-sized clusters.
ClusterDensities cluster_densities(const Tournament& g, const std::vector<VertexSet>& clusters);

struct Digraph {
    std::size_t k = 0;
    std::vector<std::vector<bool>> arc;
    bool has_arc(std::size_t i, std::size_t j) const { return arc[i][j]; }
    std::size_t arc_count() const;
    bool is_oriented() const;
};

/// i→j iff d_ij ≥ d. For d > 1/2 the result is asserted to be oriented.
Digraph reduced_digraph(const ClusterDensities& cd, double d);

struct RegularityCheck {
    /// Witness pair found; NoViolationFound otherwise (not a certificate).
    bool irregular = false;
    VertexSet u_prime, v_prime;
    double pair_density = 0;
    double sub_density = 0;
    std::uint64_t samples = 0;
};

/// Samples U′ ⊆ U, V′ ⊆ V with |U′| > ε|U|, |V′| > ε|V| (density-sorted
/// prefixes and suffixes, then random) looking for |d(U′,V′) − d(U,V)| > ε.
RegularityCheck regularity_falsifier(const Tournament& g, const VertexSet& u, const VertexSet& v, double eps,
                                     std::uint64_t sample_budget = 1000, Seed seed = 0);

} // namespace sumner
