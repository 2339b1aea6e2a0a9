#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sumner/error.hpp"
#include "sumner/expander.hpp"
#include "sumner/generators.hpp"
#include "sumner/graph_ops.hpp"
#include "sumner/rng.hpp"

using namespace sumner;

namespace {

VertexSet range_set(std::size_t universe, Vertex begin, Vertex end) {
    VertexSet s(universe);
    for (Vertex v = begin; v < end; ++v) s.insert(v);
    return s;
}

/// Block B on ids 0..10, block A on 11..21, every arc between them B→A.
Tournament two_blocks() {
    return ordered_blocks({rotational_regular_tournament(11), rotational_regular_tournament(11)});
}

/// U = 0..19, V = 20..39. Arcs U→V only between U₁ = 0..9 and V₁ = 20..29.
Tournament half_block_pair() {
    return Tournament::from_predicate(40, [](Vertex u, Vertex v) {
        if (v < 20) return (u + v) % 2 == 0;
        if (u >= 20) return (u + v) % 2 == 1;
        return u < 10 && v < 30;
    });
}

} // namespace

TEST(CeilFraction, ToleratesRepresentationError) {
    EXPECT_EQ(ceil_fraction(0.1, 10), 1u);
    EXPECT_EQ(ceil_fraction(1.0 / 15.0, 15), 1u);
    EXPECT_EQ(ceil_fraction(0.3, 10), 3u);
    EXPECT_EQ(ceil_fraction(0.31, 10), 4u);
    EXPECT_EQ(ceil_fraction(0.05, 60), 3u);
}

TEST(RobustNeighbourhood, Examples) {
    EXPECT_EQ(robust_out_neighbourhood(rotational_regular_tournament(3), VertexSet(3, {0}), 1.0 / 3).to_vector(),
              std::vector<Vertex>{1});
    const Tournament g = random_tournament(12, 4);
    VertexSet positive(12);
    for (Vertex v = 0; v < 12; ++v)
        if (g.indegree(v) > 0) positive.insert(v);
    EXPECT_EQ(robust_out_neighbourhood(g, g.all_vertices(), 0.05), positive);
    EXPECT_TRUE(robust_out_neighbourhood(transitive_tournament(10), VertexSet(10, {9}), 0.1).empty());
    EXPECT_THROW((void)robust_out_neighbourhood(g, g.all_vertices(), 0.0), InvalidArgument);
    EXPECT_THROW((void)robust_out_neighbourhood(g, g.all_vertices(), 1.5), InvalidArgument);
}

TEST(ExpanderCheck, TransitiveIsNotExpander) {
    const Tournament t10 = transitive_tournament(10);
    EXPECT_TRUE(is_expansion_witness(t10, VertexSet(10, {9}), 0.1, 0.1));
    const ExpanderVerdict v = is_robust_outexpander(t10, 0.1, 0.1, CheckMode::exact);
    ASSERT_EQ(v.status, ExpanderStatus::not_expander);
    ASSERT_TRUE(v.witness.has_value());
    // First witness in increasing mask order.
    EXPECT_EQ(v.witness->to_vector(), std::vector<Vertex>{8});
    EXPECT_TRUE(is_expansion_witness(t10, *v.witness, 0.1, 0.1));
}

TEST(ExpanderCheck, RotationalFifteenIsExpander) {
    const ExpanderVerdict v = is_robust_outexpander(rotational_regular_tournament(15), 1.0 / 15, 0.2, CheckMode::exact);
    EXPECT_EQ(v.status, ExpanderStatus::expander);
    EXPECT_FALSE(v.witness.has_value());
    EXPECT_GT(v.checked, 0u);
}

TEST(ExpanderCheck, RotationalAgreesWithOracle) {
    for (std::size_t m : {11, 13}) {
        const Tournament g = rotational_regular_tournament(m);
        const double mu = 1.0 / static_cast<double>(m);
        EXPECT_TRUE(oracle::is_expander(g, mu, 0.2));
        EXPECT_EQ(is_robust_outexpander(g, mu, 0.2, CheckMode::exact).status, ExpanderStatus::expander);
    }
}

TEST(ExpanderCheck, ExactAgreesWithOracleOnRandomTournaments) {
    Rng rng(13, "expander_oracle_test");
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 3 + rng.below(9);
        const double mu = 0.05 + 0.3 * rng.unit(), nu = 0.05 + 0.3 * rng.unit();
        const Tournament g = random_tournament(n, rng.next());
        const ExpanderVerdict v = is_robust_outexpander(g, mu, nu, CheckMode::exact);
        ASSERT_NE(v.status, ExpanderStatus::unknown);
        ASSERT_EQ(v.status == ExpanderStatus::expander, oracle::is_expander(g, mu, nu)) << n << " " << mu << " " << nu;
        if (v.witness) ASSERT_TRUE(is_expansion_witness(g, *v.witness, mu, nu));
    }
}

TEST(ExpanderCheck, SampledFindsTransitiveWitness) {
    const Tournament g = transitive_tournament(200);
    const ExpanderVerdict v = is_robust_outexpander(g, 0.1, 0.1, CheckMode::sampled, 1000, 1);
    ASSERT_EQ(v.status, ExpanderStatus::not_expander);
    EXPECT_EQ(v.mode, CheckMode::sampled);
    EXPECT_TRUE(is_expansion_witness(g, *v.witness, 0.1, 0.1));
    EXPECT_LE(v.checked, 1000u);
}

TEST(ExpanderCheck, SampledIsSound) {
    for (Seed s = 0; s < 100; ++s) {
        const Tournament g = random_tournament(14, s);
        const ExpanderVerdict sampled = is_robust_outexpander(g, 0.1, 0.2, CheckMode::sampled, 200, s);
        const ExpanderVerdict exact = is_robust_outexpander(g, 0.1, 0.2, CheckMode::exact);
        ASSERT_NE(sampled.status, ExpanderStatus::expander);
        if (sampled.status == ExpanderStatus::not_expander) {
            ASSERT_EQ(exact.status, ExpanderStatus::not_expander);
            ASSERT_TRUE(is_expansion_witness(g, *sampled.witness, 0.1, 0.2));
        }
    }
}

TEST(ExpanderCheck, ExactCap) {
    EXPECT_THROW((void)is_robust_outexpander(random_tournament(21, 0), 0.1, 0.1, CheckMode::exact), CapExceeded);
}

TEST(NonExpanderSplit, TransitiveTwenty) {
    const NonExpanderSplit s = non_expander_split(transitive_tournament(20), 0.05, 0.2);
    ASSERT_TRUE(s.found);
    EXPECT_EQ(s.cross, 0u);
    EXPECT_DOUBLE_EQ(s.bound, 4 * 0.05 * 400);
    EXPECT_EQ(s.s, range_set(20, 10, 20));
    EXPECT_EQ(s.s_prime, range_set(20, 0, 10));
    EXPECT_EQ(directed_edge_count(transitive_tournament(20), s.s, s.s_prime), 0u);
}

TEST(NonExpanderSplit, TwoBlocks) {
    const Tournament g = two_blocks();
    const NonExpanderSplit s = non_expander_split(g, 0.04, 0.3);
    ASSERT_TRUE(s.found);
    EXPECT_EQ(s.s, range_set(22, 11, 22));
    EXPECT_EQ(s.s_prime, range_set(22, 0, 11));
    EXPECT_EQ(s.cross, 0u);
}

TEST(NonExpanderSplit, RefusesCertifiedExpanders) {
    bool refused = false;
    for (Seed s = 0; s < 200 && !refused; ++s) {
        const Tournament g = random_tournament(16, s);
        if (is_robust_outexpander(g, 0.05, 0.3, CheckMode::exact).status != ExpanderStatus::expander) continue;
        EXPECT_THROW((void)non_expander_split(g, 0.05, 0.3), InvalidArgument);
        refused = true;
    }
    EXPECT_TRUE(refused);
    EXPECT_THROW((void)non_expander_split(transitive_tournament(10), 0.1, 0.1, VertexSet(10, {0})), InvalidArgument);
}

TEST(NonExpanderSplit, OutputsSatisfyContract) {
    for (Seed s = 0; s < 60; ++s) {
        const Tournament g = ordered_blocks({random_tournament(8 + s % 7, s), random_tournament(9, s + 1)});
        const NonExpanderSplit r = non_expander_split(g, 0.05, 0.2);
        if (!r.found) continue;
        const double n = static_cast<double>(g.order());
        EXPECT_EQ((r.s | r.s_prime).count(), g.order());
        EXPECT_FALSE(r.s.intersects(r.s_prime));
        EXPECT_GT(static_cast<double>(r.s.count()), 0.2 * n);
        EXPECT_LT(static_cast<double>(r.s.count()), 0.8 * n);
        EXPECT_EQ(r.cross, directed_edge_count(g, r.s, r.s_prime));
        EXPECT_LE(static_cast<double>(r.cross), 4 * 0.05 * n * n);
    }
}

TEST(TournamentSplit, TransitiveTwelve) {
    const Tournament g = transitive_tournament(12);
    const SplitParameters p{0.05, 0.05, 0.05, 0.35};
    const SplitResult r = tournament_split(g, p, default_expander_checker(p.mu, p.nu));
    EXPECT_TRUE(r.deleted.empty());
    EXPECT_TRUE(r.bad_edges.empty());
    for (std::size_t i = 0; i < r.pieces.size(); ++i)
        EXPECT_TRUE(r.classes[i] == PieceClass::small || r.pieces[i].count() == 1);
    const SplitAudit a = audit_split(g, r);
    EXPECT_TRUE(a.coverage);
    EXPECT_TRUE(a.ordering);
    EXPECT_TRUE(a.deletions);
    EXPECT_EQ(a.covered, 12u);
}

TEST(TournamentSplit, RotationalFifteenIsOnePiece) {
    const Tournament g = rotational_regular_tournament(15);
    const SplitParameters p{1.0 / 15, 0.2, 0.05, 0.2};
    const SplitResult r = tournament_split(g, p, default_expander_checker(p.mu, p.nu));
    ASSERT_EQ(r.pieces.size(), 1u);
    EXPECT_EQ(r.pieces[0], g.all_vertices());
    EXPECT_EQ(r.classes[0], PieceClass::expander);
    EXPECT_FALSE(r.flagged);
    const SplitAudit a = audit_split(g, r);
    EXPECT_TRUE(a.coverage && a.ordering && a.classification && a.deletions);
}

TEST(TournamentSplit, TwoBlocksOrderedForward) {
    const Tournament g = two_blocks();
    const SplitParameters p{0.04, 0.3, 0.05, 0.2};
    const SplitResult r = tournament_split(g, p, default_expander_checker(p.mu, p.nu));
    ASSERT_EQ(r.pieces.size(), 2u);
    EXPECT_EQ(r.pieces[0], range_set(22, 0, 11));
    EXPECT_EQ(r.pieces[1], range_set(22, 11, 22));
    EXPECT_EQ(r.classes[0], PieceClass::expander);
    EXPECT_EQ(r.classes[1], PieceClass::expander);
    EXPECT_TRUE(r.bad_edges.empty());
    const SplitAudit a = audit_split(g, r);
    EXPECT_TRUE(a.coverage && a.ordering && a.classification && a.deletions);
    EXPECT_EQ(a.worst_back_degree, 0u);
}

TEST(TournamentSplit, OrderingAndDeletionsOnRandomTournaments) {
    const SplitParameters p{0.05, 0.05, 0.02, 0.2};
    std::size_t covered = 0;
    for (Seed s = 0; s < 150; ++s) {
        const Tournament g = random_tournament(1 + s % 40, s);
        const SplitResult r = tournament_split(g, p, default_expander_checker(p.mu, p.nu, 16, 200, s));
        const SplitAudit a = audit_split(g, r);
        ASSERT_TRUE(a.ordering) << "seed " << s;
        ASSERT_TRUE(a.deletions) << "seed " << s;
        covered += a.coverage;
        VertexSet seen(g.order());
        for (const VertexSet& piece : r.pieces) {
            ASSERT_FALSE(piece.empty());
            ASSERT_FALSE(piece.intersects(seen));
            seen |= piece;
        }
        ASSERT_EQ((seen | r.deleted).count(), g.order());
        for (const auto& [u, v] : r.bad_edges) ASSERT_TRUE(g.arc(u, v));
    }
    RecordProperty("coverage_holds", static_cast<int>(covered));
}

TEST(ClusterDensities, TwoBlocksReducedDigraph) {
    const ClusterDensities cd = cluster_densities(two_blocks(), {range_set(22, 0, 11), range_set(22, 11, 22)});
    EXPECT_EQ(cd.k, 2u);
    EXPECT_EQ(cd.m, 11u);
    EXPECT_DOUBLE_EQ(cd.d[0][1], 1.0);
    EXPECT_DOUBLE_EQ(cd.d[1][0], 0.0);
    const Digraph r = reduced_digraph(cd, 0.9);
    EXPECT_EQ(r.arc_count(), 1u);
    EXPECT_TRUE(r.has_arc(0, 1));
    EXPECT_TRUE(r.is_oriented());
    EXPECT_THROW((void)cluster_densities(two_blocks(), {range_set(22, 0, 11), range_set(22, 11, 21)}), InvalidArgument);
    EXPECT_THROW((void)cluster_densities(two_blocks(), {range_set(22, 0, 11), range_set(22, 10, 21)}), InvalidArgument);
}

TEST(ClusterDensities, PairsSumToOne) {
    const Tournament g = random_tournament(40, 2);
    std::vector<VertexSet> clusters;
    for (Vertex b = 0; b < 40; b += 8) clusters.push_back(range_set(40, b, b + 8));
    const ClusterDensities cd = cluster_densities(g, clusters);
    for (std::size_t i = 0; i < cd.k; ++i)
        for (std::size_t j = 0; j < cd.k; ++j)
            if (i != j) EXPECT_NEAR(cd.d[i][j] + cd.d[j][i], 1.0, 1e-12);
}

TEST(ReducedDigraph, Examples) {
    ClusterDensities top;
    top.k = 4;
    top.m = 1;
    top.d.assign(4, std::vector<double>(4, 0.0));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) top.d[i][j] = 1.0;
    const Digraph t = reduced_digraph(top, 0.9);
    EXPECT_EQ(t.arc_count(), 6u);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(t.has_arc(i, j), i < j);

    ClusterDensities half = top;
    for (auto& row : half.d)
        for (double& x : row) x = 0.5;
    EXPECT_EQ(reduced_digraph(half, 0.6).arc_count(), 0u);
    EXPECT_EQ(reduced_digraph(half, 0.5).arc_count(), 12u);
    EXPECT_FALSE(reduced_digraph(half, 0.5).is_oriented());

    ClusterDensities broken = half;
    broken.d[0][1] = broken.d[1][0] = 0.8;
    EXPECT_THROW((void)reduced_digraph(broken, 0.7), VerificationFailure);
}

TEST(Regularity, OneWayBipartiteHasNoViolation) {
    const Tournament g = transitive_tournament(40);
    const RegularityCheck r = regularity_falsifier(g, range_set(40, 0, 20), range_set(40, 20, 40), 0.2, 1000, 1);
    EXPECT_FALSE(r.irregular);
    EXPECT_DOUBLE_EQ(r.pair_density, 1.0);
}

TEST(Regularity, HalfBlockIsIrregular) {
    const Tournament g = half_block_pair();
    const VertexSet u = range_set(40, 0, 20), v = range_set(40, 20, 40);
    EXPECT_DOUBLE_EQ(density(g, u, v).value(), 0.25);
    const RegularityCheck r = regularity_falsifier(g, u, v, 0.2, 1000, 1);
    ASSERT_TRUE(r.irregular);
    EXPECT_DOUBLE_EQ(r.pair_density, 0.25);
    EXPECT_GT(std::abs(r.sub_density - r.pair_density), 0.2);
    EXPECT_GT(static_cast<double>(r.u_prime.count()), 0.2 * 20);
    EXPECT_GT(static_cast<double>(r.v_prime.count()), 0.2 * 20);
    EXPECT_TRUE(r.u_prime.is_subset_of(u));
    EXPECT_TRUE(r.v_prime.is_subset_of(v));
    EXPECT_DOUBLE_EQ(density(g, r.u_prime, r.v_prime).value(), r.sub_density);
}

TEST(Regularity, RandomPairExpectedRegular) {
    const Tournament g = random_tournament(100, 17);
    const RegularityCheck r = regularity_falsifier(g, range_set(100, 0, 50), range_set(100, 50, 100), 0.3, 10000, 2);
    EXPECT_FALSE(r.irregular);
}

TEST(Regularity, Preconditions) {
    const Tournament g = random_tournament(20, 1);
    EXPECT_THROW((void)regularity_falsifier(g, range_set(20, 0, 3), range_set(20, 10, 20), 0.2), InvalidArgument);
    EXPECT_THROW((void)regularity_falsifier(g, range_set(20, 0, 10), range_set(20, 5, 15), 0.2), InvalidArgument);
}
