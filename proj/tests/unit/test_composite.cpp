#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sumner/composite_embedders.hpp"
#include "sumner/enumeration.hpp"
#include "sumner/error.hpp"
#include "sumner/generators.hpp"
#include "sumner/graph_ops.hpp"
#include "sumner/rng.hpp"
#include "sumner/tree_analysis.hpp"

using namespace sumner;

namespace {

template <typename F>
std::string violated(F&& f) {
    try {
        f();
    } catch (const HypothesisViolation& e) {
        return e.hypothesis();
    }
    return "";
}

VertexSet range_set(std::size_t universe, Vertex begin, Vertex end) {
    VertexSet s(universe);
    for (Vertex v = begin; v < end; ++v) s.insert(v);
    return s;
}

/// v = 0, N = 1..6, X = 7..30; every N vertex beats the first 12 X vertices
/// and loses to the other 12.
RoundTheBackInstance small_round_the_back() {
    const std::size_t total = 31;
    RoundTheBackInstance inst;
    inst.tree = DirectedTree(3, {{0, 1}, {1, 2}}, 0);
    inst.d = 2;
    inst.host = Tournament::from_predicate(total, [](Vertex u, Vertex v) {
        if (u == 0) return true;
        if (u <= 6 && v >= 7) return v < 19;
        return (u + v) % 2 == 0;
    });
    inst.v = 0;
    inst.n_set = range_set(total, 1, 7);
    inst.x_set = range_set(total, 7, 31);
    return inst;
}

/// Star-shaped with a pendant: centre 0, out-leaves 2 and 3, in-leaf 4, and
/// 0→1→5.
DirectedTree star_with_pendant() { return DirectedTree(6, {{0, 1}, {0, 2}, {0, 3}, {4, 0}, {1, 5}}); }

} // namespace

TEST(RoundTheBack, SingleVertex) {
    RoundTheBackInstance inst = small_round_the_back();
    inst.tree = DirectedTree(1, {}, 0);
    const RoundTheBackResult r = round_the_back(inst);
    EXPECT_EQ(r.embedding[0], 0);
    EXPECT_EQ(r.x_occupied, 0u);
}

TEST(RoundTheBack, PathOfTwo) {
    const RoundTheBackInstance inst = small_round_the_back();
    EXPECT_FALSE(oracle::find_embedding(inst.tree, inst.host) == std::nullopt);
    const RoundTheBackResult r = round_the_back(inst);
    EXPECT_TRUE(is_valid_embedding(inst.tree, inst.host, r.embedding));
    EXPECT_EQ(r.embedding[0], 0);
    EXPECT_LE(r.x_occupied, 4 * inst.d);
    EXPECT_EQ(r.x_occupied, count_and(r.embedding.image_set(31), inst.x_set));
}

TEST(RoundTheBack, RandomInstances) {
    for (Seed s = 0; s < 100; ++s) {
        const std::size_t d = 1 + s % 3;
        const RoundTheBackInstance inst = random_round_the_back_instance(2 + s % 11, d, s);
        const RoundTheBackResult r = round_the_back(inst);
        ASSERT_TRUE(is_valid_embedding(inst.tree, inst.host, r.embedding));
        ASSERT_EQ(r.embedding[*inst.tree.root()], inst.v);
        ASSERT_LE(count_and(r.embedding.image_set(inst.host.order()), inst.x_set), 4 * d);
    }
}

TEST(RoundTheBack, ViolationsAreNamed) {
    RoundTheBackInstance inst = small_round_the_back();
    inst.tree = DirectedTree(3, {{1, 0}, {1, 2}}, 0);
    EXPECT_EQ(violated([&] { validate(inst); }), "root-no-in-arcs");
    inst = small_round_the_back();
    inst.d = 1;
    EXPECT_EQ(violated([&] { validate(inst); }), "component-size");
    inst = small_round_the_back();
    inst.d = 3;
    EXPECT_EQ(violated([&] { validate(inst); }), "N-prime");
    inst = small_round_the_back();
    inst.tree = DirectedTree(3, {{0, 1}, {1, 2}});
    EXPECT_EQ(violated([&] { validate(inst); }), "rooted");
    inst = small_round_the_back();
    inst.n_set.erase(6);
    EXPECT_EQ(violated([&] { validate(inst); }), "partition");
    const RoundTheBackInstance r = random_round_the_back_instance(8, 2, 1);
    RoundTheBackInstance bad = r;
    bad.host = reverse(r.host);
    EXPECT_EQ(violated([&] { validate(bad); }), "N-outneighbours");
    EXPECT_THROW((void)round_the_back(bad), HypothesisViolation);
}

TEST(OneByOne, CoreIsWholeTree) {
    OneByOneInstance inst;
    inst.tree = directed_path(3);
    inst.core = VertexSet::full(3);
    inst.host = transitive_tournament(5);
    inst.partial = Embedding::from_images({0, 2, 4});
    inst.s_set = VertexSet::full(5);
    inst.n_set = VertexSet(5);
    inst.d = 0;
    const OneByOneResult r = extend_one_by_one(inst);
    EXPECT_EQ(r.embedding, inst.partial);
    EXPECT_EQ(r.landed_in_n_prime, 0u);
}

TEST(OneByOne, SingleArcIntoOutNeighbourhood) {
    // S = {0}; 0 beats 1, 2, 3 and loses to 4, 5, 6.
    OneByOneInstance inst;
    inst.tree = directed_path(2);
    inst.core = VertexSet(2, {0});
    inst.host = Tournament::from_predicate(7, [](Vertex u, Vertex v) { return u == 0 ? v <= 3 : (u + v) % 2 == 1; });
    inst.partial = Embedding(2);
    inst.partial.assign(0, 0);
    inst.s_set = VertexSet(7, {0});
    inst.n_set = range_set(7, 1, 7);
    inst.d = 1;
    const OneByOneResult r = extend_one_by_one(inst);
    EXPECT_TRUE(is_valid_embedding(inst.tree, inst.host, r.embedding));
    EXPECT_TRUE(VertexSet(7, {1, 2, 3}).contains(r.embedding[1]));
}

TEST(OneByOne, VariantCNeedsOnlyInDegrees) {
    // Tree arc 1→0 into T_c = {0}; the host vertex 0 has no out-neighbours in N.
    OneByOneInstance inst;
    inst.tree = DirectedTree(2, {{1, 0}});
    inst.core = VertexSet(2, {0});
    inst.host = transitive_tournament(4);
    inst.partial = Embedding(2);
    inst.partial.assign(0, 3);
    inst.s_set = VertexSet(4, {3});
    inst.n_set = range_set(4, 0, 3);
    inst.d = 1;
    inst.variant = OneByOneVariant::c;
    const OneByOneResult r = extend_one_by_one(inst);
    EXPECT_TRUE(is_valid_embedding(inst.tree, inst.host, r.embedding));
    inst.variant = OneByOneVariant::a;
    EXPECT_EQ(violated([&] { validate(inst); }), "(i)");
}

TEST(OneByOne, RandomInstancesAllVariants) {
    for (OneByOneVariant variant : {OneByOneVariant::a, OneByOneVariant::b, OneByOneVariant::c})
        for (Seed s = 0; s < 100; ++s) {
            const OneByOneInstance inst = random_one_by_one_instance(2 + s % 20, variant, s);
            const OneByOneResult r = extend_one_by_one(inst);
            ASSERT_TRUE(is_valid_embedding(inst.tree, inst.host, r.embedding));
            inst.core.for_each([&](Vertex x) { ASSERT_EQ(r.embedding[x], inst.partial[x]); });
            if (variant == OneByOneVariant::b) {
                std::size_t landed = 0;
                for (std::size_t x = 0; x < inst.tree.order(); ++x)
                    if (!inst.core.contains(static_cast<Vertex>(x)) && inst.n_prime->contains(r.embedding[static_cast<Vertex>(x)]))
                        ++landed;
                ASSERT_GE(landed, inst.r);
                ASSERT_EQ(landed, r.landed_in_n_prime);
            }
        }
}

TEST(OneByOne, ViolationsAreNamed) {
    OneByOneInstance inst = random_one_by_one_instance(12, OneByOneVariant::b, 4);
    OneByOneInstance bad = inst;
    bad.n_prime.reset();
    EXPECT_EQ(violated([&] { validate(bad); }), "N-prime-subset");
    bad = inst;
    bad.d = 0;
    EXPECT_EQ(violated([&] { validate(bad); }), "component-size");
    bad = inst;
    bad.n_set |= bad.s_set;
    EXPECT_EQ(violated([&] { validate(bad); }), "sets");
    bad = inst;
    bad.r = inst.tree.order();
    EXPECT_EQ(violated([&] { validate(bad); }), "r-bound");
    bad = inst;
    bad.partial = Embedding(inst.tree.order());
    EXPECT_EQ(violated([&] { validate(bad); }), "partial-embedding");
}

TEST(TwoSet, SeedOnly) {
    TwoSetInstance inst;
    inst.tree = directed_path(3);
    inst.f_minus = VertexSet(3);
    inst.f_plus = VertexSet::full(3);
    inst.host = transitive_tournament(6);
    inst.y_set = VertexSet::full(6);
    inst.z_set = VertexSet(6);
    inst.gamma = 0.1;
    inst.alpha = 0.0;
    inst.seed = Embedding::from_images({0, 1, 2});
    EXPECT_EQ(component_by_component(inst), inst.seed);
}

TEST(TwoSet, PathAcrossTheSets) {
    // Y = 0..4, Z = 5..9, transitive inside each, Z→Y throughout.
    TwoSetInstance inst;
    inst.tree = directed_path(3);
    inst.f_minus = VertexSet(3, {0});
    inst.f_plus = VertexSet(3, {1, 2});
    inst.host = Tournament::from_predicate(10, [](Vertex u, Vertex v) {
        if ((u < 5) == (v < 5)) return true;
        return u >= 5;
    });
    inst.y_set = range_set(10, 0, 5);
    inst.z_set = range_set(10, 5, 10);
    inst.gamma = 0.1;
    inst.alpha = 0.1;
    inst.seed = Embedding(3);
    inst.seed.assign(1, 0);
    inst.seed.assign(2, 1);
    validate(inst);
    const Embedding phi = component_by_component(inst);
    EXPECT_TRUE(is_valid_embedding(inst.tree, inst.host, phi));
    EXPECT_TRUE(inst.z_set.contains(phi[0]));
    EXPECT_EQ(phi[1], 0);
    EXPECT_EQ(phi[2], 1);
}

TEST(TwoSet, RandomInstancesAndDuality) {
    for (Seed s = 0; s < 100; ++s) {
        const TwoSetInstance inst = random_two_set_instance(2 + s % 25, s);
        const Embedding phi = component_by_component(inst);
        ASSERT_TRUE(is_valid_embedding(inst.tree, inst.host, phi));
        inst.f_plus.for_each([&](Vertex x) { ASSERT_TRUE(inst.y_set.contains(phi[x])); });
        inst.f_minus.for_each([&](Vertex x) { ASSERT_TRUE(inst.z_set.contains(phi[x])); });
        const TwoSetInstance rev = reverse(inst);
        EXPECT_EQ(reverse(rev).host, inst.host);
        const Embedding dual = dual_component_by_component(rev);
        EXPECT_EQ(dual, phi);
    }
}

TEST(TwoSet, ViolationsAreNamed) {
    const TwoSetInstance inst = random_two_set_instance(14, 2);
    TwoSetInstance bad = inst;
    bad.z_set |= bad.y_set;
    EXPECT_EQ(violated([&] { validate(bad); }), "sets");
    bad = inst;
    bad.seed = Embedding(inst.tree.order());
    EXPECT_EQ(violated([&] { validate(bad); }), "seed");
    bad = inst;
    bad.host = reverse(inst.host);
    const std::string name = violated([&] { validate(bad); });
    EXPECT_TRUE(name == "Y-out-degree-into-Z" || name == "seed") << name;
    bad = inst;
    std::swap(bad.f_minus, bad.f_plus);
    EXPECT_NE(violated([&] { validate(bad); }), "");
}

TEST(AlmostRegular, Examples) {
    EXPECT_TRUE(is_almost_regular(rotational_regular_tournament(3), 0.0));
    EXPECT_FALSE(is_almost_regular(transitive_tournament(11), 0.5));
    for (std::size_t m = 3; m < 40; m += 2) EXPECT_TRUE(is_almost_regular(rotational_regular_tournament(m), 0.0));
}

TEST(AlmostRegular, DominatedExtrasViolateEveryCase) {
    std::vector<Tournament> blocks{rotational_regular_tournament(101), transitive_tournament(5)};
    const Tournament g = ordered_blocks(blocks);
    for (DegreeCase c : {DegreeCase::i, DegreeCase::ii, DegreeCase::iii, DegreeCase::iv}) {
        EXPECT_FALSE(degree_case_holds(g, 0.01, c));
        EXPECT_THROW((void)almost_regular_subtournament(g, 0.01, c, 0.3), HypothesisViolation);
    }
}

TEST(AlmostRegular, DominatingExtrasAreRemoved) {
    std::vector<Tournament> blocks{transitive_tournament(5), rotational_regular_tournament(101)};
    const Tournament g = ordered_blocks(blocks);
    ASSERT_TRUE(degree_case_holds(g, 0.05, DegreeCase::i));
    const VertexSet kept = almost_regular_subtournament(g, 0.05, DegreeCase::i, 0.3);
    EXPECT_GE(kept.count(), 74u);
    EXPECT_EQ(kept, range_set(106, 5, 106));
    EXPECT_TRUE(is_almost_regular(induced_subtournament(g, kept).tournament, 0.3));
    const VertexSet dual = almost_regular_subtournament(reverse(g), 0.05, DegreeCase::ii, 0.3);
    EXPECT_EQ(dual, kept);
}

TEST(StarShaped, Examples) {
    ASSERT_EQ(core_tree(inward_star(5), 2).size(), 1u);
    const EmbedOutcome r = embed_star_shaped(inward_star(5), transitive_tournament(8), 2);
    ASSERT_TRUE(r.found());
    EXPECT_GE(transitive_tournament(8).indegree((*r.embedding)[0]), 4u);
    EXPECT_TRUE(is_valid_embedding(inward_star(5), transitive_tournament(8), *r.embedding));

    // 5 < 2 * 4 - 2: the host is below the size precondition.
    EXPECT_THROW((void)embed_star_shaped(inward_star(4), rotational_regular_tournament(5), 2), InvalidArgument);
    EXPECT_EQ(portfolio_embed(inward_star(4), rotational_regular_tournament(5)).verdict, Verdict::not_found);

    EXPECT_THROW((void)embed_star_shaped(directed_path(6), transitive_tournament(10), 2), InvalidArgument);
}

TEST(StarShaped, PendantStarOnSampledHosts) {
    const DirectedTree t = star_with_pendant();
    ASSERT_EQ(core_tree(t, 2).size(), 1u);
    for (Seed s = 0; s < 200; ++s) {
        const Tournament g = random_tournament(10, s);
        const EmbedOutcome r = embed_star_shaped(t, g, 2);
        if (r.found()) EXPECT_TRUE(is_valid_embedding(t, g, *r.embedding));
        else EXPECT_EQ(r.verdict, Verdict::budget_exhausted);
        const EmbedOutcome p = portfolio_embed(t, g);
        ASSERT_TRUE(p.found());
        EXPECT_TRUE(is_valid_embedding(t, g, *p.embedding));
        EXPECT_TRUE(oracle::embeds(t, g));
    }
}

TEST(Portfolio, Examples) {
    for (Seed s = 0; s < 20; ++s) {
        const Tournament g = random_tournament(8, s);
        const EmbedOutcome r = portfolio_embed(directed_path(8), g);
        ASSERT_TRUE(r.found());
        EXPECT_TRUE(is_valid_embedding(directed_path(8), g, *r.embedding));
    }
    const EmbedOutcome sharp = portfolio_embed(inward_star(4), rotational_regular_tournament(5));
    EXPECT_EQ(sharp.verdict, Verdict::not_found);
    EXPECT_EQ(sharp.strategy, "exhaustive");
}

TEST(Portfolio, ReversalDuality) {
    Rng rng(9, "portfolio_duality_test");
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 2 + rng.below(6);
        const DirectedTree t = random_oriented_tree(n, rng.next());
        const Tournament g = random_tournament(n + rng.below(n), rng.next());
        const EmbedOutcome a = portfolio_embed(t, g), b = portfolio_embed(reverse(t), reverse(g));
        ASSERT_EQ(a.verdict, b.verdict);
        ASSERT_EQ(a.found(), oracle::embeds(t, g));
    }
}

TEST(Portfolio, StagesCanBeDisabled) {
    PortfolioConfig only_exhaustive;
    only_exhaustive.use_greedy = only_exhaustive.use_outbranching = only_exhaustive.use_star_shaped =
        only_exhaustive.use_two_set = false;
    const EmbedOutcome r = portfolio_embed(directed_path(5), random_tournament(8, 1), only_exhaustive);
    ASSERT_TRUE(r.found());
    EXPECT_EQ(r.strategy, "exhaustive");
    PortfolioConfig nothing = only_exhaustive;
    nothing.use_exhaustive = false;
    EXPECT_NE(portfolio_embed(directed_path(5), random_tournament(8, 1), nothing).verdict, Verdict::not_found);
}

TEST(TwoSetStrategy, ProducesValidEmbeddingsWhenFound) {
    std::size_t found = 0;
    for (Seed s = 0; s < 100; ++s) {
        const DirectedTree t = random_oriented_tree(10, s);
        const Tournament g = random_tournament(18, s + 7);
        const EmbedOutcome r = embed_two_set(t, g, 2);
        EXPECT_NE(r.verdict, Verdict::not_found);
        if (r.found()) {
            ++found;
            EXPECT_TRUE(is_valid_embedding(t, g, *r.embedding));
        }
    }
    RecordProperty("two_set_found", static_cast<int>(found));
}
