#include <gtest/gtest.h>

#include <chrono>
#include <numeric>

#include "oracles.hpp"
#include "sumner/base_embedders.hpp"
#include "sumner/enumeration.hpp"
#include "sumner/error.hpp"
#include "sumner/generators.hpp"
#include "sumner/graph_ops.hpp"
#include "sumner/rng.hpp"

using namespace sumner;

namespace {

const DirectedTree& single_arc() {
    static const DirectedTree t(2, {{0, 1}});
    return t;
}

bool is_hamiltonian_path(const Tournament& g, const std::vector<Vertex>& p) {
    if (p.size() != g.order()) return false;
    VertexSet seen(g.order());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen.contains(p[i])) return false;
        seen.insert(p[i]);
        if (i + 1 < p.size() && !g.arc(p[i], p[i + 1])) return false;
    }
    return true;
}

Tournament cycle_with_sink() {
    return Tournament::from_predicate(4, [](Vertex u, Vertex v) {
        if (v == 3) return true;
        return (v - u + 3) % 3 == 1;
    });
}

} // namespace

TEST(Exhaustive, Examples) {
    EXPECT_EQ(exhaustive_embed(inward_star(3), rotational_regular_tournament(3)).verdict, Verdict::not_found);

    const EmbedOutcome star = exhaustive_embed(inward_star(3), transitive_tournament(4));
    ASSERT_TRUE(star.found());
    EXPECT_GE(transitive_tournament(4).indegree((*star.embedding)[0]), 2u);
    EXPECT_TRUE(is_valid_embedding(inward_star(3), transitive_tournament(4), *star.embedding));

    SearchConstraints pin;
    pin.pinned = {{0, 0}};
    const EmbedOutcome arc = exhaustive_embed(single_arc(), rotational_regular_tournament(3), pin);
    ASSERT_TRUE(arc.found());
    EXPECT_EQ((*arc.embedding)[1], 1);
}

TEST(Exhaustive, PinningErrors) {
    SearchConstraints c;
    c.pinned = {{0, 1}, {1, 0}};
    EXPECT_THROW((void)exhaustive_embed(single_arc(), rotational_regular_tournament(3), c), InfeasiblePinning);
    c.pinned = {{0, 1}, {1, 1}};
    EXPECT_THROW((void)exhaustive_embed(single_arc(), rotational_regular_tournament(3), c), InfeasiblePinning);
}

TEST(Exhaustive, ConstraintsHonoured) {
    SearchConstraints c;
    c.forbidden = VertexSet(4, {3});
    EXPECT_EQ(exhaustive_embed(inward_star(3), transitive_tournament(4), c).verdict, Verdict::found);
    c.forbidden = VertexSet(4, {2, 3});
    EXPECT_EQ(exhaustive_embed(inward_star(3), transitive_tournament(4), c).verdict, Verdict::not_found);
    c = {};
    c.allowed = {VertexSet(4, {2}), std::nullopt, std::nullopt};
    const EmbedOutcome r = exhaustive_embed(inward_star(3), transitive_tournament(4), c);
    ASSERT_TRUE(r.found());
    EXPECT_TRUE(satisfies_constraints(inward_star(3), transitive_tournament(4), c, *r.embedding));
}

TEST(Exhaustive, AgreesWithOracle) {
    Rng rng(21, "exhaustive_oracle_test");
    for (int i = 0; i < 3000; ++i) {
        const std::size_t n = 2 + rng.below(5);
        const std::size_t m = n + rng.below(3);
        const DirectedTree t = random_oriented_tree(n, rng.next());
        const Tournament g = random_tournament(m, rng.next());
        const EmbedOutcome e = exhaustive_embed(t, g);
        ASSERT_EQ(e.found(), oracle::embeds(t, g));
        if (e.found()) {
            ASSERT_TRUE(is_valid_embedding(t, g, *e.embedding));
        } else {
            ASSERT_EQ(e.verdict, Verdict::not_found);
        }
        const EmbedOutcome gr = greedy_embed(t, g);
        EXPECT_NE(gr.verdict, Verdict::not_found);
        if (gr.found()) {
            EXPECT_TRUE(e.found());
            EXPECT_TRUE(is_valid_embedding(t, g, *gr.embedding));
        }
    }
}

TEST(Exhaustive, BudgetIsHonest) {
    SearchConstraints c;
    c.node_budget = 1;
    const EmbedOutcome e = exhaustive_embed(inward_star(6), rotational_regular_tournament(9), c);
    EXPECT_EQ(e.verdict, Verdict::budget_exhausted);
}

TEST(Greedy, Examples) {
    EXPECT_TRUE(greedy_embed(single_arc(), rotational_regular_tournament(3)).found());
    const DirectedTree t = random_oriented_tree(20, 11);
    const Tournament g = random_tournament(60, 11);
    const EmbedOutcome r = greedy_embed(t, g);
    ASSERT_TRUE(r.found());
    EXPECT_TRUE(is_valid_embedding(t, g, *r.embedding));
    EXPECT_EQ(greedy_embed(inward_star(3), rotational_regular_tournament(3)).verdict, Verdict::budget_exhausted);
}

TEST(Redei, Examples) {
    EXPECT_TRUE(is_hamiltonian_path(rotational_regular_tournament(3), redei_path(rotational_regular_tournament(3))));
    EXPECT_EQ(redei_path(transitive_tournament(6)), (std::vector<Vertex>{0, 1, 2, 3, 4, 5}));
    const Tournament g = random_tournament(2000, 3);
    const auto start = std::chrono::steady_clock::now();
    const std::vector<Vertex> p = redei_path(g);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_TRUE(is_hamiltonian_path(g, p));
    EXPECT_LT(s, 1.0);
    const Embedding phi = redei_path_embedding(random_tournament(50, 8));
    EXPECT_TRUE(is_valid_embedding(directed_path(50), random_tournament(50, 8), phi));
}

TEST(Redei, AlwaysValid) {
    for (Seed s = 0; s < 300; ++s) {
        const Tournament g = random_tournament(1 + s % 90, s);
        ASSERT_TRUE(is_hamiltonian_path(g, redei_path(g)));
    }
}

TEST(MedianOrder, Examples) {
    const MedianOrder t5 = median_order(transitive_tournament(5), MedianMode::exact);
    EXPECT_EQ(t5.order, (std::vector<Vertex>{0, 1, 2, 3, 4}));
    EXPECT_EQ(t5.forward_arcs, 10u);
    EXPECT_EQ(median_order(rotational_regular_tournament(3), MedianMode::exact).forward_arcs, 2u);
    const Tournament r7 = rotational_regular_tournament(7);
    const MedianOrder m7 = median_order(r7, MedianMode::exact);
    EXPECT_EQ(m7.forward_arcs, oracle::max_forward_arcs(r7));
    EXPECT_EQ(forward_arc_count(r7, m7.order), m7.forward_arcs);
    EXPECT_THROW((void)median_order(random_tournament(21, 0), MedianMode::exact), CapExceeded);
}

TEST(MedianOrder, ExactMatchesBruteForce) {
    for (Seed s = 0; s < 60; ++s) {
        const Tournament g = random_tournament(2 + s % 6, s);
        EXPECT_EQ(median_order(g, MedianMode::exact).forward_arcs, oracle::max_forward_arcs(g));
    }
}

TEST(MedianOrder, ExactDominatesRandomOrders) {
    const Tournament g = random_tournament(14, 5);
    const std::size_t best = median_order(g, MedianMode::exact).forward_arcs;
    Rng rng(5, "median_random_orders");
    for (int i = 0; i < 1000; ++i) {
        std::vector<Vertex> p(14);
        std::iota(p.begin(), p.end(), 0);
        for (std::size_t j = 14; j > 1; --j) std::swap(p[j - 1], p[rng.below(j)]);
        ASSERT_LE(forward_arc_count(g, p), best);
    }
}

TEST(MedianOrder, LocalIsStableUnderSingleMoves) {
    for (Seed s = 0; s < 20; ++s) {
        const Tournament g = random_tournament(25, s);
        const MedianOrder m = median_order(g, MedianMode::local);
        EXPECT_EQ(forward_arc_count(g, m.order), m.forward_arcs);
        for (std::size_t i = 0; i < m.order.size(); ++i)
            for (std::size_t j = 0; j < m.order.size(); ++j) {
                std::vector<Vertex> p = m.order;
                const Vertex v = p[i];
                p.erase(p.begin() + static_cast<std::ptrdiff_t>(i));
                p.insert(p.begin() + static_cast<std::ptrdiff_t>(j), v);
                ASSERT_LE(forward_arc_count(g, p), m.forward_arcs);
            }
    }
}

TEST(Outbranching, Examples) {
    const EmbedOutcome star = embed_outbranching(outward_star(4), transitive_tournament(6));
    ASSERT_TRUE(star.found());
    EXPECT_EQ((*star.embedding)[0], 0);

    const EmbedOutcome path = embed_outbranching(directed_path(3), cycle_with_sink());
    ASSERT_TRUE(path.found());
    EXPECT_TRUE(is_valid_embedding(directed_path(3), cycle_with_sink(), *path.embedding));

    EXPECT_THROW((void)embed_outbranching(inward_star(3), transitive_tournament(4)), InvalidArgument);
    EXPECT_THROW((void)embed_outbranching(outward_star(4), transitive_tournament(5)), InvalidArgument);
}

TEST(Outbranching, AllFourVertexOutbranchingsIntoSixVertexClasses) {
    std::vector<DirectedTree> branchings;
    for (const DirectedTree& t : oriented_tree_classes(4))
        if (const auto r = outbranching_root(t)) branchings.push_back(t.with_root(*r));
    ASSERT_EQ(branchings.size(), 4u);
    for (const Tournament& g : tournament_classes(6))
        for (const DirectedTree& t : branchings) {
            const EmbedOutcome r = embed_outbranching(t, g);
            ASSERT_TRUE(r.found());
            ASSERT_TRUE(is_valid_embedding(t, g, *r.embedding));
        }
}

TEST(Outbranching, RootDetection) {
    EXPECT_EQ(outbranching_root(directed_path(4)), 0);
    EXPECT_EQ(outbranching_root(outward_star(5)), 0);
    EXPECT_FALSE(outbranching_root(inward_star(3)).has_value());
    EXPECT_EQ(outbranching_root(random_outbranching(30, 4)), 0);
}
