#include <gtest/gtest.h>

#include "depthstab/depthstab.hpp"
#include "oracles.hpp"

using namespace depthstab;

namespace {

// Relation graph edges by comparing every pair of generators.
std::set<Edge> relation_edges_brute_force(const MonomialIdeal &I) {
    std::set<Edge> out;
    const auto &gens = I.generators();
    for (const auto &u : gens)
        for (const auto &v : gens)
            for (std::size_t i = 1; i <= I.n(); ++i)
                for (std::size_t j = i + 1; j <= I.n(); ++j)
                    if (u.times_variable(i) == v.times_variable(j))
                        out.emplace(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return out;
}

std::set<Edge> edge_set(const Graph &g) { return {g.edges().begin(), g.edges().end()}; }

std::size_t incidence_rank_oracle(const Graph &g) {
    std::vector<std::vector<long long>> rows(g.n(), std::vector<long long>(g.edge_count(), 0));
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        rows[g.edges()[e].first - 1][e] = 1;
        rows[g.edges()[e].second - 1][e] = 1;
    }
    return oracle::dense_rank(rows);
}

} // namespace

TEST(RelationGraph, Examples) {
    auto c3 = linear_relation_graph(edge_ideal(oracle::cycle(3)));
    EXPECT_EQ(edge_set(c3.gamma), (std::set<Edge>{{1, 2}, {1, 3}, {2, 3}}));
    EXPECT_EQ(c3.r, 3u);
    EXPECT_EQ(c3.s, 1u);
    auto p4 = linear_relation_graph(edge_ideal(oracle::path(4)));
    EXPECT_EQ(edge_set(p4.gamma), (std::set<Edge>{{1, 3}, {2, 4}}));
    EXPECT_EQ(p4.r, 4u);
    EXPECT_EQ(p4.s, 2u);
    auto star = linear_relation_graph(edge_ideal(oracle::star(3)));
    EXPECT_EQ(edge_set(star.gamma), (std::set<Edge>{{2, 3}, {2, 4}, {3, 4}}));
    EXPECT_EQ(star.r, 3u);
    EXPECT_EQ(star.s, 1u);
}

TEST(RelationGraph, MixedDegreeRejected) {
    EXPECT_THROW(linear_relation_graph(parse_ideal("(x1^2, x1*x2*x3)")), PreconditionError);
    EXPECT_THROW(depth_upper_bound(parse_ideal("(x1^2, x1*x2*x3)"), 1), PreconditionError);
}

TEST(RelationGraph, MatchesPairwiseComparison) {
    for (std::size_t n = 2; n <= 5; ++n)
        for (const auto &g : enumerate_connected_graphs(n))
            for (std::size_t k = 1; k <= 2; ++k) {
                auto I = power(edge_ideal(g), k);
                ASSERT_EQ(edge_set(linear_relation_graph(I).gamma), relation_edges_brute_force(I))
                    << to_line(g) << " k=" << k;
            }
}

TEST(Spread, Examples) {
    EXPECT_EQ(analytic_spread(oracle::cycle(3)), 3u);
    EXPECT_EQ(analytic_spread(oracle::cycle(4)), 3u);
    EXPECT_EQ(analytic_spread(oracle::path(4)), 3u);
    EXPECT_EQ(analytic_spread(oracle::star(3)), 3u);
    EXPECT_EQ(analytic_spread_ideal(parse_ideal("(x1^2, x1*x2, x2^2)")), 2u);
    EXPECT_EQ(analytic_spread(parse_graph("1 2\n3 4")), 2u);
    EXPECT_THROW(analytic_spread(Graph(3, {})), PreconditionError);
    EXPECT_THROW(analytic_spread_closed_form(parse_graph("1 2\n3 4")), PreconditionError);
}

TEST(Spread, ThreeComputationsAgree) {
    for (std::size_t n = 2; n <= 6; ++n)
        for (const auto &g : enumerate_connected_graphs(n, {true, 0})) {
            const auto a = analytic_spread(g);
            ASSERT_EQ(a, incidence_rank_oracle(g)) << to_line(g);
            ASSERT_EQ(a, analytic_spread_ideal(edge_ideal(g))) << to_line(g);
            ASSERT_EQ(a, analytic_spread_closed_form(g)) << to_line(g);
            ASSERT_GE(a, spread_lower_bound(edge_ideal(g))) << to_line(g);
        }
}

TEST(Bounds, Examples) {
    auto c3 = edge_ideal(oracle::cycle(3));
    EXPECT_EQ(depth_upper_bound(c3, 1), 1u);
    EXPECT_EQ(depth_upper_bound(c3, 2), 0u);
    EXPECT_EQ(spread_lower_bound(c3), 3u);
    auto p4 = edge_ideal(oracle::path(4));
    EXPECT_EQ(depth_upper_bound(p4, 2), 1u);
    EXPECT_EQ(spread_lower_bound(p4), 3u);
}

TEST(Bounds, RangeErrors) {
    auto c3 = edge_ideal(oracle::cycle(3));
    EXPECT_THROW(depth_upper_bound(c3, 0), ArgumentError);
    EXPECT_THROW(depth_upper_bound(c3, 3), ArgumentError);
}

TEST(DepthSequence, Examples) {
    auto star = depth_sequence(oracle::star(3));
    EXPECT_EQ(star.depths, (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(star.dstab, 1u);
    EXPECT_EQ(star.limit, 1u);
    EXPECT_TRUE(star.limit_as_expected);

    auto p4 = depth_sequence(oracle::path(4));
    EXPECT_EQ(p4.depths, (std::vector<std::size_t>{2, 1}));
    EXPECT_EQ(p4.dstab, 2u);

    auto c3 = depth_sequence(oracle::cycle(3));
    EXPECT_EQ(c3.depths, (std::vector<std::size_t>{1, 0}));
    EXPECT_EQ(c3.dstab, 2u);
    EXPECT_EQ(c3.limit, 0u);
    EXPECT_TRUE(c3.certified);
    EXPECT_TRUE(c3.limit_as_expected);
}

TEST(DepthSequence, SingleEdgeIsUncertified) {
    auto e = depth_sequence(parse_graph("1 2"));
    EXPECT_EQ(e.depths, (std::vector<std::size_t>{1}));
    EXPECT_EQ(e.dstab, 1u);
    EXPECT_FALSE(e.certified);
}

TEST(DepthSequence, Preconditions) {
    try {
        depth_sequence(parse_graph("1 2\n3 4"));
        FAIL() << "expected a precondition error";
    } catch (const PreconditionError &e) {
        EXPECT_NE(std::string(e.what()).find("connected"), std::string::npos);
    }
    EXPECT_THROW(depth_sequence(Graph(2, {})), PreconditionError);
}

TEST(DepthSequence, ExtraPowersAndAccess) {
    DepthOptions opts;
    opts.extra_powers = 2;
    auto p = depth_sequence(oracle::path(4), opts);
    EXPECT_EQ(p.tail_depths, (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(p.computed_powers(), 4u);
    EXPECT_EQ(p.depth_at(4), 1u);
    EXPECT_THROW(p.depth_at(5), ArgumentError);
    EXPECT_THROW(p.depth_at(0), ArgumentError);
}

TEST(DepthSequence, MatchesKoszulOracle) {
    for (std::size_t n = 2; n <= 4; ++n)
        for (const auto &g : enumerate_connected_graphs(n, {true, 0})) {
            auto p = depth_sequence(g);
            auto I = edge_ideal(g);
            for (std::size_t k = 1; k <= p.depths.size(); ++k)
                ASSERT_EQ(p.depths[k - 1], n - oracle::koszul_pd(power(I, k))) << to_line(g) << " k=" << k;
        }
}

TEST(DepthSequence, FieldIsPassedThrough) {
    DepthOptions opts;
    opts.field = Field::prime(2);
    EXPECT_EQ(depth_sequence(oracle::cycle(5), opts).depths, depth_sequence(oracle::cycle(5)).depths);
}

TEST(Astab, Examples) {
    EXPECT_EQ(astab(oracle::path(4)), 1u);
    EXPECT_EQ(astab(oracle::cycle(3)), 2u);
    EXPECT_EQ(astab(oracle::cycle(5)), 3u);
    EXPECT_EQ(astab(oracle::cycle(4)), 1u);
    auto c3 = astab_profile(oracle::cycle(3));
    EXPECT_EQ(c3.ass_per_power.size(), 3u);
    EXPECT_TRUE(c3.monotone);
    EXPECT_FALSE(c3.bipartite);
    auto p4 = astab_profile(oracle::path(4));
    EXPECT_EQ(p4.ass_per_power.size(), 2u);
    EXPECT_EQ(p4.ass_per_power[0], p4.ass_per_power[1]);
}

TEST(Astab, StabilizationIndex) {
    using C = std::vector<std::vector<VariableSet>>;
    EXPECT_EQ(stabilization_index(C{{{1}}, {{1}}, {{1}}}), 1u);
    EXPECT_EQ(stabilization_index(C{{{1}}, {{1}, {2}}, {{1}, {2}}}), 2u);
    EXPECT_EQ(stabilization_index(C{{{1}}, {{2}}}), 2u);
}

TEST(Astab, UsesKnownPowers) {
    auto g = oracle::cycle(5);
    auto powers = power_sequence(edge_ideal(g), 5);
    EXPECT_EQ(astab_profile(g, {}, &powers).astab, 3u);
}

TEST(Morey, Examples) {
    EXPECT_EQ(morey_lower_bound(oracle::path(6), 1), 2);
    EXPECT_EQ(morey_lower_bound(oracle::path(4), 3), 1);
    EXPECT_EQ(morey_lower_bound(oracle::star(3), 1), 1);
    EXPECT_EQ(morey_lower_bound(oracle::path(10), 1), 4);
    EXPECT_EQ(morey_lower_bound_min_reading(oracle::path(6), 1), 1);
    EXPECT_EQ(morey_lower_bound_min_reading(oracle::path(4), 9), -1);
}

TEST(Morey, Preconditions) {
    EXPECT_THROW(morey_lower_bound(oracle::cycle(3), 1), PreconditionError);
    EXPECT_THROW(morey_lower_bound(parse_graph("1 2"), 1), PreconditionError);
    EXPECT_THROW(morey_lower_bound(oracle::path(4), 0), ArgumentError);
}

TEST(Morey, BoundHoldsOnSmallTrees) {
    for (std::size_t n = 3; n <= 7; ++n)
        for (const auto &t : enumerate_trees(n, {true, 0})) {
            auto p = depth_sequence(t);
            for (std::size_t k = 1; k <= p.depths.size(); ++k)
                ASSERT_GE(static_cast<long long>(p.depths[k - 1]), morey_lower_bound(t, k))
                    << to_line(t) << " k=" << k;
        }
}

TEST(SocleWitness, Path) {
    auto w = socle_witness_check(oracle::path(4));
    EXPECT_EQ(w.power, 2u);
    EXPECT_EQ(w.inner_edges, (std::vector<Edge>{{2, 3}}));
    EXPECT_EQ(to_string(w.witness), "x1*x2*x3");
    EXPECT_EQ(to_string(w.reduced_witness), "x1^2*x3");
    EXPECT_TRUE(w.edge_count_ok);
    EXPECT_TRUE(w.witness_outside);
    EXPECT_TRUE(w.multiples_inside);
    EXPECT_TRUE(w.passed());
}

TEST(SocleWitness, StarRelabelsLeafAndCenter) {
    auto w = socle_witness_check(oracle::star(3));
    EXPECT_EQ(w.power, 1u);
    EXPECT_TRUE(w.inner_edges.empty());
    EXPECT_EQ(to_string(w.witness), "x1");
    EXPECT_EQ(w.relabeled.degree(2), 3u);
    EXPECT_EQ(w.relabeled.degree(1), 1u);
    EXPECT_TRUE(w.passed());
}

TEST(SocleWitness, Broom) {
    auto g = broom(2, 4);
    auto w = socle_witness_check(g);
    EXPECT_EQ(w.power, g.n() - graph_metrics(g).free_vertices.size());
    EXPECT_TRUE(oracle::isomorphic(w.relabeled, g));
    EXPECT_TRUE(w.passed()) << to_string(w.witness);
}

TEST(SocleWitness, IndependentMembershipCheck) {
    for (std::size_t n = 3; n <= 7; ++n)
        for (const auto &t : enumerate_trees(n, {true, 0})) {
            auto w = socle_witness_check(t);
            auto reduced = oracle::power(substitute(edge_ideal(w.relabeled), 2, 1), w.power);
            auto rw = w.reduced_witness.exponents();
            ASSERT_FALSE(oracle::member(reduced, rw)) << to_line(t);
            for (std::size_t i = 0; i < n; ++i) {
                if (i == 1)
                    continue;
                auto up = rw;
                ++up[i];
                ASSERT_TRUE(oracle::member(reduced, up)) << to_line(t) << " x" << i + 1;
            }
            ASSERT_TRUE(w.passed());
        }
}

TEST(SocleWitness, Preconditions) {
    EXPECT_THROW(socle_witness_check(oracle::cycle(4)), PreconditionError);
    EXPECT_THROW(socle_witness_check(parse_graph("1 2")), PreconditionError);
}
