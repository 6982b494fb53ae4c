#include <gtest/gtest.h>

#include "sgflow.hpp"

using namespace sgflow;

namespace {

// Minimum over every orientation, no pruning and no incumbent.
std::optional<Rational> exhaustive_phi_c(const SignedGraph& g) {
    std::vector<int> lp_edges;
    for (int e = 0; e < g.num_edges(); ++e)
        if (!(g.edge(e).is_loop() && g.sign(e) > 0)) lp_edges.push_back(e);
    if (lp_edges.empty()) return Rational(2);
    std::optional<Rational> best;
    const std::size_t m = lp_edges.size();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> flips;
        for (std::size_t i = 0; i < m; ++i)
            if ((mask >> i) & 1) flips.push_back(lp_edges[i]);
        auto r = detail::orientation_lp_exact(g, Orientation::from_flip_set(g, flips), lp_edges);
        if (r && (!best || r->first < *best)) best = r->first;
    }
    if (best) *best += 1;
    return best;
}

std::vector<SignedGraph> admissible_sample() {
    std::vector<SignedGraph> out;
    for (auto& it : enumerate_signed_graphs(4, 6))
        if (is_flow_admissible(it.graph).admissible && it.graph.num_edges() > 0) out.push_back(it.graph);
    for (std::uint64_t seed = 1; out.size() < 260 && seed < 400; ++seed) {
        auto g = random_signed_graph(seed, 5, 8, 0.4);
        if (is_flow_admissible(g).admissible) out.push_back(g);
    }
    return out;
}

} // namespace

TEST(CircularFlowNumber, MatchesExhaustiveOrientationSearch) {
    for (const auto& g : admissible_sample()) {
        auto r = circular_flow_number(g);
        auto expect = exhaustive_phi_c(g);
        ASSERT_TRUE(expect) << serialize_graph(g);
        EXPECT_EQ(r.phi_c, *expect) << serialize_graph(g);
        EXPECT_TRUE(check_flow(g, r.witness, FlowKind::circular(r.phi_c)));
        auto phi_i = integer_flow_number(g);
        ASSERT_TRUE(phi_i.phi_i);
        EXPECT_LE(r.phi_c, Rational(*phi_i.phi_i));
        EXPECT_GE(r.phi_c, 2);
    }
}

TEST(CircularFlowNumber, KnownValues) {
    SignedGraph k4 = parse_graph("p 4 6\ne 1 2 +\ne 1 3 +\ne 1 4 +\ne 2 3 +\ne 2 4 +\ne 3 4 +\n");
    EXPECT_EQ(circular_flow_number(k4).phi_c, 4);
    SignedGraph c5(5);
    for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5, 1);
    EXPECT_EQ(circular_flow_number(c5).phi_c, 2);
    // two negative loops joined by an edge: loops carry x, the edge 2x, so x >= 1 and 2x <= r - 1
    EXPECT_EQ(circular_flow_number(parse_graph("p 2 3\ne 1 1 -\ne 1 2 +\ne 2 2 -\n")).phi_c, 3);
}

TEST(CircularFlowNumber, GFamilyIsThree) {
    for (int t = 1; t <= 2; ++t) {
        SignedGraph g = g_family(t);
        auto r = circular_flow_number(g);
        EXPECT_EQ(r.phi_c, 3);
        auto w = g_family_circular_witness(t);
        EXPECT_TRUE(check_flow(g, w, FlowKind::circular(3)));
    }
}

TEST(CircularFlowNumber, SeedOnlyPrimesTheSearch) {
    SignedGraph k4 = parse_graph("p 4 6\ne 1 2 +\ne 1 3 +\ne 1 4 +\ne 2 3 +\ne 2 4 +\ne 3 4 +\n");
    auto plain = circular_flow_number(k4);
    auto f5 = find_nz_k_flow(k4, 5);
    ASSERT_TRUE(f5.found());
    auto seeded = circular_flow_number(k4, to_rational_flow(*f5));
    EXPECT_EQ(seeded.phi_c, plain.phi_c);
    FlowAssignment junk{Orientation::canonical(k4), std::vector<Rational>(6, Rational(1))};
    EXPECT_THROW(circular_flow_number(k4, junk), PreconditionError);
}

TEST(CircularFlowNumber, Preconditions) {
    EXPECT_THROW(circular_flow_number(parse_graph("p 3 3\ne 1 2 +\ne 2 3 +\ne 3 1 -\n")), PreconditionError);
    SignedGraph big(2);
    for (int i = 0; i < 22; ++i) big.add_edge(0, 1, 1);
    EXPECT_THROW(circular_flow_number(big), ResourceCapError);
}

TEST(CircularFlowNumber, PositiveLoopsOnly) {
    auto r = circular_flow_number(parse_graph("p 1 2\ne 1 1 +\ne 1 1 +\n"));
    EXPECT_EQ(r.phi_c, 2);
}

TEST(Lp, SmallProblems) {
    // maximise x + y subject to x + 2y <= 4, 3x + y <= 6, in equality form with slacks
    std::vector<std::vector<Rational>> A{{1, 2, 1, 0}, {3, 1, 0, 1}};
    std::vector<Rational> b{4, 6}, c{-1, -1, 0, 0};
    auto r = solve_lp(A, b, c);
    ASSERT_EQ(r.status, LpStatus::optimal);
    EXPECT_EQ(r.value, Rational(-14, 5));
    std::vector<std::vector<Rational>> inf{{1, 1}};
    std::vector<Rational> nb{-1}, nc{1, 1};
    EXPECT_EQ(solve_lp(inf, nb, nc).status, LpStatus::infeasible);
}
