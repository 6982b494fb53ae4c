#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sgflow.hpp"

using namespace sgflow;

namespace {

std::vector<SignedGraph> sample() {
    std::vector<SignedGraph> out;
    for (auto& it : enumerate_signed_graphs(4, 6)) out.push_back(it.graph);
    for (std::uint64_t seed = 7; seed < 47; ++seed) out.push_back(random_signed_graph(seed, 5, 7, 0.4));
    return out;
}

} // namespace

TEST(Backtracker, AgreesWithBruteForce) {
    for (const auto& g : sample())
        for (long long k : {2, 3, 4}) {
            auto i = find_nz_k_flow(g, k);
            auto z = find_nz_zk_flow(g, k);
            ASSERT_FALSE(i.capped() || z.capped());
            EXPECT_EQ(i.found(), brute_force_flow_exists(g, k, false)) << serialize_graph(g) << "k=" << k;
            EXPECT_EQ(z.found(), brute_force_flow_exists(g, k, true)) << serialize_graph(g) << "Z_" << k;
            if (i.found()) {
                EXPECT_TRUE(check_flow(g, *i, FlowKind::integer(k)));
                EXPECT_TRUE(parity_law_holds(g, *i));
            }
            if (z.found()) { EXPECT_TRUE(check_flow(g, *z, FlowKind::modulo(k))); }
            // an integer k-flow is a Z_k-flow
            if (i.found()) { EXPECT_TRUE(z.found()); }
        }
}

TEST(Backtracker, PositiveLoopsDoNotSkipClosure) {
    // a positive loop as the last edge at a vertex used to hide an unbalanced boundary there
    SignedGraph g = parse_graph("p 1 3\ne 1 1 -\ne 1 1 -\ne 1 1 +\n");
    for (long long k : {3, 4, 5}) {
        auto z = find_nz_zk_flow(g, k);
        if (z.found()) { EXPECT_TRUE(check_flow(g, *z, FlowKind::modulo(k))); }
        EXPECT_EQ(z.found(), brute_force_flow_exists(g, k, true));
    }
    auto i = find_nz_k_flow(g, 2);
    ASSERT_TRUE(i.found());
    EXPECT_TRUE(check_flow(g, *i, FlowKind::integer(2)));
}

TEST(Backtracker, NonAdmissibleGraphsHaveNoFlow) {
    SignedGraph g = parse_graph("p 3 3\ne 1 2 +\ne 2 3 +\ne 3 1 -\n");
    for (long long k = 2; k <= 6; ++k) EXPECT_TRUE(find_nz_k_flow(g, k).none());
    auto r = integer_flow_number(g);
    EXPECT_FALSE(r.admissible);
    EXPECT_FALSE(r.phi_i);
}

TEST(Backtracker, CapIsUndecided) {
    auto s = find_nz_k_flow(signed_petersen(), 5, 10);
    EXPECT_TRUE(s.capped());
    EXPECT_FALSE(s.value);
    EXPECT_THROW(s.decided("test"), ResourceCapError);
    EXPECT_THROW(find_nz_k_flow(signed_petersen(), 1), PreconditionError);
}

TEST(Backtracker, DeterministicWitness) {
    SignedGraph g = random_signed_graph(3, 6, 9, 0.3);
    auto a = find_nz_k_flow(g, 6), b = find_nz_k_flow(g, 6);
    ASSERT_EQ(a.status, b.status);
    EXPECT_EQ(a.nodes, b.nodes);
    if (a.found()) { EXPECT_EQ(a.value->values, b.value->values); }
}

TEST(FlowNumber, KnownValues) {
    SignedGraph k4 = parse_graph("p 4 6\ne 1 2 +\ne 1 3 +\ne 1 4 +\ne 2 3 +\ne 2 4 +\ne 3 4 +\n");
    EXPECT_EQ(integer_flow_number(k4).phi_i, 4);
    EXPECT_EQ(integer_flow_number(parse_graph("p 2 2\ne 1 1 -\ne 1 1 -\n")).phi_i, 2);
    // two negative loops joined by an edge need the value 2 on the edge
    EXPECT_EQ(integer_flow_number(parse_graph("p 2 3\ne 1 1 -\ne 1 2 +\ne 2 2 -\n")).phi_i, 3);
}

TEST(TwoFlows, EvenGraphs) {
    for (const auto& g : sample()) {
        auto f = find_2_flow_on_even_graph(g);
        EXPECT_EQ(f.has_value(), brute_force_flow_exists(g, 2, false)) << serialize_graph(g);
        if (f) { EXPECT_TRUE(check_flow(g, *f, FlowKind::integer(2))); }
    }
}

TEST(EulerCircuit, UsesEveryEdgeOnce) {
    SignedGraph g = parse_graph("p 3 5\ne 1 2 +\ne 2 3 -\ne 3 1 +\ne 1 1 -\ne 2 2 +\n");
    auto w = euler_circuit(g, 0);
    auto edges = w.edges();
    std::sort(edges.begin(), edges.end());
    EXPECT_EQ(edges, (std::vector<int>{0, 1, 2, 3, 4}));
    EXPECT_EQ(w.end(g), 0);
}

TEST(SignedCircuitFlow, EveryKindGivesAFlowOnItsSupport) {
    int seen[3] = {0, 0, 0};
    for (const auto& g : sample()) {
        for (std::uint32_t m : oracle::signed_circuits(g)) {
            std::vector<int> edges;
            for (int e = 0; e < g.num_edges(); ++e)
                if ((m >> e) & 1) edges.push_back(e);
            auto w = classify_signed_circuit(g, edges);
            ASSERT_TRUE(w);
            ++seen[static_cast<int>(w->kind)];
            auto f = signed_circuit_flow(g, *w);
            EXPECT_TRUE(boundary(g, f) == std::vector<long long>(static_cast<std::size_t>(g.num_vertices()), 0));
            for (int e = 0; e < g.num_edges(); ++e) {
                long long a = std::llabs(f[e]);
                EXPECT_EQ(a != 0, ((m >> e) & 1) != 0);
                EXPECT_LE(a, 2);
            }
        }
    }
    EXPECT_GT(seen[0], 0);
    EXPECT_GT(seen[1], 0);
    EXPECT_GT(seen[2], 0);
}

TEST(DfsOrder, CoversAllEdges) {
    SignedGraph g = random_signed_graph(11, 6, 10, 0.5);
    auto order = dfs_edge_order(g);
    std::sort(order.begin(), order.end());
    for (int e = 0; e < g.num_edges(); ++e) EXPECT_EQ(order[static_cast<std::size_t>(e)], e);
}
