#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "sgflow.hpp"

using namespace sgflow;

namespace {

std::vector<SignedGraph> sample() {
    std::vector<SignedGraph> out;
    for (auto& it : enumerate_signed_graphs(4, 6)) out.push_back(it.graph);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) out.push_back(random_signed_graph(seed, 5, 8, 0.4));
    return out;
}

std::uint32_t mask_of(std::span<const int> edges) {
    std::uint32_t m = 0;
    for (int e : edges) m |= 1u << e;
    return m;
}

} // namespace

TEST(Components, MatchOracleCount) {
    for (const auto& g : sample()) {
        auto c = connected_components(g);
        EXPECT_EQ(c.count, oracle::components(g, oracle::all_edges(g)));
        for (const auto& e : g.edges()) EXPECT_EQ(c.of[e.u], c.of[e.v]);
    }
}

TEST(Components, IsolatedVerticesAreComponents) {
    SignedGraph g(4);
    g.add_edge(1, 2, -1);
    auto c = connected_components(g);
    EXPECT_EQ(c.count, 3);
    EXPECT_EQ(c.vertices(c.of[1]), (std::vector<int>{1, 2}));
}

TEST(Bridges, MatchOracle) {
    for (const auto& g : sample()) {
        std::vector<int> expect;
        for (int e = 0; e < g.num_edges(); ++e)
            if (oracle::bridge(g, e)) expect.push_back(e);
        EXPECT_EQ(find_bridges(g), expect) << serialize_graph(g);
    }
}

TEST(Bridges, ParallelEdgesAndLoops) {
    SignedGraph g = parse_graph("p 3 4\ne 1 2 +\ne 1 2 -\ne 2 3 +\ne 3 3 -\n");
    EXPECT_EQ(find_bridges(g), std::vector<int>{2});
}

TEST(Balance, MatchesOracleWithVerifiedCertificates) {
    int unbalanced = 0;
    for (const auto& g : sample()) {
        auto cert = is_balanced(g);
        EXPECT_EQ(cert.balanced(), oracle::balanced(g)) << serialize_graph(g);
        EXPECT_TRUE(cert.verify(g)) << serialize_graph(g);
        if (!cert.balanced()) ++unbalanced;
    }
    EXPECT_GT(unbalanced, 0);
}

TEST(Balance, NegativeLoopIsUnbalanced) {
    SignedGraph g = parse_graph("p 1 1\ne 1 1 -\n");
    auto cert = is_balanced(g);
    ASSERT_FALSE(cert.balanced());
    EXPECT_EQ(cert.unbalanced_circuit, std::vector<int>{0});
}

TEST(Balance, SwitchingInvariant) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        SignedGraph g = random_signed_graph(seed, 6, 9, 0.5);
        std::vector<int> s{0, 2, 3};
        EXPECT_EQ(is_balanced(g).balanced(), is_balanced(switch_vertices(g, s)).balanced());
    }
}

TEST(Balance, SubsetWitnessUsesHostIds) {
    SignedGraph g = parse_graph("p 3 4\ne 1 2 +\ne 2 3 +\ne 3 1 -\ne 1 2 -\n");
    std::vector<int> sub{0, 1, 2};
    auto cert = is_balanced_subset(g, sub);
    ASSERT_FALSE(cert.balanced());
    auto c = cert.unbalanced_circuit;
    std::sort(c.begin(), c.end());
    EXPECT_EQ(c, sub);
    std::vector<int> digon{0, 3};
    EXPECT_FALSE(is_balanced_subset(g, digon).balanced());
    std::vector<int> path{0, 1};
    EXPECT_TRUE(is_balanced_subset(g, path).balanced());
}

TEST(Circuits, EnumerationMatchesOracle) {
    for (const auto& g : sample()) {
        auto en = enumerate_circuits(g);
        ASSERT_FALSE(en.cap_exceeded);
        std::vector<std::uint32_t> got, expect;
        for (const auto& w : en.circuits) {
            auto edges = w.edges();
            EXPECT_TRUE(is_circuit(g, edges));
            EXPECT_EQ(w.end(g), w.start);
            got.push_back(mask_of(edges));
        }
        for (const auto& c : oracle::circuits(g)) expect.push_back(c.edges);
        std::sort(got.begin(), got.end());
        std::sort(expect.begin(), expect.end());
        EXPECT_EQ(got, expect) << serialize_graph(g);
    }
}

TEST(Circuits, CapIsReported) {
    SignedGraph g(4);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) g.add_edge(u, v, 1);
    EXPECT_TRUE(enumerate_circuits(g, 2).cap_exceeded);
    EXPECT_EQ(enumerate_circuits(g).circuits.size(), 7u);
}

TEST(Circuits, RejectsNonCircuits) {
    SignedGraph g = parse_graph("p 4 5\ne 1 2 +\ne 2 3 +\ne 3 1 +\ne 3 4 +\ne 4 4 -\n");
    EXPECT_TRUE(is_circuit(g, std::vector<int>{0, 1, 2}));
    EXPECT_TRUE(is_circuit(g, std::vector<int>{4}));
    EXPECT_FALSE(is_circuit(g, std::vector<int>{0, 1}));
    EXPECT_FALSE(is_circuit(g, std::vector<int>{0, 1, 2, 4}));
    EXPECT_FALSE(is_circuit(g, std::vector<int>{0, 0, 1, 2}));
    EXPECT_FALSE(is_circuit(g, std::vector<int>{}));
}

TEST(Walks, CircuitAndPathTraversal) {
    SignedGraph g = parse_graph("p 4 4\ne 1 2 +\ne 2 3 +\ne 3 1 +\ne 3 4 -\n");
    std::vector<int> tri{2, 0, 1};
    auto w = circuit_walk(g, tri, 1);
    EXPECT_EQ(w.edges(), (std::vector<int>{0, 2, 1}));
    EXPECT_EQ(w.end(g), 1);
    std::vector<int> path{3, 1};
    auto p = path_walk(g, path, 1);
    EXPECT_EQ(p.end(g), 3);
    EXPECT_THROW(circuit_walk(g, path, 1), PreconditionError);
}

TEST(Eulerian, DegreeParity) {
    EXPECT_TRUE(is_eulerian(parse_graph("p 2 2\ne 1 1 -\ne 2 2 +\n")));
    EXPECT_FALSE(is_eulerian(parse_graph("p 2 1\ne 1 2 +\n")));
    EXPECT_TRUE(is_eulerian(parse_graph("p 2 2\ne 1 2 +\ne 1 2 -\n")));
}

TEST(Paths, ShortestConnectingPath) {
    SignedGraph g = parse_graph("p 5 5\ne 1 2 +\ne 2 3 +\ne 3 4 +\ne 1 5 +\ne 5 4 -\n");
    std::vector<int> from{0}, to{3};
    auto p = shortest_connecting_path(g, from, to);
    ASSERT_TRUE(p);
    EXPECT_EQ(*p, (std::vector<int>{3, 4}));
    std::vector<char> allowed{1, 1, 1, 0, 0};
    p = shortest_connecting_path(g, from, to, allowed);
    ASSERT_TRUE(p);
    EXPECT_EQ(*p, (std::vector<int>{0, 1, 2}));
    allowed = {1, 0, 1, 0, 0};
    EXPECT_FALSE(shortest_connecting_path(g, from, to, allowed));
}

TEST(Helpers, VerticesAndNegatives) {
    SignedGraph g = parse_graph("p 4 3\ne 1 2 -\ne 3 3 -\ne 2 4 +\n");
    std::vector<int> all{0, 1, 2};
    EXPECT_EQ(vertices_of(g, all), (std::vector<int>{0, 1, 2, 3}));
    EXPECT_EQ(count_negative(g, all), 2);
    EXPECT_EQ(subset_degrees(g, all), (std::vector<int>{1, 2, 2, 1}));
}
