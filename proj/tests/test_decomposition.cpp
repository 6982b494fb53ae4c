#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "sgflow.hpp"

using namespace sgflow;

namespace {

// Every non-negative integer k-flow with full support under the canonical orientation, up to `limit`.
std::vector<IntegerFlow> positive_k_flows(const SignedGraph& g, long long k, std::size_t limit) {
    std::vector<IntegerFlow> out;
    const auto m = static_cast<std::size_t>(g.num_edges());
    Orientation o = Orientation::canonical(g);
    std::vector<long long> vals(m, -(k - 1));
    for (;;) {
        bool ok = std::none_of(vals.begin(), vals.end(), [](long long v) { return v == 0; });
        if (ok)
            for (long long b : boundary<long long>(g, o, vals))
                if (b != 0) ok = false;
        if (ok) out.push_back(fold_positive(IntegerFlow{o, vals}));
        if (out.size() >= limit) return out;
        std::size_t e = 0;
        while (e < m && ++vals[e] == k) vals[e++] = -(k - 1);
        if (e == m) return out;
    }
}

std::vector<SignedGraph> barbell_free_sample() {
    std::vector<SignedGraph> out;
    for (auto& it : enumerate_signed_graphs(4, 6))
        if (!has_long_barbell(it.graph)) out.push_back(it.graph);
    return out;
}

void expect_decomposes(const SignedGraph& g, const IntegerFlow& f, long long k) {
    auto parts = decompose_into_2_flows(g, f, k);
    ASSERT_EQ(static_cast<long long>(parts.size()), k - 1);
    std::vector<long long> sum(static_cast<std::size_t>(g.num_edges()), 0);
    for (const auto& p : parts) {
        EXPECT_EQ(p.orientation, f.orientation);
        for (int e = 0; e < g.num_edges(); ++e) {
            EXPECT_TRUE(p[e] == 0 || p[e] == 1);
            sum[static_cast<std::size_t>(e)] += p[e];
        }
        for (long long b : boundary(g, p)) EXPECT_EQ(b, 0);
    }
    EXPECT_EQ(sum, f.values);
}

} // namespace

TEST(TwoFlowSum, EverySmallFlow) {
    int n = 0;
    for (const auto& g : barbell_free_sample())
        for (long long k : {2, 3, 4, 5})
            for (const auto& f : positive_k_flows(g, k, 30)) {
                expect_decomposes(g, f, k);
                ++n;
            }
    EXPECT_GT(n, 300);
}

TEST(TwoFlowSum, SlackBoundUsesZeroParts) {
    // a 3-flow viewed as a 6-flow: the spare parts are all zero or share the load
    SignedGraph g = parse_graph("p 3 3\ne 1 2 +\ne 2 3 +\ne 3 1 +\n");
    IntegerFlow f{Orientation::canonical(g), {2, 2, 2}};
    expect_decomposes(g, f, 6);
}

TEST(TwoFlowSum, SignedPetersen) {
    SignedGraph g = signed_petersen();
    auto f = find_nz_k_flow(g, 6);
    ASSERT_TRUE(f.found());
    expect_decomposes(g, fold_positive(*f), 6);
}

TEST(TwoFlowSum, Preconditions) {
    SignedGraph g = parse_graph("p 3 3\ne 1 2 +\ne 2 3 +\ne 3 1 +\n");
    IntegerFlow neg{Orientation::canonical(g), {-1, -1, -1}};
    EXPECT_THROW(decompose_into_2_flows(g, neg, 3), PreconditionError);
    IntegerFlow big{Orientation::canonical(g), {3, 3, 3}};
    EXPECT_THROW(decompose_into_2_flows(g, big, 3), PreconditionError);
    IntegerFlow nonflow{Orientation::canonical(g), {1, 2, 1}};
    EXPECT_THROW(decompose_into_2_flows(g, nonflow, 3), PreconditionError);
    SignedGraph barbell = parse_graph("p 2 3\ne 1 1 -\ne 1 2 +\ne 2 2 -\n");
    IntegerFlow bf{Orientation::from_flip_set(barbell, std::vector<int>{1, 2}), {1, 2, 1}};
    EXPECT_THROW(decompose_into_2_flows(barbell, bf, 3), PreconditionError);
}

TEST(Eulerian, PartitionMatchesOracleKinds) {
    int decomposed = 0;
    for (auto& it : enumerate_signed_graphs(4, 7)) {
        const auto& g = it.graph;
        if (!is_eulerian(g) || has_long_barbell(g) || !is_flow_admissible(g).admissible) continue;
        auto comps = connected_components(g);
        std::vector<int> neg(static_cast<std::size_t>(comps.count), 0);
        for (int e : g.negative_edges()) ++neg[static_cast<std::size_t>(comps.of[g.edge(e).u])];
        if (std::any_of(neg.begin(), neg.end(), [](int c) { return c % 2; })) continue;
        auto d = eulerian_decompose(g);
        ASSERT_TRUE(d.verify(g)) << serialize_graph(g);
        auto sc = oracle::signed_circuits(g);
        std::uint32_t covered = 0;
        for (const auto& m : d.members) {
            std::uint32_t mask = 0;
            for (int e : m.edges) mask |= 1u << e;
            EXPECT_TRUE(std::find(sc.begin(), sc.end(), mask) != sc.end());
            EXPECT_NE(m.kind, CircuitKind::long_barbell);
            EXPECT_EQ(covered & mask, 0u);
            covered |= mask;
        }
        EXPECT_EQ(covered, oracle::all_edges(g));
        ++decomposed;
    }
    EXPECT_GT(decomposed, 20);
}

TEST(Eulerian, Preconditions) {
    EXPECT_THROW(eulerian_decompose(parse_graph("p 2 1\ne 1 2 +\n")), PreconditionError);
    EXPECT_THROW(eulerian_decompose(parse_graph("p 1 1\ne 1 1 -\n")), PreconditionError);
    // even total but odd per component
    EXPECT_THROW(eulerian_decompose(parse_graph("p 2 2\ne 1 1 -\ne 2 2 -\n")), PreconditionError);
}

TEST(Eulerian, TwoNegativeLoopsAtOneVertex) {
    auto g = parse_graph("p 1 2\ne 1 1 -\ne 1 1 -\n");
    auto d = eulerian_decompose(g);
    ASSERT_EQ(d.members.size(), 1u);
    EXPECT_EQ(d.members[0].kind, CircuitKind::short_barbell);
}

TEST(SplitIntoCircuits, PartitionsEvenSets) {
    SignedGraph g = parse_graph("p 3 6\ne 1 2 +\ne 2 3 +\ne 3 1 +\ne 1 2 -\ne 2 1 -\ne 3 3 +\n");
    std::vector<int> all{0, 1, 2, 3, 4, 5};
    auto parts = split_into_circuits(g, all);
    std::vector<int> seen;
    for (const auto& c : parts) {
        EXPECT_TRUE(is_circuit(g, c));
        seen.insert(seen.end(), c.begin(), c.end());
    }
    std::sort(seen.begin(), seen.end());
    EXPECT_EQ(seen, all);
}
