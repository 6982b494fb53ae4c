#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "sgflow/conversion.hpp"
#include "sgflow/error.hpp"
#include "sgflow/flow.hpp"
#include "sgflow/primitives.hpp"
#include "sgflow/solve.hpp"
#include "sgflow/structure.hpp"

namespace sgflow {

// ---------------------------------------------------------------------------
// Sum of 2-flows

struct DecompositionOptions {
    bool check_barbells = true;
};

namespace detail {

inline IntegerFlow restrict_flow(const IntegerFlow& f, const Subgraph& sub) {
    std::vector<std::int8_t> dir;
    IntegerFlow out;
    for (int e : sub.edge_map) {
        dir.push_back(static_cast<std::int8_t>(f.orientation[2 * e]));
        dir.push_back(static_cast<std::int8_t>(f.orientation[2 * e + 1]));
        out.values.push_back(f[e]);
    }
    out.orientation = Orientation(std::move(dir));
    return out;
}

/// Lifts a subgraph flow (re-expressed under the host orientation) back to the host, zero elsewhere.
inline std::vector<long long> lift_values(const SignedGraph& g, const Orientation& host, const Subgraph& sub,
                                          const IntegerFlow& part) {
    auto target = restrict_flow(IntegerFlow{host, std::vector<long long>(static_cast<std::size_t>(g.num_edges()), 0)}, sub);
    auto aligned = reorient(sub.graph, part, target.orientation);
    std::vector<long long> out(static_cast<std::size_t>(g.num_edges()), 0);
    for (std::size_t i = 0; i < sub.edge_map.size(); ++i) out[static_cast<std::size_t>(sub.edge_map[i])] = aligned.values[i];
    return out;
}

inline void decompose_rec(const SignedGraph& g, const IntegerFlow& f, long long k, std::vector<IntegerFlow>& out) {
    if (k == 2) {
        out.push_back(f);
        return;
    }
    if (k % 2 == 1) {
        std::vector<int> q;
        for (int e = 0; e < g.num_edges(); ++e)
            if (f[e] % 2 != 0) q.push_back(e);
        auto sub = edge_subgraph(g, q);
        auto comps = connected_components(sub.graph);
        std::vector<int> neg(static_cast<std::size_t>(comps.count), 0);
        for (std::size_t i = 0; i < q.size(); ++i)
            if (sub.graph.sign(static_cast<int>(i)) < 0) ++neg[static_cast<std::size_t>(comps.of[static_cast<std::size_t>(sub.graph.edge(static_cast<int>(i)).u)])];
        for (int c : neg)
            if (c % 2 != 0) throw InvariantViolation("odd-value subgraph has a component with an odd number of negative edges");
        auto two = find_2_flow_on_even_graph(sub.graph);
        if (!two) throw InvariantViolation("odd-value subgraph has no 2-flow");
        auto gv = lift_values(g, f.orientation, sub, *two);
        IntegerFlow plus{f.orientation, {}}, minus{f.orientation, {}};
        for (int e = 0; e < g.num_edges(); ++e) {
            plus.values.push_back((f[e] + gv[static_cast<std::size_t>(e)]) / 2);
            minus.values.push_back((f[e] - gv[static_cast<std::size_t>(e)]) / 2);
        }
        long long kk = (k + 1) / 2;
        decompose_rec(g, plus, kk, out);
        decompose_rec(g, minus, kk, out);
        return;
    }
    // k even: convert f modulo k-1 on the edges where it is nonzero mod k-1
    const long long m = k - 1;
    std::vector<int> h;
    for (int e = 0; e < g.num_edges(); ++e)
        if (f[e] % m != 0) h.push_back(e);
    std::vector<long long> gv(static_cast<std::size_t>(g.num_edges()), 0);
    if (!h.empty()) {
        auto sub = edge_subgraph(g, h);
        auto part = restrict_flow(f, sub);
        ConversionOptions opt;
        opt.allow_barbells = true; // subgraphs of a barbell-free graph are barbell-free
        auto conv = modflow_to_intflow(sub.graph, part, m, opt);
        for (std::size_t i = 0; i < h.size(); ++i) gv[static_cast<std::size_t>(h[i])] = conv.flow.values[i];
    }
    IntegerFlow f1{f.orientation, {}}, rest{f.orientation, {}};
    for (int e = 0; e < g.num_edges(); ++e) {
        long long d = f[e] - gv[static_cast<std::size_t>(e)];
        if (d != 0 && d != m) throw InvariantViolation("f - g is not in {0, k-1}");
        f1.values.push_back(d / m);
        rest.values.push_back(f[e] - d / m);
    }
    out.push_back(f1);
    decompose_rec(g, rest, k - 1, out);
}

} // namespace detail

/// Writes a non-negative integer k-flow as a sum of exactly k-1 non-negative 2-flows under the same orientation.
inline std::vector<IntegerFlow> decompose_into_2_flows(const SignedGraph& g, const IntegerFlow& fa, long long k,
                                                       const DecompositionOptions& opt = {}) {
    if (k < 2) throw PreconditionError("k must be at least 2");
    if (fa.values.size() != static_cast<std::size_t>(g.num_edges()) || !fa.orientation.consistent_with(g))
        throw PreconditionError("flow does not match the graph");
    for (long long v : fa.values)
        if (v < 0 || v > k - 1) throw PreconditionError("values must lie in [0, k-1] (fold signs first)");
    for (long long b : boundary(g, fa))
        if (b != 0) throw PreconditionError("input is not a flow");
    if (opt.check_barbells && has_long_barbell(g)) throw PreconditionError("graph contains a long barbell");
    std::vector<IntegerFlow> out;
    detail::decompose_rec(g, fa, k, out);
    if (static_cast<long long>(out.size()) != k - 1) throw InvariantViolation("wrong number of 2-flows");
    for (int e = 0; e < g.num_edges(); ++e) {
        long long sum = 0;
        for (const auto& p : out) {
            if (p[e] != 0 && p[e] != 1) throw InvariantViolation("2-flow value outside {0, 1}");
            sum += p[e];
        }
        if (sum != fa[e]) throw InvariantViolation("2-flows do not sum to the input");
    }
    for (const auto& p : out)
        for (long long b : boundary(g, p))
            if (b != 0) throw InvariantViolation("decomposition member is not a flow");
    return out;
}

// ---------------------------------------------------------------------------
// Eulerian decomposition

struct EulerianMember {
    CircuitKind kind = CircuitKind::balanced_circuit;
    std::vector<int> edges; // sorted
};

struct EulerianDecomposition {
    std::vector<EulerianMember> members;
    int iterations = 0;

    /// Members partition E(g) and each classifies as a balanced circuit or short barbell.
    bool verify(const SignedGraph& g) const {
        std::vector<int> seen(static_cast<std::size_t>(g.num_edges()), 0);
        for (const auto& m : members) {
            auto c = classify_signed_circuit(g, m.edges);
            if (!c || c->kind != m.kind || m.kind == CircuitKind::long_barbell) return false;
            for (int e : m.edges) ++seen[static_cast<std::size_t>(e)];
        }
        return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
    }
};

/// Splits an even edge set into circuits: walk from the smallest unused half-edge, taking the smallest
/// unused half-edge at each vertex, and cut off a circuit whenever the walk revisits a vertex.
inline std::vector<std::vector<int>> split_into_circuits(const SignedGraph& g, std::span<const int> edges) {
    std::vector<char> avail(static_cast<std::size_t>(g.num_edges()), 0);
    for (int e : edges) avail[static_cast<std::size_t>(e)] = 1;
    std::vector<std::vector<int>> out;
    std::vector<int> pos(static_cast<std::size_t>(g.num_vertices()), -1);
    auto next_half = [&](int v) {
        for (int h : g.half_edges_at(v))
            if (avail[static_cast<std::size_t>(edge_of(h))]) return h;
        return -1;
    };
    for (;;) {
        int start_half = -1;
        for (int h = 0; h < g.num_half_edges() && start_half < 0; ++h)
            if (avail[static_cast<std::size_t>(edge_of(h))]) start_half = h;
        if (start_half < 0) break;
        std::vector<int> verts{g.vertex_of(start_half)}, halves;
        pos[static_cast<std::size_t>(verts[0])] = 0;
        int h = start_half;
        while (h >= 0) {
            avail[static_cast<std::size_t>(edge_of(h))] = 0;
            halves.push_back(h);
            int w = g.vertex_of(other_half(h));
            int p = pos[static_cast<std::size_t>(w)];
            if (p >= 0) {
                std::vector<int> circ;
                for (std::size_t i = static_cast<std::size_t>(p); i < halves.size(); ++i) circ.push_back(edge_of(halves[i]));
                out.push_back(std::move(circ));
                for (std::size_t i = static_cast<std::size_t>(p) + 1; i < verts.size(); ++i)
                    pos[static_cast<std::size_t>(verts[i])] = -1;
                verts.resize(static_cast<std::size_t>(p) + 1);
                halves.resize(static_cast<std::size_t>(p));
            } else {
                pos[static_cast<std::size_t>(w)] = static_cast<int>(verts.size());
                verts.push_back(w);
            }
            h = next_half(verts.back());
            if (h < 0 && !halves.empty()) throw PreconditionError("edge set is not even (odd degree vertex)");
        }
        for (int v : verts) pos[static_cast<std::size_t>(v)] = -1;
    }
    return out;
}

struct EulerianOptions {
    bool check_barbells = true;
};

/// Partition into balanced circuits and short barbells (flow-admissible, eulerian, even negatives per component,
/// no long barbell).
inline EulerianDecomposition eulerian_decompose(const SignedGraph& g, const EulerianOptions& opt = {}) {
    if (!is_eulerian(g)) throw PreconditionError("graph is not eulerian");
    if (g.num_negative() % 2 != 0) throw PreconditionError("odd number of negative edges");
    {
        auto comps = connected_components(g);
        std::vector<int> neg(static_cast<std::size_t>(comps.count), 0);
        for (int e : g.negative_edges()) ++neg[static_cast<std::size_t>(comps.of[static_cast<std::size_t>(g.edge(e).u)])];
        for (int c : neg)
            if (c % 2 != 0) throw PreconditionError("a component has an odd number of negative edges");
    }
    if (!is_flow_admissible(g).admissible) throw PreconditionError("graph is not flow-admissible");
    if (opt.check_barbells && has_long_barbell(g)) throw PreconditionError("graph contains a long barbell");

    EulerianDecomposition out;
    std::vector<int> all(static_cast<std::size_t>(g.num_edges()));
    for (int e = 0; e < g.num_edges(); ++e) all[static_cast<std::size_t>(e)] = e;

    std::vector<std::vector<int>> pending; // unbalanced circuits, traversal order
    auto absorb = [&](std::vector<std::vector<int>> circuits) {
        for (auto& c : circuits) {
            if (count_negative(g, c) % 2 == 0) {
                std::sort(c.begin(), c.end());
                out.members.push_back({CircuitKind::balanced_circuit, std::move(c)});
            } else {
                pending.push_back(std::move(c));
            }
        }
    };
    absorb(split_into_circuits(g, all));

    const long long cap = std::max<long long>(1, static_cast<long long>(g.num_edges()) * g.num_edges());
    while (!pending.empty()) {
        if (++out.iterations > cap) throw InvariantViolation("eulerian decomposition exceeded its iteration cap");
        if (pending.size() == 1) throw InvariantViolation("a single unbalanced circuit remains");
        std::optional<std::pair<std::size_t, std::size_t>> two, one;
        for (std::size_t i = 0; i < pending.size() && !two; ++i)
            for (std::size_t j = i + 1; j < pending.size() && !two; ++j) {
                auto vi = vertices_of(g, pending[i]), vj = vertices_of(g, pending[j]);
                std::vector<int> common;
                std::set_intersection(vi.begin(), vi.end(), vj.begin(), vj.end(), std::back_inserter(common));
                if (common.size() >= 2) two = {i, j};
                else if (common.size() == 1 && !one) one = {i, j};
            }
        if (!two && !one) throw InvariantViolation("two vertex-disjoint unbalanced circuits remain");
        if (!two) {
            auto [i, j] = *one;
            std::vector<int> es = pending[i];
            es.insert(es.end(), pending[j].begin(), pending[j].end());
            std::sort(es.begin(), es.end());
            out.members.push_back({CircuitKind::short_barbell, std::move(es)});
            pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(j));
            pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(i));
            continue;
        }
        auto [i, j] = *two;
        const auto c1 = pending[i], c2 = pending[j];
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(j));
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(i));
        auto v2 = vertices_of(g, c2);
        auto on_c2 = [&](int v) { return std::binary_search(v2.begin(), v2.end(), v); };
        // P1: segment of C1 between consecutive common vertices x1, x2
        int x1 = -1;
        for (int v : vertices_of(g, c1))
            if (on_c2(v)) {
                x1 = v;
                break;
            }
        Walk w1 = circuit_walk(g, c1, x1);
        std::vector<int> p1;
        int x2 = -1;
        for (int h : w1.halves) {
            p1.push_back(edge_of(h));
            int v = g.vertex_of(other_half(h));
            if (on_c2(v)) {
                x2 = v;
                break;
            }
        }
        if (x2 == x1) throw InvariantViolation("circuits share fewer than two vertices");
        // C2 split at x1, x2 into P2 (first arc from x1) and P3
        Walk w2 = circuit_walk(g, c2, x1);
        std::vector<int> arc_a, arc_b;
        bool past = false;
        for (int h : w2.halves) {
            (past ? arc_b : arc_a).push_back(edge_of(h));
            if (g.vertex_of(other_half(h)) == x2) past = true;
        }
        int parity = count_negative(g, p1) % 2;
        auto& p2 = count_negative(g, arc_a) % 2 == parity ? arc_a : arc_b;
        auto& p3 = &p2 == &arc_a ? arc_b : arc_a;
        std::vector<int> bal = p1;
        bal.insert(bal.end(), p2.begin(), p2.end());
        std::sort(bal.begin(), bal.end());
        if (count_negative(g, bal) % 2 != 0 || !is_circuit(g, bal)) throw InvariantViolation("extracted circuit is not balanced");
        out.members.push_back({CircuitKind::balanced_circuit, bal});
        std::vector<int> left;
        std::vector<int> s1 = c1, sp1 = p1;
        std::sort(s1.begin(), s1.end());
        std::sort(sp1.begin(), sp1.end());
        std::set_difference(s1.begin(), s1.end(), sp1.begin(), sp1.end(), std::back_inserter(left));
        left.insert(left.end(), p3.begin(), p3.end());
        std::sort(left.begin(), left.end());
        absorb(split_into_circuits(g, left));
    }
    if (!out.verify(g)) throw InvariantViolation("eulerian decomposition failed verification");
    return out;
}

} // namespace sgflow
