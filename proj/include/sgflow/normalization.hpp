#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "sgflow/error.hpp"
#include "sgflow/flow.hpp"
#include "sgflow/primitives.hpp"
#include "sgflow/rational.hpp"
#include "sgflow/solve.hpp"
#include "sgflow/structure.hpp"

namespace sgflow {

/// First signed circuit inside the edge subset: a balanced circuit if one exists, otherwise the first pair of
/// unbalanced circuits (in enumeration order) that meet in one vertex or are joined by a path inside the subset.
inline std::optional<SignedCircuitWitness> find_signed_circuit(const SignedGraph& g, std::span<const int> edges,
                                                               std::uint64_t cap = resource_cap(1'000'000)) {
    auto sub = edge_subgraph(g, edges);
    auto en = enumerate_circuits(sub.graph, cap);
    if (en.cap_exceeded) throw ResourceCapError("circuit enumeration exceeded its cap");
    auto host = [&](std::vector<int> es) {
        for (int& e : es) e = sub.edge_map[static_cast<std::size_t>(e)];
        return es;
    };
    std::vector<std::vector<int>> unbalanced;
    for (const Walk& w : en.circuits) {
        auto es = w.edges();
        if (count_negative(sub.graph, es) % 2 == 0) return SignedCircuitWitness{CircuitKind::balanced_circuit, {host(es)}, {}};
        unbalanced.push_back(std::move(es));
    }
    for (std::size_t i = 0; i < unbalanced.size(); ++i) {
        auto vi = vertices_of(sub.graph, unbalanced[i]);
        for (std::size_t j = i + 1; j < unbalanced.size(); ++j) {
            auto vj = vertices_of(sub.graph, unbalanced[j]);
            std::vector<int> common;
            std::set_intersection(vi.begin(), vi.end(), vj.begin(), vj.end(), std::back_inserter(common));
            if (common.size() == 1)
                return SignedCircuitWitness{CircuitKind::short_barbell, {host(unbalanced[i]), host(unbalanced[j])}, {}};
            if (!common.empty()) continue; // would contain a balanced circuit, already excluded
            if (auto path = shortest_connecting_path(sub.graph, vi, vj))
                return SignedCircuitWitness{CircuitKind::long_barbell, {host(unbalanced[i]), host(unbalanced[j])}, host(*path)};
        }
    }
    return std::nullopt;
}

/// Circular flow with values in [1, p/q] being pushed onto the 1/q grid.
struct NormalizationState {
    FlowAssignment values;
    long long p = 1, q = 1;
    std::vector<int> off_grid;              // F: edges with q * value non-integral
    std::vector<std::size_t> off_grid_trace; // |F| before the first push and after every push
    int pushes = 0;

    bool normalized() const { return off_grid.empty(); }
};

inline std::vector<int> off_grid_edges(const FlowAssignment& f, long long q) {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(f.values.size()); ++e)
        if (!is_integer(f[e] * q)) out.push_back(e);
    return out;
}

/// F is empty, or the subgraph induced by F is a disjoint union of unbalanced circuits with 2q*value odd on F.
inline bool terminal_structure_ok(const SignedGraph& g, const NormalizationState& s) {
    if (s.off_grid.empty()) return true;
    for (int e : s.off_grid) {
        Rational t = s.values[e] * (2 * s.q);
        if (!is_integer(t) || numerator_of(t) % 2 == 0) return false;
    }
    auto sub = edge_subgraph(g, s.off_grid);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (sub.graph.degree(v) != 0 && sub.graph.degree(v) != 2) return false;
    auto comps = connected_components(sub.graph);
    std::vector<std::vector<int>> parts(static_cast<std::size_t>(comps.count));
    for (int e = 0; e < sub.graph.num_edges(); ++e)
        parts[static_cast<std::size_t>(comps.of[static_cast<std::size_t>(sub.graph.edge(e).u)])].push_back(e);
    for (const auto& part : parts) {
        if (part.empty()) continue;
        if (count_negative(sub.graph, part) % 2 == 0) return false;
    }
    return true;
}

struct NormalizationOptions {
    /// Abort when the terminal off-grid set is nonempty inside a component without long barbells.
    bool enforce_barbell_free_grid = true;
};

/// Pushes a circular (p/q + 1)-flow along signed circuits inside F until none remains. Values are folded
/// positive first.
inline NormalizationState normalize_circular_flow(const SignedGraph& g, const FlowAssignment& fa, long long p,
                                                  long long q, const NormalizationOptions& opt = {}) {
    if (p < 1 || q < 1 || p < q) throw PreconditionError("need integers p >= q >= 1");
    const Rational r = Rational(p, q) + 1;
    NormalizationState s;
    s.p = p;
    s.q = q;
    s.values = fold_positive(fa);
    if (auto v = check_flow(g, s.values, FlowKind::circular(r)); !v)
        throw PreconditionError("input is not a circular flow: " + v.violation);
    s.off_grid = off_grid_edges(s.values, q);
    s.off_grid_trace.push_back(s.off_grid.size());

    while (!s.off_grid.empty()) {
        auto w = find_signed_circuit(g, s.off_grid);
        if (!w) break;
        auto phi1 = reorient(g, signed_circuit_flow(g, *w), s.values.orientation);
        auto step = [&](int dir) {
            std::optional<Rational> eps;
            for (int e = 0; e < g.num_edges(); ++e) {
                long long d = dir * phi1[e];
                if (d == 0) continue;
                Rational x = s.values[e] * q;
                Rational dist = d > 0 ? (Rational(ceil_of(x)) - x) / q : (x - Rational(floor_of(x))) / q;
                Rational cand = dist / (d > 0 ? d : -d);
                if (!eps || cand < *eps) eps = cand;
            }
            return *eps;
        };
        Rational up = step(1), down = step(-1);
        int dir = down < up ? -1 : 1;
        Rational eps = dir > 0 ? up : down;
        for (int e = 0; e < g.num_edges(); ++e)
            if (phi1[e] != 0) s.values[e] += eps * (dir * phi1[e]);
        ++s.pushes;
        auto next = off_grid_edges(s.values, q);
        if (next.size() >= s.off_grid.size()) throw InvariantViolation("push did not shrink the off-grid set");
        if (auto v = check_flow(g, s.values, FlowKind::circular(r)); !v)
            throw InvariantViolation("push broke the circular flow: " + v.violation);
        s.off_grid = std::move(next);
        s.off_grid_trace.push_back(s.off_grid.size());
    }

    if (!terminal_structure_ok(g, s)) throw InvariantViolation("terminal off-grid set has the wrong structure");
    if (!s.off_grid.empty() && opt.enforce_barbell_free_grid) {
        auto comps = connected_components(g);
        std::vector<char> touched(static_cast<std::size_t>(comps.count), 0);
        for (int e : s.off_grid) touched[static_cast<std::size_t>(comps.of[static_cast<std::size_t>(g.edge(e).u)])] = 1;
        for (int c = 0; c < comps.count; ++c) {
            if (!touched[static_cast<std::size_t>(c)]) continue;
            auto part = vertex_restricted(g, [&](int v) { return comps.of[static_cast<std::size_t>(v)] == c; });
            if (!has_long_barbell(part.graph))
                throw InvariantViolation("off-grid edges remain in a component without long barbells");
        }
    }
    return s;
}

} // namespace sgflow
