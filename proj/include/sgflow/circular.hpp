#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sgflow/error.hpp"
#include "sgflow/flow.hpp"
#include "sgflow/lp.hpp"
#include "sgflow/rational.hpp"
#include "sgflow/solve.hpp"
#include "sgflow/structure.hpp"

namespace sgflow {

struct CircularFlowNumber {
    Rational phi_c;
    FlowAssignment witness; // values in [1, phi_c - 1], all positive
    std::uint64_t orientations = 0; // complete orientations examined
    std::uint64_t lp_solves = 0;
};

inline constexpr int circular_edge_cap = 20;

namespace detail {

/// min t such that a flow with 1 <= f <= t exists under this orientation (positive loops excluded; fixed at 1).
/// Variables: g_e = f_e - 1, u = t - 1, slack s_e. Returns nullopt when infeasible.
template <class T>
std::optional<std::pair<T, std::vector<T>>> orientation_lp(const SignedGraph& g, const Orientation& o,
                                                           const std::vector<int>& lp_edges) {
    const std::size_t m = lp_edges.size();
    const std::size_t nv = static_cast<std::size_t>(g.num_vertices());
    const std::size_t cols = 2 * m + 1;
    std::vector<std::vector<T>> A;
    std::vector<T> b;
    for (std::size_t v = 0; v < nv; ++v) {
        std::vector<T> row(cols, T(0));
        long long rhs = 0;
        bool any = false;
        for (std::size_t i = 0; i < m; ++i) {
            int c = o.coefficient(g, lp_edges[i], static_cast<int>(v));
            if (c == 0) continue;
            row[i] = T(c);
            rhs -= c;
            any = true;
        }
        if (!any) continue;
        A.push_back(std::move(row));
        b.push_back(T(rhs));
    }
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<T> row(cols, T(0));
        row[i] = T(1);
        row[m] = T(-1);
        row[m + 1 + i] = T(1);
        A.push_back(std::move(row));
        b.push_back(T(0));
    }
    std::vector<T> c(cols, T(0));
    c[m] = T(1);
    auto r = solve_lp(A, b, c);
    if (r.status != LpStatus::optimal) return std::nullopt;
    std::vector<T> f(m);
    for (std::size_t i = 0; i < m; ++i) f[i] = r.x[i] + T(1);
    return std::make_pair(r.value + T(1), std::move(f));
}

inline std::optional<std::pair<Rational, std::vector<Rational>>> orientation_lp_exact(const SignedGraph& g,
                                                                                      const Orientation& o,
                                                                                      const std::vector<int>& lp_edges) {
    try {
        auto r = orientation_lp<SmallRational>(g, o, lp_edges);
        if (!r) return std::nullopt;
        std::vector<Rational> f;
        for (const auto& x : r->second) f.push_back(x.to_rational());
        return std::make_pair(r->first.to_rational(), std::move(f));
    } catch (const RationalOverflow&) {
        return orientation_lp<Rational>(g, o, lp_edges);
    }
}

} // namespace detail

/// Exact circular flow number: minimum over orientations (first LP edge fixed) of the per-orientation LP.
/// `seed` (any nowhere-zero integer or circular flow) primes the incumbent; only strict improvements replace it.
inline CircularFlowNumber circular_flow_number(const SignedGraph& g, std::optional<FlowAssignment> seed = std::nullopt) {
    if (!is_flow_admissible(g).admissible) throw PreconditionError("graph is not flow-admissible");
    std::vector<int> lp_edges;
    for (int e : dfs_edge_order(g))
        if (!(g.edge(e).is_loop() && g.sign(e) > 0)) lp_edges.push_back(e);
    if (static_cast<int>(lp_edges.size()) > circular_edge_cap)
        throw ResourceCapError("circular flow number limited to " + std::to_string(circular_edge_cap) + " edges");

    CircularFlowNumber out;
    if (!seed) {
        auto r = integer_flow_number(g);
        if (r.witness) seed = to_rational_flow(*r.witness);
    }
    std::optional<Rational> best_t;
    if (seed) {
        auto folded = fold_positive(*seed);
        Rational t = 1;
        for (const auto& v : folded.values) t = std::max(t, v);
        if (!check_flow(g, folded, FlowKind::circular(t + 1))) throw PreconditionError("seed is not a circular flow");
        best_t = t;
        out.witness = folded;
    }

    // positive loops: value 1, direction irrelevant
    Orientation o = Orientation::canonical(g);
    const int n = g.num_vertices();
    const int m = static_cast<int>(lp_edges.size());
    std::vector<int> last(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < m; ++i) {
        const Edge& ed = g.edge(lp_edges[static_cast<std::size_t>(i)]);
        last[static_cast<std::size_t>(ed.u)] = i;
        last[static_cast<std::size_t>(ed.v)] = i;
    }
    // Per-vertex out/in coefficient weights of assigned edges.
    std::vector<int> w_out(static_cast<std::size_t>(n), 0), w_in(static_cast<std::size_t>(n), 0);

    auto vertex_ok = [&](int v) {
        int a = w_out[static_cast<std::size_t>(v)], b = w_in[static_cast<std::size_t>(v)];
        if ((a == 0) != (b == 0)) return false;
        if (a == 0) return true;
        if (!best_t) return true;
        // closure needs t >= max(a/b, b/a); only strictly better orientations are of interest
        Rational ratio = a > b ? Rational(a, b) : Rational(b, a);
        return ratio < *best_t;
    };

    std::function<void(int)> go = [&](int i) {
        if (i == m) {
            ++out.orientations;
            ++out.lp_solves;
            auto r = detail::orientation_lp_exact(g, o, lp_edges);
            if (!r) return;
            if (best_t && !(r->first < *best_t)) return;
            best_t = r->first;
            FlowAssignment f{o, std::vector<Rational>(static_cast<std::size_t>(g.num_edges()), Rational(1))};
            for (int j = 0; j < m; ++j) f[lp_edges[static_cast<std::size_t>(j)]] = r->second[static_cast<std::size_t>(j)];
            out.witness = std::move(f);
            return;
        }
        int e = lp_edges[static_cast<std::size_t>(i)];
        const Edge& ed = g.edge(e);
        for (int flip = 0; flip < (i == 0 ? 1 : 2); ++flip) {
            if (flip) o.reverse_edge(e);
            auto add = [&](int sgn) {
                for (int end = 0; end < 2; ++end) {
                    int v = end ? ed.v : ed.u;
                    int d = o[2 * e + end];
                    (d > 0 ? w_out : w_in)[static_cast<std::size_t>(v)] += sgn;
                }
            };
            add(1);
            bool ok = vertex_ok(ed.u) || last[static_cast<std::size_t>(ed.u)] != i;
            ok = ok && (vertex_ok(ed.v) || last[static_cast<std::size_t>(ed.v)] != i);
            if (ok) go(i + 1);
            add(-1);
            if (flip) o.reverse_edge(e);
        }
    };
    go(0);
    if (!best_t) {
        if (m == 0) {
            best_t = Rational(1);
            out.witness = FlowAssignment{o, std::vector<Rational>(static_cast<std::size_t>(g.num_edges()), Rational(1))};
        } else {
            throw InvariantViolation("flow-admissible graph has no feasible orientation");
        }
    }
    out.phi_c = *best_t + 1;
    if (!check_flow(g, out.witness, FlowKind::circular(out.phi_c)))
        throw InvariantViolation("circular witness fails verification");
    return out;
}

} // namespace sgflow
