#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <vector>

#include "sgflow/error.hpp"
#include "sgflow/flow.hpp"
#include "sgflow/graph.hpp"
#include "sgflow/primitives.hpp"
#include "sgflow/structure.hpp"

namespace sgflow {

inline constexpr std::uint64_t default_search_cap = 1'000'000'000ull;

/// Edges in depth-first discovery order (vertex 0 first, then remaining vertices by id).
inline std::vector<int> dfs_edge_order(const SignedGraph& g) {
    std::vector<int> order;
    std::vector<char> seen_v(static_cast<std::size_t>(g.num_vertices()), 0), seen_e(static_cast<std::size_t>(g.num_edges()), 0);
    std::vector<int> stack;
    for (int s = 0; s < g.num_vertices(); ++s) {
        if (seen_v[static_cast<std::size_t>(s)]) continue;
        seen_v[static_cast<std::size_t>(s)] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int h : g.half_edges_at(v)) {
                int e = edge_of(h);
                if (!seen_e[static_cast<std::size_t>(e)]) {
                    seen_e[static_cast<std::size_t>(e)] = 1;
                    order.push_back(e);
                }
            }
            const auto& hs = g.half_edges_at(v);
            for (auto it = hs.rbegin(); it != hs.rend(); ++it) {
                int w = g.vertex_of(other_half(*it));
                if (!seen_v[static_cast<std::size_t>(w)]) {
                    seen_v[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    return order;
}

namespace detail {

/// Backtracking over nowhere-zero values under the canonical orientation.
/// Integer mode: values +-1..+-(k-1), exact conservation. Modulo mode: residues 1..k-1, conservation mod k.
class FlowBacktracker {
public:
    FlowBacktracker(const SignedGraph& g, long long k, bool modulo, std::uint64_t cap)
        : g_(g), k_(k), modulo_(modulo), cap_(cap), orient_(Orientation::canonical(g)) {
        order_ = dfs_edge_order(g);
        const int n = g.num_vertices();
        partial_.assign(static_cast<std::size_t>(n), 0);
        slack_.assign(static_cast<std::size_t>(n), 0);
        last_.assign(static_cast<std::size_t>(n), -1);
        for (int i = 0; i < static_cast<int>(order_.size()); ++i) {
            const Edge& ed = g.edge(order_[static_cast<std::size_t>(i)]);
            if (ed.is_loop() && ed.sign > 0) continue; // contributes nothing to any boundary
            last_[static_cast<std::size_t>(ed.u)] = i;
            last_[static_cast<std::size_t>(ed.v)] = i;
        }
        for (int e = 0; e < g.num_edges(); ++e) {
            const Edge& ed = g.edge(e);
            slack_[static_cast<std::size_t>(ed.u)] += std::abs(coef(e, ed.u)) * (k - 1);
            if (!ed.is_loop()) slack_[static_cast<std::size_t>(ed.v)] += std::abs(coef(e, ed.v)) * (k - 1);
        }
        values_.assign(static_cast<std::size_t>(g.num_edges()), 0);
        for (long long a = 1; a < k; ++a) {
            candidates_.push_back(a);
            if (!modulo) candidates_.push_back(-a);
        }
    }

    Search<IntegerFlow> run() {
        Search<IntegerFlow> out;
        bool ok = false;
        try {
            ok = go(0);
        } catch (const CapHit&) {
            out.status = SearchStatus::cap_exceeded;
            out.nodes = nodes_;
            return out;
        }
        out.nodes = nodes_;
        if (ok) {
            out.status = SearchStatus::found;
            out.value = IntegerFlow{orient_, values_};
        }
        return out;
    }

private:
    struct CapHit {};

    int coef(int e, int v) const { return orient_.coefficient(g_, e, v); }

    bool closed_ok(long long b) const { return modulo_ ? b % k_ == 0 : b == 0; }

    bool go(int i) {
        if (i == static_cast<int>(order_.size())) return true;
        int e = order_[static_cast<std::size_t>(i)];
        const Edge& ed = g_.edge(e);
        int cu = coef(e, ed.u), cv = ed.is_loop() ? 0 : coef(e, ed.v);
        if (ed.is_loop() && cu == 0) { // positive loop: no constraint anywhere
            values_[static_cast<std::size_t>(e)] = 1;
            ++nodes_;
            return go(i + 1);
        }
        std::optional<long long> forced;
        for (int v : {ed.u, ed.v}) {
            if (last_[static_cast<std::size_t>(v)] != i) continue;
            int c = v == ed.u ? cu : cv;
            if (c == 0) continue;
            long long b = partial_[static_cast<std::size_t>(v)];
            if (modulo_) {
                if (c == 1 || c == -1) {
                    long long x = ((-b * c) % k_ + k_) % k_;
                    if (x == 0) return false;
                    forced = x;
                }
            } else {
                if (b % c != 0) return false;
                long long x = -b / c;
                if (x == 0 || x >= k_ || x <= -k_) return false;
                forced = x;
            }
            break;
        }
        if (forced) return try_value(i, e, ed, cu, cv, *forced);
        for (long long x : candidates_)
            if (try_value(i, e, ed, cu, cv, x)) return true;
        return false;
    }

    bool try_value(int i, int e, const Edge& ed, int cu, int cv, long long x) {
        if (++nodes_ > cap_) throw CapHit{};
        auto apply = [&](long long sign) {
            partial_[static_cast<std::size_t>(ed.u)] += sign * cu * x;
            slack_[static_cast<std::size_t>(ed.u)] -= sign * std::abs(cu) * (k_ - 1);
            if (!ed.is_loop()) {
                partial_[static_cast<std::size_t>(ed.v)] += sign * cv * x;
                slack_[static_cast<std::size_t>(ed.v)] -= sign * std::abs(cv) * (k_ - 1);
            }
        };
        apply(1);
        bool ok = true;
        for (int v : {ed.u, ed.v}) {
            long long b = partial_[static_cast<std::size_t>(v)];
            if (last_[static_cast<std::size_t>(v)] == i) {
                if (!closed_ok(b)) ok = false;
            } else if (!modulo_ && std::abs(b) > slack_[static_cast<std::size_t>(v)]) {
                ok = false;
            }
        }
        if (ok) {
            values_[static_cast<std::size_t>(e)] = x;
            if (go(i + 1)) return true;
        }
        apply(-1);
        return false;
    }

    const SignedGraph& g_;
    long long k_;
    bool modulo_;
    std::uint64_t cap_;
    std::uint64_t nodes_ = 0;
    Orientation orient_;
    std::vector<int> order_, last_;
    std::vector<long long> partial_, slack_, values_, candidates_;
};

} // namespace detail

/// Nowhere-zero integer k-flow under the canonical orientation, by exhaustive pruned backtracking.
inline Search<IntegerFlow> find_nz_k_flow(const SignedGraph& g, long long k,
                                          std::uint64_t cap = resource_cap(default_search_cap)) {
    if (k < 2) throw PreconditionError("k must be at least 2");
    return detail::FlowBacktracker(g, k, false, cap).run();
}

/// Nowhere-zero Z_k-flow; values are residues in 1..k-1 under the canonical orientation.
inline Search<IntegerFlow> find_nz_zk_flow(const SignedGraph& g, long long k,
                                           std::uint64_t cap = resource_cap(default_search_cap)) {
    if (k < 2) throw PreconditionError("k must be at least 2");
    return detail::FlowBacktracker(g, k, true, cap).run();
}

// ---------------------------------------------------------------------------
// Walk flows

/// Adds the unit flow carried by a closed walk (even number of negative traversals) to `values`,
/// expressed under orientation `o`. Polarity flips after every negative edge.
inline void add_walk_flow(const SignedGraph& g, const Orientation& o, const Walk& w, std::vector<long long>& values) {
    int p = 1;
    for (int d : w.halves) {
        values[static_cast<std::size_t>(edge_of(d))] += (p == o[d]) ? 1 : -1;
        p *= g.sign(edge_of(d));
    }
    if (p != 1) throw PreconditionError("closed walk has an odd number of negative traversals");
}

/// Euler circuit of the component containing `start`, as departure half-edges (Hierholzer).
inline Walk euler_circuit(const SignedGraph& g, int start, std::span<const char> usable = {}) {
    std::vector<char> used(static_cast<std::size_t>(g.num_edges()), 0);
    if (!usable.empty())
        for (int e = 0; e < g.num_edges(); ++e) used[static_cast<std::size_t>(e)] = !usable[static_cast<std::size_t>(e)];
    std::vector<std::size_t> ptr(static_cast<std::size_t>(g.num_vertices()), 0);
    std::vector<std::pair<int, int>> stack{{start, -1}};
    std::vector<int> rev;
    while (!stack.empty()) {
        auto [v, h] = stack.back();
        const auto& hs = g.half_edges_at(v);
        auto& p = ptr[static_cast<std::size_t>(v)];
        while (p < hs.size() && used[static_cast<std::size_t>(edge_of(hs[p]))]) ++p;
        if (p < hs.size()) {
            int d = hs[p];
            used[static_cast<std::size_t>(edge_of(d))] = 1;
            stack.emplace_back(g.vertex_of(other_half(d)), d);
        } else {
            stack.pop_back();
            if (h >= 0) rev.push_back(h);
        }
    }
    std::reverse(rev.begin(), rev.end());
    return {start, rev};
}

/// Nowhere-zero 2-flow (values +-1, canonical orientation) iff every component is eulerian with an even
/// number of negative edges.
inline std::optional<IntegerFlow> find_2_flow_on_even_graph(const SignedGraph& g) {
    if (!is_eulerian(g)) return std::nullopt;
    auto comps = connected_components(g);
    std::vector<int> neg(static_cast<std::size_t>(comps.count), 0);
    for (int e : g.negative_edges()) ++neg[static_cast<std::size_t>(comps.of[static_cast<std::size_t>(g.edge(e).u)])];
    for (int c : neg)
        if (c % 2 != 0) return std::nullopt;
    IntegerFlow f{Orientation::canonical(g), std::vector<long long>(static_cast<std::size_t>(g.num_edges()), 0)};
    std::vector<char> done(static_cast<std::size_t>(comps.count), 0);
    for (int v = 0; v < g.num_vertices(); ++v) {
        int c = comps.of[static_cast<std::size_t>(v)];
        if (done[static_cast<std::size_t>(c)] || g.degree(v) == 0) continue;
        done[static_cast<std::size_t>(c)] = 1;
        add_walk_flow(g, f.orientation, euler_circuit(g, v), f.values);
    }
    return f;
}

/// Integer flow supported exactly on a signed circuit: +-1 on balanced circuits and short barbells,
/// +-1 on the circuits and +-2 on the path of a long barbell.
inline IntegerFlow signed_circuit_flow(const SignedGraph& g, const SignedCircuitWitness& w) {
    if (!verify_signed_circuit(g, w)) throw PreconditionError("invalid signed-circuit witness");
    IntegerFlow f{Orientation::canonical(g), std::vector<long long>(static_cast<std::size_t>(g.num_edges()), 0)};
    Walk walk;
    switch (w.kind) {
    case CircuitKind::balanced_circuit:
        walk = circuit_walk(g, w.circuits[0], g.edge(w.circuits[0][0]).u);
        break;
    case CircuitKind::short_barbell: {
        auto v1 = vertices_of(g, w.circuits[0]), v2 = vertices_of(g, w.circuits[1]);
        std::vector<int> meet;
        std::set_intersection(v1.begin(), v1.end(), v2.begin(), v2.end(), std::back_inserter(meet));
        int x = meet.at(0);
        walk = circuit_walk(g, w.circuits[0], x);
        auto second = circuit_walk(g, w.circuits[1], x);
        walk.halves.insert(walk.halves.end(), second.halves.begin(), second.halves.end());
        break;
    }
    case CircuitKind::long_barbell: {
        auto v1 = vertices_of(g, w.circuits[0]);
        const Edge& first = g.edge(w.path.front());
        const Edge& last = g.edge(w.path.back());
        bool u_on = std::binary_search(v1.begin(), v1.end(), first.u);
        bool v_on = std::binary_search(v1.begin(), v1.end(), first.v);
        std::vector<int> path = w.path;
        int a = u_on ? first.u : (v_on ? first.v : -1);
        if (a < 0) { // path listed from the other circuit
            std::reverse(path.begin(), path.end());
            a = std::binary_search(v1.begin(), v1.end(), last.u) ? last.u : last.v;
        }
        Walk pw = path_walk(g, path, a);
        int b = pw.end(g);
        walk = circuit_walk(g, w.circuits[0], a);
        walk.halves.insert(walk.halves.end(), pw.halves.begin(), pw.halves.end());
        auto c2 = circuit_walk(g, w.circuits[1], b);
        walk.halves.insert(walk.halves.end(), c2.halves.begin(), c2.halves.end());
        for (auto it = pw.halves.rbegin(); it != pw.halves.rend(); ++it) walk.halves.push_back(other_half(*it));
        break;
    }
    }
    add_walk_flow(g, f.orientation, walk, f.values);
    return f;
}

// ---------------------------------------------------------------------------
// Integer flow number

struct IntegerFlowNumber {
    SearchStatus status = SearchStatus::none; // none: not admissible or above k_max
    bool admissible = true;
    std::optional<int> phi_i;
    std::optional<IntegerFlow> witness;
    std::uint64_t nodes = 0;
};

inline IntegerFlowNumber integer_flow_number(const SignedGraph& g, int k_max = 8,
                                             std::uint64_t cap = resource_cap(default_search_cap)) {
    if (k_max < 2) throw PreconditionError("k_max must be at least 2");
    IntegerFlowNumber out;
    if (!is_flow_admissible(g).admissible) {
        out.admissible = false;
        return out;
    }
    for (int k = 2; k <= k_max; ++k) {
        auto r = find_nz_k_flow(g, k, cap);
        out.nodes += r.nodes;
        if (r.capped()) {
            out.status = SearchStatus::cap_exceeded;
            return out;
        }
        if (r.found()) {
            out.status = SearchStatus::found;
            out.phi_i = k;
            out.witness = r.value;
            return out;
        }
    }
    return out;
}

} // namespace sgflow
