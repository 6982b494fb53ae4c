#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sgflow/error.hpp"
#include "sgflow/graph.hpp"
#include "sgflow/primitives.hpp"

namespace sgflow {

enum class CircuitKind { balanced_circuit, short_barbell, long_barbell };

inline const char* to_string(CircuitKind k) {
    switch (k) {
    case CircuitKind::balanced_circuit: return "balanced-circuit";
    case CircuitKind::short_barbell: return "short-barbell";
    case CircuitKind::long_barbell: return "long-barbell";
    }
    return "?";
}

struct SignedCircuitWitness {
    CircuitKind kind = CircuitKind::balanced_circuit;
    std::vector<std::vector<int>> circuits; // edge sequences in traversal order
    std::vector<int> path;                  // long barbell only, from circuits[0] to circuits[1]

    std::vector<int> edges() const {
        std::vector<int> out;
        for (const auto& c : circuits) out.insert(out.end(), c.begin(), c.end());
        out.insert(out.end(), path.begin(), path.end());
        std::sort(out.begin(), out.end());
        return out;
    }
};

namespace detail {

/// Follows the edge subset from `start` through half-edge `h` until a vertex in `stop` is reached.
/// Intermediate vertices must have subset-degree 2.
inline Walk trace(const SignedGraph& g, const std::vector<std::vector<int>>& sub_halves, const std::vector<char>& stop,
                  int start, int h) {
    Walk w{start, {h}};
    int at = g.vertex_of(other_half(h));
    int arrival = other_half(h);
    while (!stop[static_cast<std::size_t>(at)]) {
        const auto& hs = sub_halves[static_cast<std::size_t>(at)];
        int next = hs[0] == arrival ? hs[1] : hs[0];
        w.halves.push_back(next);
        arrival = other_half(next);
        at = g.vertex_of(arrival);
    }
    return w;
}

} // namespace detail

/// Identifies the edge subset as a balanced circuit, short barbell or long barbell.
inline std::optional<SignedCircuitWitness> classify_signed_circuit(const SignedGraph& g, std::span<const int> edges) {
    if (edges.empty()) return std::nullopt;
    std::vector<int> es(edges.begin(), edges.end());
    std::sort(es.begin(), es.end());
    if (std::adjacent_find(es.begin(), es.end()) != es.end()) return std::nullopt;
    for (int e : es)
        if (e < 0 || e >= g.num_edges()) return std::nullopt;

    auto sub = edge_subgraph(g, es);
    auto comps = connected_components(sub.graph);
    auto verts = vertices_of(g, es);
    for (int v : verts)
        if (comps.of[static_cast<std::size_t>(v)] != comps.of[static_cast<std::size_t>(verts[0])]) return std::nullopt;

    std::vector<std::vector<int>> halves(static_cast<std::size_t>(g.num_vertices()));
    for (int e : es) {
        halves[static_cast<std::size_t>(g.edge(e).u)].push_back(2 * e);
        halves[static_cast<std::size_t>(g.edge(e).v)].push_back(2 * e + 1);
    }
    for (auto& hs : halves) std::sort(hs.begin(), hs.end());
    std::vector<int> deg3, deg4;
    for (int v : verts) {
        std::size_t d = halves[static_cast<std::size_t>(v)].size();
        if (d == 3) deg3.push_back(v);
        else if (d == 4) deg4.push_back(v);
        else if (d != 2) return std::nullopt;
    }
    auto odd = [&](const std::vector<int>& c) { return count_negative(g, c) % 2 == 1; };

    if (deg3.empty() && deg4.empty()) {
        if (odd(es)) return std::nullopt;
        return SignedCircuitWitness{CircuitKind::balanced_circuit, {circuit_walk(g, es, verts[0]).edges()}, {}};
    }
    if (deg3.empty() && deg4.size() == 1) {
        int x = deg4[0];
        std::vector<char> stop(static_cast<std::size_t>(g.num_vertices()), 0);
        stop[static_cast<std::size_t>(x)] = 1;
        auto c1 = detail::trace(g, halves, stop, x, halves[static_cast<std::size_t>(x)][0]).edges();
        std::vector<int> c2;
        std::vector<int> s1 = c1;
        std::sort(s1.begin(), s1.end());
        std::set_difference(es.begin(), es.end(), s1.begin(), s1.end(), std::back_inserter(c2));
        if (!odd(c1) || !odd(c2)) return std::nullopt;
        return SignedCircuitWitness{CircuitKind::short_barbell, {c1, circuit_walk(g, c2, x).edges()}, {}};
    }
    if (deg4.empty() && deg3.size() == 2) {
        std::vector<char> stop(static_cast<std::size_t>(g.num_vertices()), 0);
        stop[static_cast<std::size_t>(deg3[0])] = stop[static_cast<std::size_t>(deg3[1])] = 1;
        std::vector<int> circuits[2];
        std::vector<int> path;
        for (int side = 0; side < 2; ++side) {
            int a = deg3[static_cast<std::size_t>(side)];
            std::vector<char> used(static_cast<std::size_t>(g.num_half_edges()), 0);
            for (int h : halves[static_cast<std::size_t>(a)]) {
                if (used[static_cast<std::size_t>(h)]) continue;
                Walk w = detail::trace(g, halves, stop, a, h);
                used[static_cast<std::size_t>(h)] = 1;
                used[static_cast<std::size_t>(other_half(w.halves.back()))] = 1;
                if (w.end(g) == a) {
                    if (!circuits[side].empty()) return std::nullopt;
                    circuits[side] = w.edges();
                } else if (side == 0) {
                    if (!path.empty()) return std::nullopt; // theta: three a-b routes
                    path = w.edges();
                }
            }
            if (circuits[side].empty()) return std::nullopt;
        }
        if (!odd(circuits[0]) || !odd(circuits[1])) return std::nullopt;
        return SignedCircuitWitness{CircuitKind::long_barbell, {circuits[0], circuits[1]}, path};
    }
    return std::nullopt;
}

/// Structural re-check of a witness: kind matches classification of its edge set and parts are consistent.
inline bool verify_signed_circuit(const SignedGraph& g, const SignedCircuitWitness& w) {
    auto c = classify_signed_circuit(g, w.edges());
    if (!c || c->kind != w.kind) return false;
    std::size_t expected = w.kind == CircuitKind::balanced_circuit ? 1 : 2;
    if (w.circuits.size() != expected) return false;
    for (const auto& circ : w.circuits)
        if (!is_circuit(g, circ)) return false;
    if (w.kind != CircuitKind::long_barbell && !w.path.empty()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Long barbells

namespace detail {
inline SignedCircuitWitness join_disjoint(const SignedGraph& g, const std::vector<int>& c1, const std::vector<int>& c2) {
    auto v1 = vertices_of(g, c1), v2 = vertices_of(g, c2);
    auto path = shortest_connecting_path(g, v1, v2);
    if (!path) throw InvariantViolation("disjoint circuits in one component have no connecting path");
    return {CircuitKind::long_barbell, {c1, c2}, *path};
}
} // namespace detail

/// Two vertex-disjoint unbalanced circuits in one component, joined by a shortest path.
inline Search<SignedCircuitWitness> find_long_barbell(const SignedGraph& g, std::uint64_t cap = resource_cap(1'000'000)) {
    Search<SignedCircuitWitness> out;
    if (is_balanced(g).balanced()) return out;
    auto comps = connected_components(g);
    auto en = enumerate_circuits(g, cap);
    out.nodes = en.circuits.size();
    for (const Walk& w : en.circuits) {
        auto c = w.edges();
        if (count_negative(g, c) % 2 == 0) continue;
        auto in_c = detail::vertex_mask(g, vertices_of(g, c));
        int comp = comps.of[static_cast<std::size_t>(w.start)];
        auto rest = vertex_restricted(g, [&](int v) {
            return !in_c[static_cast<std::size_t>(v)] && comps.of[static_cast<std::size_t>(v)] == comp;
        });
        auto cert = is_balanced(rest.graph);
        if (cert.balanced()) continue;
        std::vector<int> c2;
        for (int e : cert.unbalanced_circuit) c2.push_back(rest.edge_map[static_cast<std::size_t>(e)]);
        out.status = SearchStatus::found;
        out.value = detail::join_disjoint(g, c, c2);
        return out;
    }
    out.status = en.cap_exceeded ? SearchStatus::cap_exceeded : SearchStatus::none;
    return out;
}

/// Convenience: true when a long barbell exists; throws ResourceCapError when undecided.
inline bool has_long_barbell(const SignedGraph& g) {
    return find_long_barbell(g).decided("long-barbell search").has_value();
}

// ---------------------------------------------------------------------------
// Flow-admissibility

struct ComponentAdmissibility {
    enum class Reason { ok, one_negative_edge, bad_cut_edge };
    int component = 0;
    Reason reason = Reason::ok;
    std::vector<int> switching_set; // one_negative_edge: switching leaves exactly `edge` negative in the component
    int edge = -1;                  // the lone negative edge, or the cut-edge
    std::vector<int> balanced_side; // bad_cut_edge: vertices of the balanced side of component - edge
};

inline const char* to_string(ComponentAdmissibility::Reason r) {
    switch (r) {
    case ComponentAdmissibility::Reason::ok: return "ok";
    case ComponentAdmissibility::Reason::one_negative_edge: return "equivalent-to-one-negative-edge";
    case ComponentAdmissibility::Reason::bad_cut_edge: return "bad-cut-edge";
    }
    return "?";
}

struct AdmissibilityVerdict {
    bool admissible = true;
    std::vector<ComponentAdmissibility> components;

    /// First failing component, if any.
    const ComponentAdmissibility* failure() const {
        for (const auto& c : components)
            if (c.reason != ComponentAdmissibility::Reason::ok) return &c;
        return nullptr;
    }

    /// Re-checks every failure reason directly against g.
    bool verify(const SignedGraph& g) const {
        auto comps = connected_components(g);
        for (const auto& c : components) {
            if (c.reason == ComponentAdmissibility::Reason::one_negative_edge) {
                auto h = switch_vertices(g, c.switching_set);
                int neg = 0;
                for (int e = 0; e < h.num_edges(); ++e)
                    if (comps.of[static_cast<std::size_t>(h.edge(e).u)] == c.component && h.sign(e) < 0) {
                        if (e != c.edge) return false;
                        ++neg;
                    }
                if (neg != 1) return false;
            } else if (c.reason == ComponentAdmissibility::Reason::bad_cut_edge) {
                auto bridges = find_bridges(g);
                if (!std::binary_search(bridges.begin(), bridges.end(), c.edge)) return false;
                auto side = detail::vertex_mask(g, c.balanced_side);
                auto part = vertex_restricted(g, [&](int v) { return side[static_cast<std::size_t>(v)] != 0; });
                if (!is_balanced(part.graph).balanced()) return false;
            }
        }
        return admissible == (failure() == nullptr);
    }
};

/// Per-component characterization: not switching-equivalent to a single negative edge,
/// and no cut-edge whose removal leaves a balanced side.
inline AdmissibilityVerdict is_flow_admissible(const SignedGraph& g) {
    AdmissibilityVerdict out;
    auto comps = connected_components(g);
    auto bridges = find_bridges(g);
    for (int c = 0; c < comps.count; ++c) {
        ComponentAdmissibility ca;
        ca.component = c;
        std::vector<int> ce;
        for (int e = 0; e < g.num_edges(); ++e)
            if (comps.of[static_cast<std::size_t>(g.edge(e).u)] == c) ce.push_back(e);
        out.components.push_back(ca);
        auto& cur = out.components.back();
        if (ce.empty()) continue;

        if (!is_balanced_subset(g, ce).balanced()) {
            for (int e : ce) {
                std::vector<int> rest;
                for (int f : ce)
                    if (f != e) rest.push_back(f);
                auto cert = is_balanced_subset(g, rest);
                if (!cert.balanced()) continue;
                cur.reason = ComponentAdmissibility::Reason::one_negative_edge;
                cur.edge = e;
                for (int v = 0; v < g.num_vertices(); ++v)
                    if (comps.of[static_cast<std::size_t>(v)] == c && (*cert.potential)[static_cast<std::size_t>(v)] < 0)
                        cur.switching_set.push_back(v);
                break;
            }
            if (cur.reason != ComponentAdmissibility::Reason::ok) continue;
        }

        for (int b : bridges) {
            if (comps.of[static_cast<std::size_t>(g.edge(b).u)] != c) continue;
            std::vector<int> rest;
            for (int f : ce)
                if (f != b) rest.push_back(f);
            auto sub = edge_subgraph(g, rest);
            auto sc = connected_components(sub.graph);
            for (int end : {g.edge(b).u, g.edge(b).v}) {
                int side = sc.of[static_cast<std::size_t>(end)];
                auto part = vertex_restricted(sub.graph, [&](int v) { return sc.of[static_cast<std::size_t>(v)] == side; });
                if (!is_balanced(part.graph).balanced()) continue;
                cur.reason = ComponentAdmissibility::Reason::bad_cut_edge;
                cur.edge = b;
                cur.balanced_side = sc.vertices(side);
                break;
            }
            if (cur.reason != ComponentAdmissibility::Reason::ok) break;
        }
    }
    out.admissible = out.failure() == nullptr;
    return out;
}

// ---------------------------------------------------------------------------
// Star-cuts, antibalance, cubic graphs

struct StarCut {
    int center = 0;
    std::vector<int> leaves;
    std::vector<int> edges;
};

/// An induced star whose edges are all bridges. Center: most loop-free bridge neighbours, lowest id on ties.
inline std::optional<StarCut> has_star_cut(const SignedGraph& g) {
    auto bridges = find_bridges(g);
    if (bridges.empty()) return std::nullopt;
    std::vector<char> looped(static_cast<std::size_t>(g.num_vertices()), 0);
    for (const Edge& e : g.edges())
        if (e.is_loop()) looped[static_cast<std::size_t>(e.u)] = 1;
    std::optional<StarCut> best;
    for (int c = 0; c < g.num_vertices(); ++c) {
        if (looped[static_cast<std::size_t>(c)]) continue;
        StarCut s{c, {}, {}};
        for (int b : bridges) {
            const Edge& e = g.edge(b);
            if (e.u != c && e.v != c) continue;
            int leaf = e.u == c ? e.v : e.u;
            if (looped[static_cast<std::size_t>(leaf)]) continue;
            s.leaves.push_back(leaf);
            s.edges.push_back(b);
        }
        if (s.leaves.empty()) continue;
        if (!best || s.leaves.size() > best->leaves.size()) best = std::move(s);
    }
    return best;
}

/// Balance of the sign-negated graph.
inline BalanceCertificate is_antibalanced(const SignedGraph& g) {
    std::vector<int> neg;
    for (const Edge& e : g.edges()) neg.push_back(-e.sign);
    return is_balanced(g.with_signs(neg));
}

inline bool is_cubic(const SignedGraph& g) {
    for (const Edge& e : g.edges())
        if (e.is_loop()) return false;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) != 3) return false;
    return true;
}

inline void require_cubic(const SignedGraph& g) {
    if (!is_cubic(g)) throw PreconditionError("graph is not cubic (loopless, every vertex of degree 3)");
}

/// Proper 3-edge-colouring (colours 0..2) by backtracking in edge order.
inline std::optional<std::vector<int>> three_edge_coloring(const SignedGraph& g) {
    require_cubic(g);
    const int m = g.num_edges();
    std::vector<int> color(static_cast<std::size_t>(m), -1);
    std::vector<int> used(static_cast<std::size_t>(g.num_vertices()), 0); // bitmask per vertex
    std::function<bool(int)> go = [&](int e) {
        if (e == m) return true;
        const Edge& ed = g.edge(e);
        for (int c = 0; c < 3; ++c) {
            int bit = 1 << c;
            if ((used[static_cast<std::size_t>(ed.u)] | used[static_cast<std::size_t>(ed.v)]) & bit) continue;
            used[static_cast<std::size_t>(ed.u)] |= bit;
            used[static_cast<std::size_t>(ed.v)] |= bit;
            color[static_cast<std::size_t>(e)] = c;
            if (go(e + 1)) return true;
            used[static_cast<std::size_t>(ed.u)] &= ~bit;
            used[static_cast<std::size_t>(ed.v)] &= ~bit;
        }
        return false;
    };
    if (!go(0)) return std::nullopt;
    return color;
}

/// A 2-factor (complement of a perfect matching) whose circuits each have an even number of positive edges.
inline std::optional<std::vector<int>> find_antibalanced_2_factor(const SignedGraph& g) {
    require_cubic(g);
    const int n = g.num_vertices();
    std::vector<char> matched(static_cast<std::size_t>(n), 0), in_m(static_cast<std::size_t>(g.num_edges()), 0);
    std::optional<std::vector<int>> found;
    std::function<void()> go = [&] {
        if (found) return;
        int v = 0;
        while (v < n && matched[static_cast<std::size_t>(v)]) ++v;
        if (v == n) {
            std::vector<int> factor;
            for (int e = 0; e < g.num_edges(); ++e)
                if (!in_m[static_cast<std::size_t>(e)]) factor.push_back(e);
            auto sub = edge_subgraph(g, factor);
            auto comps = connected_components(sub.graph);
            std::vector<int> positives(static_cast<std::size_t>(comps.count), 0);
            for (int e : factor)
                if (g.sign(e) > 0) ++positives[static_cast<std::size_t>(comps.of[static_cast<std::size_t>(g.edge(e).u)])];
            for (int p : positives)
                if (p % 2 != 0) return;
            found = factor;
            return;
        }
        for (int h : g.half_edges_at(v)) {
            int w = g.vertex_of(other_half(h));
            if (matched[static_cast<std::size_t>(w)]) continue;
            matched[static_cast<std::size_t>(v)] = matched[static_cast<std::size_t>(w)] = 1;
            in_m[static_cast<std::size_t>(edge_of(h))] = 1;
            go();
            in_m[static_cast<std::size_t>(edge_of(h))] = 0;
            matched[static_cast<std::size_t>(v)] = matched[static_cast<std::size_t>(w)] = 0;
            if (found) return;
        }
    };
    go();
    return found;
}

} // namespace sgflow
