#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sgflow/error.hpp"
#include "sgflow/flow.hpp"
#include "sgflow/graph.hpp"
#include "sgflow/primitives.hpp"
#include "sgflow/structure.hpp"

namespace sgflow {

inline constexpr std::uint64_t default_ditrail_cap = 10'000'000ull;

struct JournalEntry {
    enum class Op { switch_vertices, minus };
    Op op = Op::minus;
    std::vector<int> items; // vertices or edges
    friend bool operator==(const JournalEntry&, const JournalEntry&) = default;
};

/// Working triple of the modulo-to-integer conversion: current signature, orientation and values in (0, k).
struct ConversionState {
    SignedGraph graph;
    Orientation tau;
    std::vector<long long> f;
    long long k = 3;
    std::vector<std::vector<int>> switch_log; // vertex sets, in application order
    std::vector<std::vector<int>> minus_log;  // edge sets, in application order
    std::vector<JournalEntry> journal;        // both kinds, interleaved

    static ConversionState lift(const SignedGraph& g, const IntegerFlow& fa, long long k) {
        ConversionState s{g, fa.orientation, {}, k, {}, {}, {}};
        for (long long v : fa.values) s.f.push_back(((v % k) + k) % k);
        return s;
    }

    std::vector<long long> boundary() const { return sgflow::boundary<long long>(graph, tau, f); }

    long long eta() const {
        long long t = 0;
        for (long long b : boundary()) t += b < 0 ? -b : b;
        return t;
    }

    std::vector<int> sources() const {
        auto b = boundary();
        std::vector<int> out;
        for (int v = 0; v < graph.num_vertices(); ++v)
            if (b[static_cast<std::size_t>(v)] > 0) out.push_back(v);
        return out;
    }

    /// (S1) values in (0, k) and (S2) boundaries divisible by k, plus orientation consistency.
    bool invariants_hold() const {
        for (long long v : f)
            if (v <= 0 || v >= k) return false;
        for (long long b : boundary())
            if (b % k != 0) return false;
        return tau.consistent_with(graph);
    }

    void minus(std::span<const int> edges) {
        for (int e : edges) {
            tau.reverse_edge(e);
            f[static_cast<std::size_t>(e)] = k - f[static_cast<std::size_t>(e)];
        }
        minus_log.emplace_back(edges.begin(), edges.end());
        journal.push_back({JournalEntry::Op::minus, minus_log.back()});
    }

    void switch_at(std::span<const int> vs) {
        if (vs.empty()) return;
        tau = switch_orientation(graph, tau, vs);
        graph = switch_vertices(graph, vs);
        switch_log.emplace_back(vs.begin(), vs.end());
        journal.push_back({JournalEntry::Op::switch_vertices, switch_log.back()});
    }

    /// Current values expressed on the input signature: undo the net switching, then reorient to `target`.
    IntegerFlow unwind(const SignedGraph& input, const Orientation& target) const {
        std::vector<int> parity(static_cast<std::size_t>(graph.num_vertices()), 0);
        for (const auto& set : switch_log)
            for (int v : set) parity[static_cast<std::size_t>(v)] ^= 1;
        std::vector<int> net;
        for (int v = 0; v < graph.num_vertices(); ++v)
            if (parity[static_cast<std::size_t>(v)]) net.push_back(v);
        IntegerFlow cur{switch_orientation(graph, tau, net), f};
        return reorient(input, cur, target);
    }

    /// Negative edge with both halves directed outward.
    bool is_sink_edge(int e) const { return graph.sign(e) < 0 && tau[2 * e] > 0 && tau[2 * e + 1] > 0; }
};

/// Minusing as a pure operation: reverse both halves and replace f(e) by k - f(e) on every edge of E0.
inline ConversionState minusing(ConversionState s, std::span<const int> edges) {
    s.minus(edges);
    return s;
}

struct Tadpole {
    Walk tail; // positive dipath from tail_end to meet (possibly empty)
    Walk head; // closed negative ditrail at meet
    int tail_end = 0;
    int meet = 0;

    std::vector<int> edges() const {
        auto out = tail.edges();
        auto h = head.edges();
        out.insert(out.end(), h.begin(), h.end());
        return out;
    }
};

namespace detail {

/// Checks the diwalk chaining rule; returns the final arrival direction, or nullopt.
inline std::optional<int> diwalk_end_direction(const SignedGraph& g, const Orientation& tau, const Walk& w) {
    if (w.halves.empty()) return std::nullopt;
    int at = w.start;
    int prev_arrival = 0;
    for (std::size_t i = 0; i < w.halves.size(); ++i) {
        int d = w.halves[i];
        if (g.vertex_of(d) != at) return std::nullopt;
        if (i == 0 ? tau[d] != 1 : tau[d] + prev_arrival != 0) return std::nullopt;
        prev_arrival = tau[other_half(d)];
        at = g.vertex_of(other_half(d));
    }
    return prev_arrival;
}

inline bool no_repeated_edges(const Walk& w) {
    auto es = w.edges();
    std::sort(es.begin(), es.end());
    return std::adjacent_find(es.begin(), es.end()) == es.end();
}

inline bool no_repeated_vertices(const SignedGraph& g, const Walk& w) {
    std::vector<int> vs{w.start};
    for (int h : w.halves) vs.push_back(g.vertex_of(other_half(h)));
    std::sort(vs.begin(), vs.end());
    return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

} // namespace detail

inline bool is_negative_ditrail(const SignedGraph& g, const Orientation& tau, const Walk& w) {
    auto d = detail::diwalk_end_direction(g, tau, w);
    return d && *d == 1 && detail::no_repeated_edges(w);
}

inline bool is_positive_dipath(const SignedGraph& g, const Orientation& tau, const Walk& w) {
    if (w.halves.empty()) return true;
    auto d = detail::diwalk_end_direction(g, tau, w);
    return d && *d == -1 && detail::no_repeated_vertices(g, w);
}

inline bool verify_tadpole(const SignedGraph& g, const Orientation& tau, const Tadpole& t) {
    if (t.tail.start != t.tail_end || t.tail.end(g) != t.meet || t.head.start != t.meet || t.head.end(g) != t.meet)
        return false;
    if (!is_positive_dipath(g, tau, t.tail) || !is_negative_ditrail(g, tau, t.head)) return false;
    std::vector<int> tv{t.tail.start}, hv{t.head.start};
    for (int h : t.tail.halves) tv.push_back(g.vertex_of(other_half(h)));
    for (int h : t.head.halves) hv.push_back(g.vertex_of(other_half(h)));
    std::sort(tv.begin(), tv.end());
    std::sort(hv.begin(), hv.end());
    hv.erase(std::unique(hv.begin(), hv.end()), hv.end());
    std::vector<int> common;
    std::set_intersection(tv.begin(), tv.end(), hv.begin(), hv.end(), std::back_inserter(common));
    return common == std::vector<int>{t.meet};
}

/// Negative ditrail from x to some vertex other than x accepted by `target`.
/// Depth-first over (vertex, arrival direction, used edges); throws ResourceCapError past `cap` states.
inline std::optional<Walk> find_negative_ditrail(const SignedGraph& g, const Orientation& tau, int x,
                                                 const std::function<bool(int)>& target,
                                                 std::uint64_t cap = resource_cap(default_ditrail_cap)) {
    std::vector<char> used(static_cast<std::size_t>(g.num_edges()), 0);
    Walk w{x, {}};
    std::uint64_t states = 0;
    std::function<bool(int, int)> go = [&](int v, int need) {
        for (int d : g.half_edges_at(v)) {
            int e = edge_of(d);
            if (used[static_cast<std::size_t>(e)] || tau[d] != need) continue;
            if (++states > cap) throw ResourceCapError("ditrail search exceeded " + std::to_string(cap) + " states");
            int a = other_half(d);
            int w_end = g.vertex_of(a);
            used[static_cast<std::size_t>(e)] = 1;
            w.halves.push_back(d);
            if (tau[a] == 1 && w_end != x && target(w_end)) return true;
            if (go(w_end, -tau[a])) return true;
            w.halves.pop_back();
            used[static_cast<std::size_t>(e)] = 0;
        }
        return false;
    };
    if (go(x, 1)) return w;
    return std::nullopt;
}

inline std::optional<Walk> find_negative_ditrail(const SignedGraph& g, const Orientation& tau, int x, int y,
                                                 std::uint64_t cap = resource_cap(default_ditrail_cap)) {
    if (x == y) throw PreconditionError("ditrail endpoints must differ");
    return find_negative_ditrail(g, tau, x, [y](int v) { return v == y; }, cap);
}

struct DipathReach {
    std::vector<char> positive; // Y_x^+ (includes x)
    std::vector<char> negative; // Y_x^- (excludes Y_x^+)
};

/// Vertices reachable from x by positive / negative dipaths, by simple-path enumeration.
inline DipathReach dipath_reach(const SignedGraph& g, const Orientation& tau, int x,
                                std::uint64_t cap = resource_cap(default_ditrail_cap)) {
    const auto n = static_cast<std::size_t>(g.num_vertices());
    DipathReach r{std::vector<char>(n, 0), std::vector<char>(n, 0)};
    std::vector<char> neg_any(n, 0), on_path(n, 0);
    r.positive[static_cast<std::size_t>(x)] = 1;
    std::uint64_t states = 0;
    std::function<void(int, int)> go = [&](int v, int need) {
        for (int d : g.half_edges_at(v)) {
            if (tau[d] != need) continue;
            int a = other_half(d);
            int w = g.vertex_of(a);
            if (on_path[static_cast<std::size_t>(w)]) continue;
            if (++states > cap) throw ResourceCapError("dipath enumeration exceeded " + std::to_string(cap) + " states");
            (tau[a] == -1 ? r.positive : neg_any)[static_cast<std::size_t>(w)] = 1;
            on_path[static_cast<std::size_t>(w)] = 1;
            go(w, -tau[a]);
            on_path[static_cast<std::size_t>(w)] = 0;
        }
    };
    on_path[static_cast<std::size_t>(x)] = 1;
    go(x, 1);
    for (std::size_t v = 0; v < n; ++v) r.negative[v] = neg_any[v] && !r.positive[v];
    return r;
}

namespace detail {

/// A positive dipath from x to y inside `allowed` vertices (first found, depth-first in half-edge order).
inline std::optional<Walk> positive_dipath(const SignedGraph& g, const Orientation& tau, int x, int y,
                                           const std::vector<char>& allowed, std::uint64_t cap) {
    std::vector<char> on_path(static_cast<std::size_t>(g.num_vertices()), 0);
    Walk w{x, {}};
    std::uint64_t states = 0;
    std::function<bool(int, int)> go = [&](int v, int need) {
        for (int d : g.half_edges_at(v)) {
            if (tau[d] != need) continue;
            int a = other_half(d);
            int u = g.vertex_of(a);
            if (on_path[static_cast<std::size_t>(u)] || !allowed[static_cast<std::size_t>(u)]) continue;
            if (++states > cap) throw ResourceCapError("dipath search exceeded " + std::to_string(cap) + " states");
            w.halves.push_back(d);
            if (u == y && tau[a] == -1) return true;
            on_path[static_cast<std::size_t>(u)] = 1;
            if (go(u, -tau[a])) return true;
            on_path[static_cast<std::size_t>(u)] = 0;
            w.halves.pop_back();
        }
        return false;
    };
    if (x == y) return w;
    on_path[static_cast<std::size_t>(x)] = 1;
    if (go(x, 1)) return w;
    return std::nullopt;
}

/// Exhaustive tadpole search inside `allowed`: every positive dipath P from x, then a closed
/// negative ditrail at its end avoiding the rest of P.
inline std::optional<Tadpole> exhaustive_tadpole(const SignedGraph& g, const Orientation& tau, int x,
                                                 const std::vector<char>& allowed, std::uint64_t cap) {
    const auto n = static_cast<std::size_t>(g.num_vertices());
    std::vector<char> on_path(n, 0), used(static_cast<std::size_t>(g.num_edges()), 0);
    Walk tail{x, {}};
    std::uint64_t states = 0;
    auto tick = [&] {
        if (++states > cap) throw ResourceCapError("tadpole search exceeded " + std::to_string(cap) + " states");
    };
    std::optional<Tadpole> found;

    auto head_at = [&](int y) -> std::optional<Walk> {
        Walk head{y, {}};
        std::function<bool(int, int)> go = [&](int v, int need) {
            for (int d : g.half_edges_at(v)) {
                int e = edge_of(d);
                if (used[static_cast<std::size_t>(e)] || tau[d] != need) continue;
                int a = other_half(d);
                int u = g.vertex_of(a);
                if (!allowed[static_cast<std::size_t>(u)] || (u != y && on_path[static_cast<std::size_t>(u)])) continue;
                tick();
                used[static_cast<std::size_t>(e)] = 1;
                head.halves.push_back(d);
                if (u == y && tau[a] == 1) return true;
                if (go(u, -tau[a])) return true;
                head.halves.pop_back();
                used[static_cast<std::size_t>(e)] = 0;
            }
            return false;
        };
        if (go(y, 1)) {
            for (int h : head.halves) used[static_cast<std::size_t>(edge_of(h))] = 0;
            return head;
        }
        return std::nullopt;
    };

    // the tail may end only where it arrives with direction -1 (or at x itself)
    std::function<bool(int, int, bool)> extend = [&](int v, int need, bool can_end) {
        if (can_end) {
            if (auto h = head_at(v)) {
                found = Tadpole{tail, *h, x, v};
                return true;
            }
        }
        for (int d : g.half_edges_at(v)) {
            if (tau[d] != need) continue;
            int a = other_half(d);
            int u = g.vertex_of(a);
            if (on_path[static_cast<std::size_t>(u)] || !allowed[static_cast<std::size_t>(u)]) continue;
            tick();
            used[static_cast<std::size_t>(edge_of(d))] = 1;
            tail.halves.push_back(d);
            on_path[static_cast<std::size_t>(u)] = 1;
            if (extend(u, -tau[a], tau[a] == -1)) return true;
            on_path[static_cast<std::size_t>(u)] = 0;
            tail.halves.pop_back();
            used[static_cast<std::size_t>(edge_of(d))] = 0;
        }
        return false;
    };
    on_path[static_cast<std::size_t>(x)] = 1;
    extend(x, 1, true);
    return found;
}

} // namespace detail

/// Tadpole with tail end x inside the vertex set `allowed`: shortest all-positive dipath to the first sink
/// edge, closed back along a positive dipath; falls back to exhaustive search when the splice is invalid.
inline std::optional<Tadpole> find_tadpole(const ConversionState& s, int x, const std::vector<char>& allowed,
                                           std::uint64_t cap = resource_cap(default_ditrail_cap)) {
    const SignedGraph& g = s.graph;
    const Orientation& tau = s.tau;
    const auto n = static_cast<std::size_t>(g.num_vertices());
    std::vector<int> via(n, -2);
    via[static_cast<std::size_t>(x)] = -1;
    std::deque<int> q{x};
    int sink = -1, sink_from = -1;
    while (!q.empty() && sink < 0) {
        int v = q.front();
        q.pop_front();
        for (int d : g.half_edges_at(v)) {
            int e = edge_of(d);
            if (tau[d] != 1) continue;
            int u = g.vertex_of(other_half(d));
            if (!allowed[static_cast<std::size_t>(u)]) continue;
            if (s.is_sink_edge(e)) {
                sink = d;
                sink_from = v;
                break;
            }
            if (g.sign(e) < 0 || via[static_cast<std::size_t>(u)] != -2) continue;
            via[static_cast<std::size_t>(u)] = d;
            q.push_back(u);
        }
    }
    auto fallback = [&] { return detail::exhaustive_tadpole(g, tau, x, allowed, cap); };
    if (sink < 0) return fallback();

    Walk p1{x, {}};
    for (int v = sink_from; via[static_cast<std::size_t>(v)] >= 0; v = g.vertex_of(via[static_cast<std::size_t>(v)]))
        p1.halves.push_back(via[static_cast<std::size_t>(v)]);
    std::reverse(p1.halves.begin(), p1.halves.end());
    int u2 = g.vertex_of(other_half(sink));

    std::vector<int> p1_vertices{x};
    for (int h : p1.halves) p1_vertices.push_back(g.vertex_of(other_half(h)));

    Tadpole t;
    t.tail_end = x;
    auto pos = std::find(p1_vertices.begin(), p1_vertices.end(), u2);
    if (pos != p1_vertices.end()) { // u'' already on P' (includes a loop sink)
        std::size_t j = static_cast<std::size_t>(pos - p1_vertices.begin());
        t.meet = u2;
        t.tail = Walk{x, {p1.halves.begin(), p1.halves.begin() + static_cast<std::ptrdiff_t>(j)}};
        t.head = Walk{u2, {p1.halves.begin() + static_cast<std::ptrdiff_t>(j), p1.halves.end()}};
        t.head.halves.push_back(sink);
    } else {
        auto p2 = detail::positive_dipath(g, tau, x, u2, allowed, cap);
        if (!p2) return fallback();
        std::vector<char> in_p1(static_cast<std::size_t>(g.num_edges()), 0);
        for (int h : p1.halves) in_p1[static_cast<std::size_t>(edge_of(h))] = 1;
        std::size_t s_idx = 0; // number of leading P'' edges up to and including the last shared one
        for (std::size_t i = 0; i < p2->halves.size(); ++i)
            if (in_p1[static_cast<std::size_t>(edge_of(p2->halves[i]))]) s_idx = i + 1;
        int xs = s_idx == 0 ? x : g.vertex_of(other_half(p2->halves[s_idx - 1]));
        auto pos_s = std::find(p1_vertices.begin(), p1_vertices.end(), xs);
        if (pos_s == p1_vertices.end()) return fallback();
        std::size_t j = static_cast<std::size_t>(pos_s - p1_vertices.begin());
        t.meet = xs;
        t.tail = Walk{x, {p1.halves.begin(), p1.halves.begin() + static_cast<std::ptrdiff_t>(j)}};
        t.head = Walk{xs, {p1.halves.begin() + static_cast<std::ptrdiff_t>(j), p1.halves.end()}};
        t.head.halves.push_back(sink);
        for (std::size_t i = p2->halves.size(); i > s_idx; --i) t.head.halves.push_back(other_half(p2->halves[i - 1]));
    }
    if (verify_tadpole(g, tau, t)) return t;
    return fallback();
}

// ---------------------------------------------------------------------------
// Scheduler

struct ConversionOptions {
    bool allow_barbells = false;    // skip the long-barbell precondition
    bool experimental_even_k = false;
    std::uint64_t search_cap = resource_cap(default_ditrail_cap);
};

struct ConversionStats {
    long long eta0 = 0;
    int iterations = 0;
    int sink_switches = 0;
    int ditrail_minus = 0;     // source-pair negative ditrails
    int tadpole_minus = 0;     // P_x + C_x at a source with boundary >= 2k
    int source_splits = 0;     // P_x minused, new source at y_x
    int relocations = 0;       // P_x minused at a source with boundary k
};

struct ConversionResult {
    IntegerFlow flow; // under the input orientation
    ConversionState final_state;
    ConversionStats stats;
};

/// Converts a nowhere-zero Z_k-flow into a congruent nowhere-zero integer k-flow (k odd, no long barbell).
inline ConversionResult modflow_to_intflow(const SignedGraph& g, const IntegerFlow& fa, long long k,
                                           const ConversionOptions& opt = {}) {
    if (k < 3) throw PreconditionError("k must be at least 3");
    if (k % 2 == 0 && !opt.experimental_even_k)
        throw PreconditionError("even k is not supported (the equivalence fails for k = 4); use the experimental mode");
    if (!check_flow(g, fa, FlowKind::modulo(k))) throw PreconditionError("input is not a nowhere-zero Z_k-flow");
    if (!opt.allow_barbells && has_long_barbell(g)) throw PreconditionError("graph contains a long barbell");

    ConversionState s = ConversionState::lift(g, fa, k);
    ConversionResult res{{}, {}, {}};
    auto& st = res.stats;
    st.eta0 = s.eta();
    const long long bound = (st.eta0 / (2 * k) + 1) * (4LL * g.num_vertices() + 4) + 8;
    auto expect_eta = [&](long long want, const char* step) {
        if (s.eta() != want) throw InvariantViolation(std::string("eta mismatch after ") + step);
        if (!s.invariants_hold()) throw InvariantViolation(std::string("(S1)/(S2) broken after ") + step);
    };

    for (;;) {
        if (++st.iterations > bound) throw InvariantViolation("conversion exceeded its iteration bound");
        // (a) sinks become sources
        auto b = s.boundary();
        std::vector<int> sinks;
        for (int v = 0; v < g.num_vertices(); ++v)
            if (b[static_cast<std::size_t>(v)] < 0) sinks.push_back(v);
        if (!sinks.empty()) {
            long long eta = s.eta();
            s.switch_at(sinks);
            st.sink_switches += static_cast<int>(sinks.size());
            expect_eta(eta, "sink switching");
            b = s.boundary();
        }
        auto X = s.sources();
        // (b) a flow: undo switchings and express under the input orientation
        if (X.empty()) {
            res.flow = s.unwind(g, fa.orientation);
            res.final_state = std::move(s);
            if (!check_flow(g, res.flow, FlowKind::integer(k)))
                throw InvariantViolation("unwound assignment is not a nowhere-zero k-flow");
            for (int e = 0; e < g.num_edges(); ++e)
                if (((res.flow[e] - fa[e]) % k) != 0) throw InvariantViolation("unwound flow is not congruent mod k");
            return res;
        }
        // (c) negative ditrail between two distinct sources
        std::vector<char> is_source(static_cast<std::size_t>(g.num_vertices()), 0);
        for (int x : X) is_source[static_cast<std::size_t>(x)] = 1;
        bool progressed = false;
        for (int x1 : X) {
            auto w = find_negative_ditrail(s.graph, s.tau, x1,
                                           [&](int v) { return is_source[static_cast<std::size_t>(v)] != 0; },
                                           opt.search_cap);
            if (!w) continue;
            long long eta = s.eta();
            s.minus(w->edges());
            ++st.ditrail_minus;
            expect_eta(eta - 2 * k, "source-pair ditrail minusing");
            progressed = true;
            break;
        }
        if (progressed) continue;

        // (d) tadpole at the smallest source
        int x = X.front();
        auto reach = dipath_reach(s.graph, s.tau, x, opt.search_cap);
        std::vector<int> yminus;
        for (int v = 0; v < g.num_vertices(); ++v)
            if (reach.negative[static_cast<std::size_t>(v)]) {
                if (b[static_cast<std::size_t>(v)] != 0) throw InvariantViolation("Y_x^- contains a source");
                yminus.push_back(v);
            }
        if (!yminus.empty()) {
            long long eta = s.eta();
            s.switch_at(yminus);
            expect_eta(eta, "switching Y_x^-");
            reach = dipath_reach(s.graph, s.tau, x, opt.search_cap);
            for (int v : yminus)
                if (!reach.positive[static_cast<std::size_t>(v)])
                    throw InvariantViolation("Y_x^- not positively reachable after switching");
        }
        auto tad = find_tadpole(s, x, reach.positive, opt.search_cap);
        if (!tad) throw InvariantViolation("no tadpole with tail end at source " + std::to_string(x + 1));
        b = s.boundary();
        long long bx = b[static_cast<std::size_t>(x)];
        int y = tad->meet;
        long long eta = s.eta();
        if (bx >= 2 * k) {
            if (y != x && b[static_cast<std::size_t>(y)] == 0) {
                s.minus(tad->tail.edges());
                ++st.source_splits;
                expect_eta(eta, "tail minusing");
            } else {
                s.minus(tad->edges());
                ++st.tadpole_minus;
                expect_eta(eta - 2 * k, "tadpole minusing");
            }
        } else if (bx == k) {
            if (y == x) throw InvariantViolation("single source with boundary k and a tailless tadpole");
            s.minus(tad->tail.edges());
            ++st.relocations;
            expect_eta(eta, "source relocation");
        } else {
            throw InvariantViolation("source boundary not a positive multiple of k");
        }
    }
}

/// Replays a journal from the lifted input; returns the final state (throws on malformed entries).
inline ConversionState replay_conversion(const SignedGraph& g, const IntegerFlow& fa, long long k,
                                         const std::vector<JournalEntry>& journal) {
    ConversionState s = ConversionState::lift(g, fa, k);
    for (const auto& j : journal) {
        for (int x : j.items)
            if (x < 0 || x >= (j.op == JournalEntry::Op::minus ? g.num_edges() : g.num_vertices()))
                throw PreconditionError("journal entry out of range");
        if (j.op == JournalEntry::Op::minus) s.minus(j.items);
        else s.switch_at(j.items);
    }
    return s;
}

} // namespace sgflow
