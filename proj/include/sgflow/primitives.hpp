#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sgflow/graph.hpp"

namespace sgflow {

struct Components {
    int count = 0;
    std::vector<int> of; // component id per vertex, numbered in order of smallest vertex

    std::vector<int> vertices(int c) const {
        std::vector<int> out;
        for (int v = 0; v < static_cast<int>(of.size()); ++v)
            if (of[static_cast<std::size_t>(v)] == c) out.push_back(v);
        return out;
    }
};

inline Components connected_components(const SignedGraph& g) {
    Components c;
    c.of.assign(static_cast<std::size_t>(g.num_vertices()), -1);
    std::vector<int> stack;
    for (int s = 0; s < g.num_vertices(); ++s) {
        if (c.of[static_cast<std::size_t>(s)] >= 0) continue;
        c.of[static_cast<std::size_t>(s)] = c.count;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int h : g.half_edges_at(v)) {
                int w = g.vertex_of(other_half(h));
                if (c.of[static_cast<std::size_t>(w)] < 0) {
                    c.of[static_cast<std::size_t>(w)] = c.count;
                    stack.push_back(w);
                }
            }
        }
        ++c.count;
    }
    return c;
}

/// Every vertex has even degree (a loop adds 2).
inline bool is_eulerian(const SignedGraph& g) {
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) % 2 != 0) return false;
    return true;
}

/// Cut-edges, ascending. Loops and parallel edges are never bridges.
inline std::vector<int> find_bridges(const SignedGraph& g) {
    const int n = g.num_vertices();
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0), bridges;
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int v, int parent_edge) {
        disc[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = timer++;
        for (int h : g.half_edges_at(v)) {
            int e = edge_of(h);
            if (e == parent_edge) continue;
            int w = g.vertex_of(other_half(h));
            if (disc[static_cast<std::size_t>(w)] < 0) {
                dfs(w, e);
                low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(w)]);
                if (low[static_cast<std::size_t>(w)] > disc[static_cast<std::size_t>(v)]) bridges.push_back(e);
            } else {
                low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], disc[static_cast<std::size_t>(w)]);
            }
        }
    };
    for (int v = 0; v < n; ++v)
        if (disc[static_cast<std::size_t>(v)] < 0) dfs(v, -1);
    std::sort(bridges.begin(), bridges.end());
    return bridges;
}

/// A walk recorded as the half-edges it departs through, starting at `start`.
struct Walk {
    int start = 0;
    std::vector<int> halves;

    std::vector<int> edges() const {
        std::vector<int> out;
        out.reserve(halves.size());
        for (int h : halves) out.push_back(edge_of(h));
        return out;
    }
    int end(const SignedGraph& g) const { return halves.empty() ? start : g.vertex_of(other_half(halves.back())); }
    std::size_t size() const { return halves.size(); }
};

inline int count_negative(const SignedGraph& g, std::span<const int> edges) {
    int c = 0;
    for (int e : edges)
        if (g.sign(e) < 0) ++c;
    return c;
}

/// Vertices touched by an edge set, ascending.
inline std::vector<int> vertices_of(const SignedGraph& g, std::span<const int> edges) {
    std::vector<int> vs;
    for (int e : edges) {
        vs.push_back(g.edge(e).u);
        vs.push_back(g.edge(e).v);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

/// Degree of each vertex within an edge subset (loops count 2).
inline std::vector<int> subset_degrees(const SignedGraph& g, std::span<const int> edges) {
    std::vector<int> d(static_cast<std::size_t>(g.num_vertices()), 0);
    for (int e : edges) {
        ++d[static_cast<std::size_t>(g.edge(e).u)];
        ++d[static_cast<std::size_t>(g.edge(e).v)];
    }
    return d;
}

/// True when the edge subset is nonempty, duplicate-free, connected, and 2-regular on its vertices.
inline bool is_circuit(const SignedGraph& g, std::span<const int> edges) {
    if (edges.empty()) return false;
    std::vector<int> sorted(edges.begin(), edges.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (int e : sorted)
        if (e < 0 || e >= g.num_edges()) return false;
    auto deg = subset_degrees(g, sorted);
    for (int v : vertices_of(g, sorted))
        if (deg[static_cast<std::size_t>(v)] != 2) return false;
    auto sub = edge_subgraph(g, sorted);
    auto comps = connected_components(sub.graph);
    int c = comps.of[static_cast<std::size_t>(g.edge(sorted[0]).u)];
    for (int v : vertices_of(g, sorted))
        if (comps.of[static_cast<std::size_t>(v)] != c) return false;
    return true;
}

/// Traverses a circuit edge set from `start`, taking the lowest half-edge first.
inline Walk circuit_walk(const SignedGraph& g, std::span<const int> edges, int start) {
    std::vector<char> in(static_cast<std::size_t>(g.num_edges()), 0), used(static_cast<std::size_t>(g.num_edges()), 0);
    for (int e : edges) in[static_cast<std::size_t>(e)] = 1;
    Walk w{start, {}};
    int v = start;
    for (std::size_t step = 0; step < edges.size(); ++step) {
        int next = -1;
        for (int h : g.half_edges_at(v))
            if (in[static_cast<std::size_t>(edge_of(h))] && !used[static_cast<std::size_t>(edge_of(h))]) {
                next = h;
                break;
            }
        if (next < 0) throw PreconditionError("edge set is not a circuit through the start vertex");
        used[static_cast<std::size_t>(edge_of(next))] = 1;
        w.halves.push_back(next);
        v = g.vertex_of(other_half(next));
    }
    if (v != start) throw PreconditionError("edge set does not close into a circuit");
    return w;
}

/// Traverses a path edge set from `from`; the edges must form a simple path starting there.
inline Walk path_walk(const SignedGraph& g, std::span<const int> edges, int from) {
    Walk w = {from, {}};
    std::vector<char> in(static_cast<std::size_t>(g.num_edges()), 0), used(static_cast<std::size_t>(g.num_edges()), 0);
    for (int e : edges) in[static_cast<std::size_t>(e)] = 1;
    int v = from;
    for (std::size_t step = 0; step < edges.size(); ++step) {
        int next = -1;
        for (int h : g.half_edges_at(v))
            if (in[static_cast<std::size_t>(edge_of(h))] && !used[static_cast<std::size_t>(edge_of(h))]) {
                next = h;
                break;
            }
        if (next < 0) throw PreconditionError("edge set is not a path from the given vertex");
        used[static_cast<std::size_t>(edge_of(next))] = 1;
        w.halves.push_back(next);
        v = g.vertex_of(other_half(next));
    }
    return w;
}

// ---------------------------------------------------------------------------
// Balance

/// Either a switching potential (balanced) or an unbalanced circuit (unbalanced).
struct BalanceCertificate {
    std::optional<std::vector<int>> potential;
    std::vector<int> unbalanced_circuit; // edge sequence in traversal order

    bool balanced() const { return potential.has_value(); }

    bool verify(const SignedGraph& g) const {
        if (potential) {
            const auto& p = *potential;
            if (p.size() != static_cast<std::size_t>(g.num_vertices())) return false;
            for (const Edge& e : g.edges()) {
                if (e.is_loop()) {
                    if (e.sign != 1) return false;
                } else if (e.sign != p[static_cast<std::size_t>(e.u)] * p[static_cast<std::size_t>(e.v)]) {
                    return false;
                }
            }
            return true;
        }
        return is_circuit(g, unbalanced_circuit) && count_negative(g, unbalanced_circuit) % 2 == 1;
    }
};

/// Spanning-forest potential propagation; the first inconsistent non-tree edge (by id) closes the witness.
inline BalanceCertificate is_balanced(const SignedGraph& g) {
    const int n = g.num_vertices();
    std::vector<int> pot(static_cast<std::size_t>(n), 0), parent_edge(static_cast<std::size_t>(n), -1),
        depth(static_cast<std::size_t>(n), 0);
    std::vector<char> tree(static_cast<std::size_t>(g.num_edges()), 0);
    for (int s = 0; s < n; ++s) {
        if (pot[static_cast<std::size_t>(s)] != 0) continue;
        pot[static_cast<std::size_t>(s)] = 1;
        std::deque<int> q{s};
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int h : g.half_edges_at(v)) {
                int w = g.vertex_of(other_half(h));
                if (pot[static_cast<std::size_t>(w)] != 0) continue;
                int e = edge_of(h);
                pot[static_cast<std::size_t>(w)] = pot[static_cast<std::size_t>(v)] * g.sign(e);
                parent_edge[static_cast<std::size_t>(w)] = e;
                depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
                tree[static_cast<std::size_t>(e)] = 1;
                q.push_back(w);
            }
        }
    }
    auto parent_of = [&](int v) {
        const Edge& e = g.edge(parent_edge[static_cast<std::size_t>(v)]);
        return e.u == v ? e.v : e.u;
    };
    for (int e = 0; e < g.num_edges(); ++e) {
        if (tree[static_cast<std::size_t>(e)]) continue;
        const Edge& ed = g.edge(e);
        bool bad = ed.is_loop() ? ed.sign < 0
                                : ed.sign != pot[static_cast<std::size_t>(ed.u)] * pot[static_cast<std::size_t>(ed.v)];
        if (!bad) continue;
        BalanceCertificate cert;
        if (ed.is_loop()) {
            cert.unbalanced_circuit = {e};
            return cert;
        }
        std::vector<int> up, down;
        int a = ed.u, b = ed.v;
        while (depth[static_cast<std::size_t>(a)] > depth[static_cast<std::size_t>(b)]) {
            up.push_back(parent_edge[static_cast<std::size_t>(a)]);
            a = parent_of(a);
        }
        while (depth[static_cast<std::size_t>(b)] > depth[static_cast<std::size_t>(a)]) {
            down.push_back(parent_edge[static_cast<std::size_t>(b)]);
            b = parent_of(b);
        }
        while (a != b) {
            up.push_back(parent_edge[static_cast<std::size_t>(a)]);
            a = parent_of(a);
            down.push_back(parent_edge[static_cast<std::size_t>(b)]);
            b = parent_of(b);
        }
        cert.unbalanced_circuit = up;
        cert.unbalanced_circuit.insert(cert.unbalanced_circuit.end(), down.rbegin(), down.rend());
        cert.unbalanced_circuit.push_back(e);
        return cert;
    }
    BalanceCertificate cert;
    cert.potential = std::move(pot);
    return cert;
}

inline std::optional<std::vector<int>> find_unbalanced_circuit(const SignedGraph& g) {
    auto cert = is_balanced(g);
    if (cert.balanced()) return std::nullopt;
    return cert.unbalanced_circuit;
}

/// Balance of the subgraph formed by an edge subset, with the witness mapped to host edge ids.
inline BalanceCertificate is_balanced_subset(const SignedGraph& g, std::span<const int> edges) {
    auto sub = edge_subgraph(g, edges);
    auto cert = is_balanced(sub.graph);
    for (int& e : cert.unbalanced_circuit) e = sub.edge_map[static_cast<std::size_t>(e)];
    return cert;
}

// ---------------------------------------------------------------------------
// Circuit enumeration

struct CircuitEnumeration {
    std::vector<Walk> circuits;
    bool cap_exceeded = false;
};

/// All circuits (as walks from their smallest vertex), ordered by length then by sorted edge ids.
/// Stops with cap_exceeded once more than `cap` circuits have been produced.
inline CircuitEnumeration enumerate_circuits(const SignedGraph& g, std::uint64_t cap = 1'000'000) {
    CircuitEnumeration out;
    const int n = g.num_vertices();
    std::vector<char> on_path(static_cast<std::size_t>(n), 0);
    std::vector<int> halves;
    bool stop = false;
    auto emit = [&](int start, const std::vector<int>& hs) {
        if (out.circuits.size() >= cap) {
            out.cap_exceeded = true;
            stop = true;
            return;
        }
        out.circuits.push_back({start, hs});
    };
    for (int s = 0; s < n && !stop; ++s) {
        for (int h : g.half_edges_at(s)) {
            int e = edge_of(h);
            if (g.edge(e).is_loop() && (h & 1) == 0) emit(s, {h});
        }
        std::function<void(int)> extend = [&](int v) {
            for (int h : g.half_edges_at(v)) {
                if (stop) return;
                int e = edge_of(h);
                if (g.edge(e).is_loop()) continue;
                int w = g.vertex_of(other_half(h));
                if (w == s) {
                    if (!halves.empty() && e > edge_of(halves.front())) {
                        halves.push_back(h);
                        emit(s, halves);
                        halves.pop_back();
                    }
                    continue;
                }
                if (w < s || on_path[static_cast<std::size_t>(w)]) continue;
                on_path[static_cast<std::size_t>(w)] = 1;
                halves.push_back(h);
                extend(w);
                halves.pop_back();
                on_path[static_cast<std::size_t>(w)] = 0;
            }
        };
        on_path[static_cast<std::size_t>(s)] = 1;
        extend(s);
        on_path[static_cast<std::size_t>(s)] = 0;
    }
    auto key = [](const Walk& w) {
        auto es = w.edges();
        std::sort(es.begin(), es.end());
        return es;
    };
    std::stable_sort(out.circuits.begin(), out.circuits.end(), [&](const Walk& a, const Walk& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return key(a) < key(b);
    });
    return out;
}

/// Shortest path (edge ids, in order from the `from` side) joining two disjoint vertex sets, or nullopt.
/// Internal vertices avoid both sets; only edges allowed by `allowed` (may be empty = all) are used.
inline std::optional<std::vector<int>> shortest_connecting_path(const SignedGraph& g, std::span<const int> from,
                                                                std::span<const int> to,
                                                                std::span<const char> allowed = {}) {
    const int n = g.num_vertices();
    std::vector<int> via(static_cast<std::size_t>(n), -2);
    std::vector<char> target(static_cast<std::size_t>(n), 0);
    for (int v : to) target[static_cast<std::size_t>(v)] = 1;
    std::deque<int> q;
    for (int v : from) {
        via[static_cast<std::size_t>(v)] = -1;
        q.push_back(v);
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int h : g.half_edges_at(v)) {
            int e = edge_of(h);
            if (!allowed.empty() && !allowed[static_cast<std::size_t>(e)]) continue;
            int w = g.vertex_of(other_half(h));
            if (via[static_cast<std::size_t>(w)] != -2) continue;
            via[static_cast<std::size_t>(w)] = h;
            if (target[static_cast<std::size_t>(w)]) {
                std::vector<int> path;
                int x = w;
                while (via[static_cast<std::size_t>(x)] >= 0) {
                    int hh = via[static_cast<std::size_t>(x)];
                    path.push_back(edge_of(hh));
                    x = g.vertex_of(hh);
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            q.push_back(w);
        }
    }
    return std::nullopt;
}

} // namespace sgflow
