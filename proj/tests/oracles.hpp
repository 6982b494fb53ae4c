#pragma once
// Slow reference implementations used to cross-check the library on small graphs.
// Each works from the definitions directly, by exhaustive enumeration of vertex or edge subsets.

#include <cstdint>
#include <numeric>
#include <vector>

#include "sgflow/graph.hpp"

namespace oracle {

using sgflow::SignedGraph;

inline int components(const SignedGraph& g, std::uint32_t edge_mask) {
    std::vector<int> parent(static_cast<std::size_t>(g.num_vertices()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    int count = g.num_vertices();
    for (int e = 0; e < g.num_edges(); ++e) {
        if (!((edge_mask >> e) & 1)) continue;
        int a = find(g.edge(e).u), b = find(g.edge(e).v);
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            --count;
        }
    }
    return count;
}

inline std::uint32_t all_edges(const SignedGraph& g) { return g.num_edges() >= 32 ? ~0u : (1u << g.num_edges()) - 1; }

/// Balanced: some switching makes every edge positive.
inline bool balanced(const SignedGraph& g) {
    const int n = g.num_vertices();
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        bool ok = true;
        for (const auto& e : g.edges()) {
            int sign = e.sign;
            if (((s >> e.u) & 1) != ((s >> e.v) & 1)) sign = -sign;
            if (sign < 0) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

inline bool bridge(const SignedGraph& g, int e) {
    return components(g, all_edges(g) & ~(1u << e)) > components(g, all_edges(g));
}

struct Circuit {
    std::uint32_t edges = 0;
    std::uint32_t vertices = 0;
    bool unbalanced = false;
};

/// Every circuit as an edge subset: connected, every touched vertex of degree 2 (a loop counts twice).
inline std::vector<Circuit> circuits(const SignedGraph& g) {
    std::vector<Circuit> out;
    const int m = g.num_edges();
    for (std::uint32_t s = 1; s < (1u << m); ++s) {
        std::vector<int> deg(static_cast<std::size_t>(g.num_vertices()), 0);
        Circuit c{s, 0, false};
        int neg = 0;
        for (int e = 0; e < m; ++e)
            if ((s >> e) & 1) {
                ++deg[static_cast<std::size_t>(g.edge(e).u)];
                ++deg[static_cast<std::size_t>(g.edge(e).v)];
                c.vertices |= 1u << g.edge(e).u;
                c.vertices |= 1u << g.edge(e).v;
                if (g.sign(e) < 0) ++neg;
            }
        bool ok = true;
        for (int v = 0; v < g.num_vertices(); ++v)
            if (deg[static_cast<std::size_t>(v)] != 0 && deg[static_cast<std::size_t>(v)] != 2) ok = false;
        if (!ok) continue;
        int touched = __builtin_popcount(c.vertices);
        if (components(g, s) != g.num_vertices() - touched + 1) continue;
        c.unbalanced = neg % 2 != 0;
        out.push_back(c);
    }
    return out;
}

/// Two vertex-disjoint unbalanced circuits in one component.
inline bool long_barbell(const SignedGraph& g) {
    auto cs = circuits(g);
    const auto all = all_edges(g);
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            if (!cs[i].unbalanced || !cs[j].unbalanced || (cs[i].vertices & cs[j].vertices)) continue;
            // same component: joining them by an extra edge does not merge components
            SignedGraph h = g;
            h.add_edge(__builtin_ctz(cs[i].vertices), __builtin_ctz(cs[j].vertices), 1);
            if (components(h, all_edges(h)) == components(g, all)) return true;
        }
    return false;
}

/// Edge subsets forming a signed circuit: balanced circuit, two unbalanced circuits meeting in one vertex,
/// or two disjoint unbalanced circuits plus a path meeting each only at its ends.
inline std::vector<std::uint32_t> signed_circuits(const SignedGraph& g) {
    auto cs = circuits(g);
    std::vector<std::uint32_t> out;
    for (const auto& c : cs)
        if (!c.unbalanced) out.push_back(c.edges);
    const int m = g.num_edges();
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            const auto &a = cs[i], &b = cs[j];
            if (!a.unbalanced || !b.unbalanced || (a.edges & b.edges)) continue;
            std::uint32_t common = a.vertices & b.vertices;
            if (__builtin_popcount(common) == 1) {
                out.push_back(a.edges | b.edges);
                continue;
            }
            if (common) continue;
            // paths: loop-free edge sets outside both circuits forming a simple path from a to b
            std::uint32_t rest = ((1u << m) - 1) & ~(a.edges | b.edges);
            for (std::uint32_t p = rest; p; p = (p - 1) & rest) {
                std::vector<int> deg(static_cast<std::size_t>(g.num_vertices()), 0);
                std::uint32_t pv = 0;
                bool loop = false;
                for (int e = 0; e < m; ++e)
                    if ((p >> e) & 1) {
                        if (g.edge(e).u == g.edge(e).v) loop = true;
                        ++deg[static_cast<std::size_t>(g.edge(e).u)];
                        ++deg[static_cast<std::size_t>(g.edge(e).v)];
                        pv |= 1u << g.edge(e).u;
                        pv |= 1u << g.edge(e).v;
                    }
                if (loop || components(g, p) != g.num_vertices() - __builtin_popcount(pv) + 1) continue;
                int ends = 0, in_a = 0, in_b = 0;
                bool ok = true;
                for (int v = 0; v < g.num_vertices(); ++v) {
                    int d = deg[static_cast<std::size_t>(v)];
                    if (d == 0) continue;
                    if (d > 2) ok = false;
                    bool on_a = (a.vertices >> v) & 1, on_b = (b.vertices >> v) & 1;
                    if (d == 1) {
                        ++ends;
                        in_a += on_a;
                        in_b += on_b;
                    } else if (on_a || on_b) {
                        ok = false;
                    }
                }
                if (ok && ends == 2 && in_a == 1 && in_b == 1) out.push_back(a.edges | b.edges | p);
            }
        }
    return out;
}

/// Flow-admissible: every edge lies in some signed circuit.
inline bool admissible(const SignedGraph& g) {
    std::uint32_t covered = 0;
    for (auto s : signed_circuits(g)) covered |= s;
    return covered == all_edges(g);
}

} // namespace oracle
