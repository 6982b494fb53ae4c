#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sgflow/error.hpp"
#include "sgflow/flow.hpp"
#include "sgflow/graph.hpp"
#include "sgflow/primitives.hpp"

namespace sgflow {

struct CorpusItem {
    std::string name;
    SignedGraph graph;
};

// ---------------------------------------------------------------------------
// Named instances

/// Petersen graph: outer cycle 1..5 and spokes positive, inner pentagram on 6..10 negative.
inline SignedGraph signed_petersen() {
    SignedGraph g(10);
    for (int i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5, 1);
    for (int i = 0; i < 5; ++i) g.add_edge(i, i + 5, 1);
    for (int i = 0; i < 5; ++i) g.add_edge(5 + i, 5 + (i + 2) % 5, -1);
    return g;
}

/// t copies of K4 glued on v1v2 (vertices 1, 2), that edge removed, negative loops at v1 and v2.
/// Edge order: loop at v1, loop at v2, then per copy (v1,a) (v1,b) (a,v2) (b,v2) (a,b).
inline SignedGraph g_family(int t) {
    if (t < 1) throw PreconditionError("t must be at least 1");
    SignedGraph g(2 + 2 * t);
    g.add_edge(0, 0, -1);
    g.add_edge(1, 1, -1);
    for (int i = 0; i < t; ++i) {
        int a = 2 + 2 * i, b = 3 + 2 * i;
        g.add_edge(0, a, 1);
        g.add_edge(0, b, 1);
        g.add_edge(a, 1, 1);
        g.add_edge(b, 1, 1);
        g.add_edge(a, b, 1);
    }
    return g;
}

/// Circular 3-flow on g_family(t): loops carry 3/2, every other value is 1 or 2.
inline FlowAssignment g_family_circular_witness(int t) {
    SignedGraph g = g_family(t);
    Orientation o = Orientation::canonical(g);
    std::vector<Rational> val(static_cast<std::size_t>(g.num_edges()));
    val[0] = Rational(3, 2);
    val[1] = Rational(3, 2);
    o.reverse_edge(1);
    for (int i = 0; i < t; ++i) {
        int base = 2 + 5 * i;
        // (v1,a) (v1,b) (a,v2) (b,v2) (a,b)
        if (i == 0) {
            const bool rev[5] = {true, true, true, true, false};
            const long long f[5] = {1, 2, 2, 1, 1};
            for (int j = 0; j < 5; ++j) {
                if (rev[j]) o.reverse_edge(base + j);
                val[static_cast<std::size_t>(base + j)] = f[j];
            }
        } else {
            const bool rev[5] = {false, true, true, false, false};
            const long long f[5] = {1, 1, 1, 1, 2};
            for (int j = 0; j < 5; ++j) {
                if (rev[j]) o.reverse_edge(base + j);
                val[static_cast<std::size_t>(base + j)] = f[j];
            }
        }
    }
    return {o, val};
}

/// Switches so that a BFS spanning forest (lowest edge ids first) is all positive.
inline SignedGraph switching_canonical(const SignedGraph& g) {
    const int n = g.num_vertices();
    std::vector<int> pot(static_cast<std::size_t>(n), 0);
    for (int s = 0; s < n; ++s) {
        if (pot[static_cast<std::size_t>(s)] != 0) continue;
        pot[static_cast<std::size_t>(s)] = 1;
        std::vector<int> q{s};
        for (std::size_t i = 0; i < q.size(); ++i) {
            int v = q[i];
            for (int h : g.half_edges_at(v)) {
                int w = g.vertex_of(other_half(h));
                if (pot[static_cast<std::size_t>(w)] != 0) continue;
                pot[static_cast<std::size_t>(w)] = pot[static_cast<std::size_t>(v)] * g.sign(edge_of(h));
                q.push_back(w);
            }
        }
    }
    std::vector<int> s;
    for (int v = 0; v < n; ++v)
        if (pot[static_cast<std::size_t>(v)] < 0) s.push_back(v);
    return switch_vertices(g, s);
}

/// Wheel with hub 1 and rim 2..6 (spokes first, then rim edges); one signature per switching class.
inline std::vector<CorpusItem> w5_all_signatures() {
    std::vector<std::pair<int, int>> ends;
    for (int i = 1; i <= 5; ++i) ends.emplace_back(0, i);
    for (int i = 1; i <= 5; ++i) ends.emplace_back(i, i % 5 + 1);
    std::set<std::vector<int>> seen;
    std::vector<CorpusItem> out;
    for (int mask = 0; mask < (1 << 10); ++mask) {
        SignedGraph g(6);
        for (int e = 0; e < 10; ++e) g.add_edge(ends[static_cast<std::size_t>(e)].first, ends[static_cast<std::size_t>(e)].second,
                                                (mask >> e) & 1 ? -1 : 1);
        SignedGraph c = switching_canonical(g);
        std::vector<int> key;
        for (const Edge& e : c.edges()) key.push_back(e.sign);
        if (!seen.insert(key).second) continue;
        out.push_back({"w5-" + std::to_string(out.size() + 1), c});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

namespace detail {

/// Multigraph as multiplicities of the upper triangle (diagonal = loops), row-major.
using Multi = std::vector<std::uint8_t>;

inline int tri_index(int n, int i, int j) { return i * n - i * (i - 1) / 2 + (j - i); }

inline Multi permute(const Multi& m, int n, const std::vector<int>& p) {
    Multi out(m.size(), 0);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int a = p[static_cast<std::size_t>(i)], b = p[static_cast<std::size_t>(j)];
            if (a > b) std::swap(a, b);
            out[static_cast<std::size_t>(tri_index(n, a, b))] = m[static_cast<std::size_t>(tri_index(n, i, j))];
        }
    return out;
}

inline std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline Multi canonical_multi(const Multi& m, int n, const std::vector<std::vector<int>>& perms) {
    Multi best;
    for (const auto& p : perms) {
        Multi c = permute(m, n, p);
        if (best.empty() || c > best) best = std::move(c);
    }
    return best;
}

inline bool multi_connected(const Multi& m, int n) {
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (m[static_cast<std::size_t>(tri_index(n, i, j))]) parent[static_cast<std::size_t>(find(i))] = find(j);
    for (int i = 1; i < n; ++i)
        if (find(i) != find(0)) return false;
    return true;
}

/// Signature key invariant under switching and automorphisms: min over both of the sorted signed edge list.
inline std::vector<int> signed_key(const std::vector<Edge>& edges, int n, const std::vector<std::vector<int>>& autos) {
    std::vector<int> best;
    std::vector<int> key;
    key.reserve(edges.size());
    for (const auto& p : autos)
        for (int s = 0; s < (1 << (n - 1)); ++s) {
            key.clear();
            for (const Edge& e : edges) {
                int a = p[static_cast<std::size_t>(e.u)], b = p[static_cast<std::size_t>(e.v)];
                int sg = e.sign;
                if (e.u != e.v && (((s >> e.u) & 1) != ((s >> e.v) & 1))) sg = -sg;
                if (a > b) std::swap(a, b);
                key.push_back((a * 8 + b) * 2 + (sg < 0));
            }
            std::sort(key.begin(), key.end());
            if (best.empty() || key < best) best = key;
        }
    return best;
}

} // namespace detail

/// Every connected multigraph (loops and parallel edges allowed) with 1..max_v vertices and 1..max_e edges, up to
/// isomorphism, each with one signature per class under switching and automorphism. Deterministic order.
inline std::vector<CorpusItem> enumerate_signed_graphs(int max_v, int max_e) {
    if (max_v < 1 || max_e < 1) throw PreconditionError("bounds must be positive");
    if (max_v > 6 || max_e > 10) throw ResourceCapError("enumeration bounds above 6 vertices / 10 edges");
    std::vector<CorpusItem> out;
    for (int n = 1; n <= max_v; ++n) {
        const auto perms = detail::all_permutations(n);
        const int slots = n * (n + 1) / 2;
        std::set<detail::Multi> level{detail::Multi(static_cast<std::size_t>(slots), 0)};
        for (int m = 1; m <= max_e; ++m) {
            std::set<detail::Multi> next;
            for (const auto& base : level)
                for (int s = 0; s < slots; ++s) {
                    auto c = base;
                    ++c[static_cast<std::size_t>(s)];
                    next.insert(detail::canonical_multi(c, n, perms));
                }
            level = std::move(next);
            int gi = 0;
            for (const auto& mg : level) {
                if (!detail::multi_connected(mg, n)) continue;
                ++gi;
                std::vector<Edge> edges;
                for (int i = 0; i < n; ++i)
                    for (int j = i; j < n; ++j)
                        for (int r = 0; r < mg[static_cast<std::size_t>(detail::tri_index(n, i, j))]; ++r) edges.push_back({i, j, 1});
                std::vector<std::vector<int>> autos;
                for (const auto& p : perms)
                    if (detail::permute(mg, n, p) == mg) autos.push_back(p);
                // BFS tree edges stay positive; the rest range over all sign patterns
                SignedGraph base(n, edges);
                std::vector<char> tree(edges.size(), 0);
                std::vector<char> seen_v(static_cast<std::size_t>(n), 0);
                seen_v[0] = 1;
                std::vector<int> q{0};
                for (std::size_t i = 0; i < q.size(); ++i)
                    for (int h : base.half_edges_at(q[i])) {
                        int w = base.vertex_of(other_half(h));
                        if (seen_v[static_cast<std::size_t>(w)]) continue;
                        seen_v[static_cast<std::size_t>(w)] = 1;
                        tree[static_cast<std::size_t>(edge_of(h))] = 1;
                        q.push_back(w);
                    }
                std::vector<int> free;
                for (int e = 0; e < m; ++e)
                    if (!tree[static_cast<std::size_t>(e)]) free.push_back(e);
                std::set<std::vector<int>> keys;
                int si = 0;
                for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
                    auto es = edges;
                    for (std::size_t b = 0; b < free.size(); ++b)
                        if ((mask >> b) & 1) es[static_cast<std::size_t>(free[b])].sign = -1;
                    if (!keys.insert(detail::signed_key(es, n, autos)).second) continue;
                    ++si;
                    out.push_back({"v" + std::to_string(n) + "e" + std::to_string(m) + "g" + std::to_string(gi) + "s" +
                                       std::to_string(si),
                                   SignedGraph(n, es)});
                }
            }
        }
    }
    return out;
}

/// Seeded random multigraph: a random spanning tree when e >= v - 1, remaining edges uniform over vertex pairs
/// (loops included). Each edge is negative with probability neg_prob.
inline SignedGraph random_signed_graph(std::uint64_t seed, int v, int e, double neg_prob) {
    if (v < 1 || e < 0) throw PreconditionError("need v >= 1 and e >= 0");
    if (neg_prob < 0 || neg_prob > 1) throw PreconditionError("neg_prob must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    auto below = [&](std::uint64_t n) { return static_cast<int>(rng() % n); };
    auto sign = [&] { return static_cast<double>(rng() % 1000000) < neg_prob * 1000000 ? -1 : 1; };
    SignedGraph g(v);
    int made = 0;
    if (e >= v - 1)
        for (int i = 1; i < v; ++i, ++made) {
            int parent = below(static_cast<std::uint64_t>(i));
            int s = sign();
            g.add_edge(parent, i, s);
        }
    for (; made < e; ++made) {
        int a = below(static_cast<std::uint64_t>(v));
        int b = below(static_cast<std::uint64_t>(v));
        int s = sign();
        g.add_edge(std::min(a, b), std::max(a, b), s);
    }
    return g;
}

} // namespace sgflow
