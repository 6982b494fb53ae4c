#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sgflow/error.hpp"

namespace sgflow {

/// An edge of a signed multigraph. `u == v` marks a loop; `sign` is +1 or -1.
struct Edge {
    int u = 0;
    int v = 0;
    int sign = 1;

    bool is_loop() const { return u == v; }
    bool is_negative() const { return sign < 0; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// One of the two halves of an edge. Half-edge `end == 0` sits at `Edge::u`, `end == 1` at `Edge::v`.
struct HalfEdgeRef {
    int edge = 0;
    int end = 0;

    int index() const { return 2 * edge + end; }
    HalfEdgeRef other() const { return {edge, 1 - end}; }
    static HalfEdgeRef from_index(int h) { return {h / 2, h % 2}; }
    friend bool operator==(const HalfEdgeRef&, const HalfEdgeRef&) = default;
};

inline int other_half(int h) { return h ^ 1; }
inline int edge_of(int h) { return h >> 1; }

/// Signed multigraph over dense vertex ids 0..n-1. Edge identity is positional.
class SignedGraph {
public:
    SignedGraph() = default;
    explicit SignedGraph(int num_vertices) : n_(num_vertices), incidence_(static_cast<std::size_t>(num_vertices)) {
        if (num_vertices < 0) throw PreconditionError("negative vertex count");
    }
    SignedGraph(int num_vertices, const std::vector<Edge>& edges) : SignedGraph(num_vertices) {
        for (const Edge& e : edges) add_edge(e.u, e.v, e.sign);
    }

    int add_edge(int u, int v, int sign) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw PreconditionError("edge endpoint out of range");
        if (sign != 1 && sign != -1) throw PreconditionError("edge sign must be +1 or -1");
        int id = static_cast<int>(edges_.size());
        edges_.push_back({u, v, sign});
        incidence_[static_cast<std::size_t>(u)].push_back(2 * id);
        incidence_[static_cast<std::size_t>(v)].push_back(2 * id + 1);
        return id;
    }

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int num_half_edges() const { return 2 * num_edges(); }

    const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
    std::span<const Edge> edges() const { return edges_; }
    int sign(int e) const { return edge(e).sign; }

    /// Vertex carrying half-edge `h` (index form).
    int vertex_of(int h) const {
        const Edge& e = edge(edge_of(h));
        return (h & 1) ? e.v : e.u;
    }
    int vertex_of(HalfEdgeRef h) const { return vertex_of(h.index()); }

    /// Half-edge indices at `v`, in edge order; a loop contributes both of its halves.
    const std::vector<int>& half_edges_at(int v) const { return incidence_[static_cast<std::size_t>(v)]; }

    int degree(int v) const { return static_cast<int>(half_edges_at(v).size()); }

    std::vector<int> negative_edges() const {
        std::vector<int> out;
        for (int e = 0; e < num_edges(); ++e)
            if (edges_[static_cast<std::size_t>(e)].is_negative()) out.push_back(e);
        return out;
    }
    int num_negative() const {
        return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_negative(); }));
    }

    /// Same underlying multigraph with a replacement signature.
    SignedGraph with_signs(std::span<const int> signs) const {
        SignedGraph g(n_);
        for (int e = 0; e < num_edges(); ++e) g.add_edge(edge(e).u, edge(e).v, signs[static_cast<std::size_t>(e)]);
        return g;
    }

    friend bool operator==(const SignedGraph& a, const SignedGraph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incidence_;
};

/// Edge-induced subgraph on the same vertex set; `edge_map[i]` is the host id of edge i.
struct Subgraph {
    SignedGraph graph;
    std::vector<int> edge_map;
};

inline Subgraph edge_subgraph(const SignedGraph& g, std::span<const int> edges) {
    Subgraph s{SignedGraph(g.num_vertices()), {}};
    for (int e : edges) {
        const Edge& ed = g.edge(e);
        s.graph.add_edge(ed.u, ed.v, ed.sign);
        s.edge_map.push_back(e);
    }
    return s;
}

/// Subgraph keeping only edges whose endpoints both satisfy `keep`.
template <class Pred>
Subgraph vertex_restricted(const SignedGraph& g, Pred keep) {
    std::vector<int> kept;
    for (int e = 0; e < g.num_edges(); ++e)
        if (keep(g.edge(e).u) && keep(g.edge(e).v)) kept.push_back(e);
    return edge_subgraph(g, kept);
}

// ---------------------------------------------------------------------------
// Graph file format

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline bool parse_int(std::string_view s, long long& out) {
    if (s.empty() || s.size() > 18) return false;
    long long v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++lineno;
        f(lineno, line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
}

} // namespace detail

/// Parses `p <n> <m>` followed by exactly m lines `e <u> <v> <+|->` (1-based ids). `#` starts a comment line.
inline SignedGraph parse_graph(std::string_view text) {
    SignedGraph g;
    bool have_header = false;
    long long expected = 0;
    int last_line = 0;
    detail::for_each_line(text, [&](int lineno, std::string_view line) {
        last_line = lineno;
        auto tok = detail::split_ws(line);
        if (tok.empty() || tok[0][0] == '#') return;
        if (tok[0] == "p") {
            long long n = 0, m = 0;
            if (have_header) throw ParseError(lineno, "duplicate header");
            if (tok.size() != 3 || !detail::parse_int(tok[1], n) || !detail::parse_int(tok[2], m))
                throw ParseError(lineno, "expected 'p <num_vertices> <num_edges>'");
            if (n > 1'000'000 || m > 10'000'000) throw ParseError(lineno, "graph too large");
            g = SignedGraph(static_cast<int>(n));
            expected = m;
            have_header = true;
            return;
        }
        if (tok[0] == "e") {
            if (!have_header) throw ParseError(lineno, "edge line before header");
            long long u = 0, v = 0;
            if (tok.size() != 4 || !detail::parse_int(tok[1], u) || !detail::parse_int(tok[2], v))
                throw ParseError(lineno, "expected 'e <u> <v> <+|->'");
            if (u < 1 || v < 1 || u > g.num_vertices() || v > g.num_vertices())
                throw ParseError(lineno, "unknown vertex reference");
            int sign = 0;
            if (tok[3] == "+") sign = 1;
            else if (tok[3] == "-") sign = -1;
            else throw ParseError(lineno, "sign token must be '+' or '-'");
            if (g.num_edges() >= expected) throw ParseError(lineno, "more edge lines than declared");
            g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1), sign);
            return;
        }
        throw ParseError(lineno, "unrecognised line type '" + std::string(tok[0]) + "'");
    });
    if (!have_header) throw ParseError(last_line, "missing header");
    if (g.num_edges() != expected)
        throw ParseError(last_line, "expected " + std::to_string(expected) + " edge lines, found " +
                                        std::to_string(g.num_edges()));
    return g;
}

inline std::string serialize_graph(const SignedGraph& g) {
    std::ostringstream os;
    os << "p " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const Edge& e : g.edges()) os << "e " << e.u + 1 << ' ' << e.v + 1 << ' ' << (e.sign > 0 ? '+' : '-') << '\n';
    return os.str();
}

/// FNV-1a over the canonical serialization, as "fnv1a64:<16 hex digits>".
inline std::string content_hash(const SignedGraph& g) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : serialize_graph(g)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

// ---------------------------------------------------------------------------
// Switching

namespace detail {
inline std::vector<char> vertex_mask(const SignedGraph& g, std::span<const int> s) {
    std::vector<char> in(static_cast<std::size_t>(g.num_vertices()), 0);
    for (int v : s) {
        if (v < 0 || v >= g.num_vertices()) throw PreconditionError("unknown vertex " + std::to_string(v) + " in switching set");
        in[static_cast<std::size_t>(v)] = 1;
    }
    return in;
}
} // namespace detail

/// Flips the sign of every non-loop edge with exactly one endpoint in `s`.
inline SignedGraph switch_vertices(const SignedGraph& g, std::span<const int> s) {
    auto in = detail::vertex_mask(g, s);
    SignedGraph out(g.num_vertices());
    for (const Edge& e : g.edges()) {
        bool flip = in[static_cast<std::size_t>(e.u)] != in[static_cast<std::size_t>(e.v)];
        out.add_edge(e.u, e.v, flip ? -e.sign : e.sign);
    }
    return out;
}

} // namespace sgflow
