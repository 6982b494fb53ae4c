#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sgflow/error.hpp"
#include "sgflow/graph.hpp"
#include "sgflow/rational.hpp"

namespace sgflow {

/// Direction (+1 away from the vertex, -1 toward it) of every half-edge.
/// Valid for a graph when tau(h1) * tau(h2) == -sigma(e) on every edge.
class Orientation {
public:
    Orientation() = default;
    explicit Orientation(std::vector<std::int8_t> dir) : dir_(std::move(dir)) {}

    /// Positive edges run first -> second endpoint; negative edges have both halves pointing outward.
    static Orientation canonical(const SignedGraph& g) {
        std::vector<std::int8_t> d(static_cast<std::size_t>(g.num_half_edges()));
        for (int e = 0; e < g.num_edges(); ++e) {
            d[static_cast<std::size_t>(2 * e)] = 1;
            d[static_cast<std::size_t>(2 * e + 1)] = static_cast<std::int8_t>(g.sign(e) > 0 ? -1 : 1);
        }
        return Orientation(std::move(d));
    }

    /// Canonical orientation with both halves of the listed edges reversed.
    static Orientation from_flip_set(const SignedGraph& g, std::span<const int> flipped) {
        Orientation o = canonical(g);
        for (int e : flipped) {
            if (e < 0 || e >= g.num_edges()) throw PreconditionError("flip-set edge out of range");
            o.reverse_edge(e);
        }
        return o;
    }

    int operator[](int h) const { return dir_[static_cast<std::size_t>(h)]; }
    int at(HalfEdgeRef h) const { return (*this)[h.index()]; }
    int num_half_edges() const { return static_cast<int>(dir_.size()); }

    void flip_half(int h) { dir_[static_cast<std::size_t>(h)] = static_cast<std::int8_t>(-dir_[static_cast<std::size_t>(h)]); }
    void reverse_edge(int e) {
        flip_half(2 * e);
        flip_half(2 * e + 1);
    }

    /// Signature this orientation encodes on edge e.
    int implied_sign(int e) const { return -(*this)[2 * e] * (*this)[2 * e + 1]; }

    bool consistent_with(const SignedGraph& g) const {
        if (num_half_edges() != g.num_half_edges()) return false;
        for (int e = 0; e < g.num_edges(); ++e)
            if (implied_sign(e) != g.sign(e)) return false;
        return true;
    }

    /// Edges reversed relative to the canonical orientation of `g`.
    std::vector<int> flip_set(const SignedGraph& g) const {
        if (!consistent_with(g)) throw PreconditionError("orientation inconsistent with signature");
        std::vector<int> out;
        for (int e = 0; e < g.num_edges(); ++e)
            if ((*this)[2 * e] < 0) out.push_back(e);
        return out;
    }

    /// Sum of tau over the halves of edge e sitting at vertex v.
    int coefficient(const SignedGraph& g, int e, int v) const {
        int c = 0;
        if (g.edge(e).u == v) c += (*this)[2 * e];
        if (g.edge(e).v == v) c += (*this)[2 * e + 1];
        return c;
    }

    friend bool operator==(const Orientation&, const Orientation&) = default;

private:
    std::vector<std::int8_t> dir_;
};

/// Reverses every half-edge incident with a vertex of `s`; the result orients switch_vertices(g, s).
inline Orientation switch_orientation(const SignedGraph& g, const Orientation& o, std::span<const int> s) {
    auto in = detail::vertex_mask(g, s);
    Orientation out = o;
    for (int h = 0; h < g.num_half_edges(); ++h)
        if (in[static_cast<std::size_t>(g.vertex_of(h))]) out.flip_half(h);
    return out;
}

/// An orientation with one value per edge. `FlowAssignment` (exact rationals) is the
/// general form; `IntegerFlow` is the integer view used by the combinatorial solvers.
template <class T>
struct BasicFlow {
    Orientation orientation;
    std::vector<T> values;

    const T& operator[](int e) const { return values[static_cast<std::size_t>(e)]; }
    T& operator[](int e) { return values[static_cast<std::size_t>(e)]; }
    friend bool operator==(const BasicFlow&, const BasicFlow&) = default;
};

using FlowAssignment = BasicFlow<Rational>;
using IntegerFlow = BasicFlow<long long>;

inline FlowAssignment to_rational_flow(const IntegerFlow& f) {
    FlowAssignment out{f.orientation, {}};
    out.values.reserve(f.values.size());
    for (long long v : f.values) out.values.emplace_back(v);
    return out;
}

/// Integer view when every value is integral and fits in 64 bits.
inline std::optional<IntegerFlow> to_integer_flow(const FlowAssignment& f) {
    IntegerFlow out{f.orientation, {}};
    out.values.reserve(f.values.size());
    for (const Rational& v : f.values) {
        if (!is_integer(v)) return std::nullopt;
        BigInt n = numerator_of(v);
        if (n > BigInt(INT64_MAX) || n < BigInt(INT64_MIN + 1)) return std::nullopt;
        out.values.push_back(n.convert_to<long long>());
    }
    return out;
}

/// d(tau, f)(v) = sum over half-edges h at v of tau(h) * f(e_h).
template <class T>
std::vector<T> boundary(const SignedGraph& g, const Orientation& o, std::span<const T> values) {
    std::vector<T> b(static_cast<std::size_t>(g.num_vertices()), T(0));
    for (int h = 0; h < g.num_half_edges(); ++h) {
        const T& f = values[static_cast<std::size_t>(edge_of(h))];
        auto& slot = b[static_cast<std::size_t>(g.vertex_of(h))];
        if (o[h] > 0) slot += f;
        else slot -= f;
    }
    return b;
}

template <class T>
std::vector<T> boundary(const SignedGraph& g, const BasicFlow<T>& f) {
    return boundary<T>(g, f.orientation, std::span<const T>(f.values));
}

/// Boundary carried by an edge: -(tau(h1) + tau(h2)) * f(e). Nonzero only on negative edges.
template <class T>
T edge_boundary(const BasicFlow<T>& f, int e) {
    int s = f.orientation[2 * e] + f.orientation[2 * e + 1];
    return T(-s) * f[e];
}

/// Which defining conditions check_flow evaluates.
struct FlowKind {
    enum class Type { integer, modulo, circular };
    Type type = Type::integer;
    long long k = 2;
    Rational r = 2;

    static FlowKind integer(long long k) { return {Type::integer, k, Rational(k)}; }
    static FlowKind modulo(long long k) { return {Type::modulo, k, Rational(k)}; }
    static FlowKind circular(Rational r) { return {Type::circular, 0, std::move(r)}; }
};

struct FlowVerdict {
    bool ok = true;
    std::string violation;
    explicit operator bool() const { return ok; }
};

namespace detail {
inline FlowVerdict fail(std::string why) { return {false, std::move(why)}; }
} // namespace detail

/// Evaluates the exact defining conditions of a nowhere-zero integer k-flow, Z_k-flow, or circular r-flow.
/// The first violated condition is reported.
inline FlowVerdict check_flow(const SignedGraph& g, const FlowAssignment& f, const FlowKind& kind) {
    using detail::fail;
    if (kind.type != FlowKind::Type::circular && kind.k < 2) throw PreconditionError("k must be at least 2");
    if (kind.type == FlowKind::Type::circular && kind.r < 2) throw PreconditionError("r must be at least 2");
    if (f.values.size() != static_cast<std::size_t>(g.num_edges())) return fail("values not total over E");
    if (!f.orientation.consistent_with(g)) return fail("orientation inconsistent with signature");

    if (kind.type == FlowKind::Type::modulo) {
        BigInt k(kind.k);
        std::vector<BigInt> residues;
        for (int e = 0; e < g.num_edges(); ++e) {
            if (!is_integer(f[e])) return fail("non-integer value on edge " + std::to_string(e + 1));
            BigInt r = numerator_of(f[e]) % k;
            if (r < 0) r += k;
            if (r == 0) return fail("support != E (edge " + std::to_string(e + 1) + ")");
            residues.push_back(r);
        }
        auto b = boundary<BigInt>(g, f.orientation, residues);
        for (int v = 0; v < g.num_vertices(); ++v)
            if (b[static_cast<std::size_t>(v)] % k != 0)
                return fail("boundary not 0 mod k at vertex " + std::to_string(v + 1));
        return {};
    }

    for (int e = 0; e < g.num_edges(); ++e)
        if (f[e] == 0) return fail("support != E (edge " + std::to_string(e + 1) + ")");
    Rational upper = kind.type == FlowKind::Type::integer ? Rational(kind.k - 1) : kind.r - 1;
    for (int e = 0; e < g.num_edges(); ++e) {
        if (kind.type == FlowKind::Type::integer && !is_integer(f[e]))
            return fail("non-integer value on edge " + std::to_string(e + 1));
        Rational a = abs(f[e]);
        if (a < 1 || a > upper) return fail("value out of range on edge " + std::to_string(e + 1));
    }
    auto b = boundary(g, f);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (b[static_cast<std::size_t>(v)] != 0) return fail("boundary nonzero at vertex " + std::to_string(v + 1));
    return {};
}

inline FlowVerdict check_flow(const SignedGraph& g, const IntegerFlow& f, const FlowKind& kind) {
    return check_flow(g, to_rational_flow(f), kind);
}

/// Re-expresses a flow under another orientation of the same signed graph (reversed edges negate).
template <class T>
BasicFlow<T> reorient(const SignedGraph& g, const BasicFlow<T>& f, const Orientation& target) {
    if (!target.consistent_with(g) || !f.orientation.consistent_with(g))
        throw PreconditionError("reorient: orientation inconsistent with signature");
    BasicFlow<T> out{target, f.values};
    for (int e = 0; e < g.num_edges(); ++e)
        if (target[2 * e] != f.orientation[2 * e]) out[e] = -out[e];
    return out;
}

/// Reverses every edge carrying a negative value so that all values become non-negative.
template <class T>
BasicFlow<T> fold_positive(const BasicFlow<T>& f) {
    BasicFlow<T> out = f;
    for (std::size_t e = 0; e < out.values.size(); ++e)
        if (out.values[e] < 0) {
            out.values[e] = -out.values[e];
            out.orientation.reverse_edge(static_cast<int>(e));
        }
    return out;
}

/// Every integer flow has an even number of negative edges carrying odd values.
inline bool parity_law_holds(const SignedGraph& g, const IntegerFlow& f) {
    int odd = 0;
    for (int e = 0; e < g.num_edges(); ++e)
        if (g.sign(e) < 0 && (f[e] % 2 != 0)) ++odd;
    return odd % 2 == 0;
}

} // namespace sgflow
