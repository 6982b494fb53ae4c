#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sgflow/error.hpp"

namespace sgflow {

/// Arbitrary-precision exact rational. All flow values in the library use this type.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

inline BigInt floor_of(const Rational& r) {
    BigInt n = numerator_of(r), d = denominator_of(r);
    BigInt q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

inline BigInt ceil_of(const Rational& r) {
    BigInt f = floor_of(r);
    return Rational(f) == r ? f : f + 1;
}

/// "p/q" or "p" (optional leading sign). Denominator must be positive.
inline Rational parse_rational(std::string_view text) {
    auto bad = [&] { return ParseError(0, "malformed fraction '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    auto digits_ok = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view num = text.substr(0, slash);
    if (!digits_ok(num, true)) throw bad();
    BigInt n(std::string(num[0] == '+' ? num.substr(1) : num));
    if (slash == std::string_view::npos) return Rational(n);
    std::string_view den = text.substr(slash + 1);
    if (!digits_ok(den, false)) throw bad();
    BigInt d{std::string(den)};
    if (d == 0) throw bad();
    return Rational(n, d);
}

/// Canonical text: "p/q" in lowest terms, or "p" when integral.
inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational rational_from(long long v) { return Rational(v); }

/// Thrown by SmallRational when a result leaves the 64-bit range.
struct RationalOverflow : std::overflow_error {
    RationalOverflow() : std::overflow_error("64-bit rational overflow") {}
};

/// Exact rational over int64 with checked arithmetic. Used as the fast path in the LP solver;
/// callers retry with Rational when RationalOverflow escapes.
class SmallRational {
public:
    SmallRational() = default;
    SmallRational(long long v) : num_(v), den_(1) {} // NOLINT(google-explicit-constructor)
    SmallRational(long long n, long long d) { assign(n, d); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    friend SmallRational operator+(const SmallRational& a, const SmallRational& b) {
        if (a.den_ == b.den_) return make(static_cast<__int128>(a.num_) + b.num_, a.den_);
        return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend SmallRational operator-(const SmallRational& a, const SmallRational& b) { return a + (-b); }
    friend SmallRational operator*(const SmallRational& a, const SmallRational& b) {
        if (a.num_ == 0 || b.num_ == 0) return {};
        return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    }
    friend SmallRational operator/(const SmallRational& a, const SmallRational& b) {
        if (b.num_ == 0) throw std::domain_error("division by zero");
        return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
    }
    SmallRational operator-() const {
        if (num_ == INT64_MIN) throw RationalOverflow();
        SmallRational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    SmallRational& operator+=(const SmallRational& o) { return *this = *this + o; }
    SmallRational& operator-=(const SmallRational& o) { return *this = *this - o; }
    SmallRational& operator*=(const SmallRational& o) { return *this = *this * o; }
    SmallRational& operator/=(const SmallRational& o) { return *this = *this / o; }

    friend bool operator==(const SmallRational& a, const SmallRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend auto operator<=>(const SmallRational& a, const SmallRational& b) {
        return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
    }

    Rational to_rational() const { return Rational(num_, den_); }

private:
    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    static SmallRational make(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 g = gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr __int128 lo = INT64_MIN + 1, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi) throw RationalOverflow();
        SmallRational r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }
    void assign(long long n, long long d) {
        if (d == 0) throw std::domain_error("zero denominator");
        *this = make(n, d);
    }

    long long num_ = 0;
    long long den_ = 1;
};

inline Rational to_rational(const Rational& r) { return r; }
inline Rational to_rational(const SmallRational& r) { return r.to_rational(); }

} // namespace sgflow
