#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace sgflow {

enum class LpStatus { optimal, infeasible, unbounded };

template <class T>
struct LpResult {
    LpStatus status = LpStatus::infeasible;
    T value{};
    std::vector<T> x;
};

/// Exact two-phase simplex with Bland's rule for: minimize c.x subject to A x = b, x >= 0.
/// T must be an exact field type (Rational or SmallRational).
template <class T>
class Simplex {
public:
    Simplex(const std::vector<std::vector<T>>& A, const std::vector<T>& b, const std::vector<T>& c)
        : m_(A.size()), n_(c.size()), cols_(n_ + m_ + 1), tab_(m_ * cols_), basis_(m_) {
        for (std::size_t i = 0; i < m_; ++i) {
            bool neg = b[i] < T(0);
            for (std::size_t j = 0; j < n_; ++j) at(i, j) = neg ? -A[i][j] : A[i][j];
            at(i, n_ + i) = T(1);
            rhs(i) = neg ? -b[i] : b[i];
            basis_[i] = n_ + i;
        }
        cost_ = c;
    }

    LpResult<T> solve() {
        LpResult<T> out;
        // phase 1: minimize the sum of artificials
        obj_.assign(cols_, T(0));
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) obj_[j] -= at(i, j);
            obj_[cols_ - 1] -= rhs(i);
        }
        if (!iterate(n_ + m_)) return out; // cannot be unbounded; treat defensively
        if (obj_[cols_ - 1] != T(0)) return out;
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (at(i, j) != T(0)) {
                    pivot(i, j);
                    break;
                }
            // a row with no structural entry is redundant; its artificial stays basic at zero
        }
        // phase 2
        obj_.assign(cols_, T(0));
        for (std::size_t j = 0; j < n_; ++j) obj_[j] = cost_[j];
        for (std::size_t i = 0; i < m_; ++i) {
            std::size_t bj = basis_[i];
            if (bj >= n_ || cost_[bj] == T(0)) continue;
            T cb = cost_[bj];
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != T(0)) obj_[j] -= cb * at(i, j);
        }
        if (!iterate(n_)) {
            out.status = LpStatus::unbounded;
            return out;
        }
        out.status = LpStatus::optimal;
        out.value = -obj_[cols_ - 1];
        out.x.assign(n_, T(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) out.x[basis_[i]] = rhs(i);
        return out;
    }

private:
    T& at(std::size_t i, std::size_t j) { return tab_[i * cols_ + j]; }
    T& rhs(std::size_t i) { return tab_[i * cols_ + cols_ - 1]; }

    /// Runs pivots until optimal (true) or unbounded (false). Only columns < `enter_limit` may enter.
    bool iterate(std::size_t enter_limit) {
        for (;;) {
            std::size_t enter = enter_limit;
            for (std::size_t j = 0; j < enter_limit; ++j)
                if (obj_[j] < T(0)) {
                    enter = j;
                    break;
                }
            if (enter == enter_limit) return true;
            std::optional<std::size_t> leave;
            T best{};
            for (std::size_t i = 0; i < m_; ++i) {
                if (!(at(i, enter) > T(0))) continue;
                T ratio = rhs(i) / at(i, enter);
                if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave) return false;
            pivot(*leave, enter);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        T p = at(r, c);
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(r, j) != T(0)) at(r, j) /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            T f = at(i, c);
            if (f == T(0)) continue;
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(r, j) != T(0)) at(i, j) -= f * at(r, j);
        }
        T f = obj_[c];
        if (f != T(0))
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(r, j) != T(0)) obj_[j] -= f * at(r, j);
        basis_[r] = c;
    }

    std::size_t m_, n_, cols_;
    std::vector<T> tab_;
    std::vector<std::size_t> basis_;
    std::vector<T> obj_, cost_;
};

template <class T>
LpResult<T> solve_lp(const std::vector<std::vector<T>>& A, const std::vector<T>& b, const std::vector<T>& c) {
    return Simplex<T>(A, b, c).solve();
}

} // namespace sgflow
