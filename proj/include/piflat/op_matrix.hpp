#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "piflat/errors.hpp"
#include "piflat/format.hpp"
#include "piflat/ore_poly.hpp"

namespace piflat {

/// Dense matrix over O-bar. Row and column counts may be zero (empty blocks arise when n == m).
class OpMatrix {
public:
    explicit OpMatrix(std::size_t rows = 0, std::size_t cols = 0, Rational tau = 1)
        : rows_(rows), cols_(cols), tau_(std::move(tau)), entries_(rows * cols, OrePoly(tau_)) {}

    OpMatrix(std::initializer_list<std::initializer_list<OrePoly>> rows, const Rational& tau) : tau_(tau) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            if (r.size() != cols_) throw ShapeError("ragged matrix literal");
            for (const auto& e : r) {
                if (e.tau() != tau_) throw ShapeError("matrix entry with a different delay");
                entries_.push_back(e);
            }
        }
    }

    static OpMatrix identity(std::size_t n, const Rational& tau) {
        OpMatrix m(n, n, tau);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = OrePoly::one(tau);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const Rational& tau() const noexcept { return tau_; }

    OrePoly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const OrePoly& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    friend bool operator==(const OpMatrix& a, const OpMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.tau_ == b.tau_ && a.entries_ == b.entries_;
    }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const OrePoly& e) { return e.is_zero(); });
    }
    bool is_identity() const { return rows_ == cols_ && *this == identity(rows_, tau_); }
    bool is_denominator_free() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const OrePoly& e) { return e.is_denominator_free(); });
    }

    /// Maximal D-degree over all entries (kNegInf for the zero matrix).
    long degree() const {
        long d = kNegInf;
        for (const auto& e : entries_) d = std::max(d, e.degree());
        return d;
    }
    long row_degree(std::size_t i) const {
        long d = kNegInf;
        for (std::size_t j = 0; j < cols_; ++j) d = std::max(d, (*this)(i, j).degree());
        return d;
    }
    long col_degree(std::size_t j) const {
        long d = kNegInf;
        for (std::size_t i = 0; i < rows_; ++i) d = std::max(d, (*this)(i, j).degree());
        return d;
    }
    bool row_is_zero(std::size_t i) const { return row_degree(i) == kNegInf; }
    bool col_is_zero(std::size_t j) const { return col_degree(j) == kNegInf; }

    OpMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of range");
        OpMatrix b(nr, nc, tau_);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    OpMatrix operator-() const {
        OpMatrix r = *this;
        for (auto& e : r.entries_) e = -e;
        return r;
    }

    friend OpMatrix operator+(const OpMatrix& a, const OpMatrix& b) {
        check_same_shape(a, b);
        OpMatrix r = a;
        for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] += b.entries_[k];
        return r;
    }
    friend OpMatrix operator-(const OpMatrix& a, const OpMatrix& b) { return a + (-b); }

    friend OpMatrix operator*(const OpMatrix& a, const OpMatrix& b) {
        if (a.cols_ != b.rows_) throw ShapeError("matrix product with mismatched inner dimensions");
        if (a.tau_ != b.tau_) throw ShapeError("matrices with different delays");
        OpMatrix r(a.rows_, b.cols_, a.tau_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const OrePoly& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    /// c * M with c in K(delta).
    OpMatrix left_scaled(const DeltaFraction& c) const {
        OpMatrix r = *this;
        for (auto& e : r.entries_) e = e.left_scaled(c);
        return r;
    }

    /// [a | b]
    friend OpMatrix hcat(const OpMatrix& a, const OpMatrix& b) {
        if (a.rows_ != b.rows_) throw ShapeError("hcat with different row counts");
        OpMatrix r(a.rows_, a.cols_ + b.cols_, a.tau_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
        }
        return r;
    }
    /// [a ; b]
    friend OpMatrix vcat(const OpMatrix& a, const OpMatrix& b) {
        if (a.cols_ != b.cols_) throw ShapeError("vcat with different column counts");
        OpMatrix r(a.rows_ + b.rows_, a.cols_, a.tau_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r(a.rows_ + i, j) = b(i, j);
        return r;
    }

    void swap_rows(std::size_t i, std::size_t k) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
    }
    void swap_cols(std::size_t j, std::size_t k) {
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
    }
    /// row_i <- c * row_i
    void scale_row(std::size_t i, const OrePoly& c) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = c * (*this)(i, j);
    }
    /// col_j <- col_j * c
    void scale_col(std::size_t j, const OrePoly& c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = (*this)(i, j) * c;
    }
    /// row_target <- row_target + q * row_source
    void add_row_multiple(std::size_t target, std::size_t source, const OrePoly& q) {
        for (std::size_t j = 0; j < cols_; ++j)
            if (!(*this)(source, j).is_zero()) (*this)(target, j) += q * (*this)(source, j);
    }
    /// col_target <- col_target + col_source * q
    void add_col_multiple(std::size_t target, std::size_t source, const OrePoly& q) {
        for (std::size_t i = 0; i < rows_; ++i)
            if (!(*this)(i, source).is_zero()) (*this)(i, target) += (*this)(i, source) * q;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) s += ", ";
                s += piflat::to_string((*this)(i, j));
            }
            s += "]";
        }
        return s + "]";
    }

private:
    static void check_same_shape(const OpMatrix& a, const OpMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix shapes differ");
        if (a.tau_ != b.tau_) throw ShapeError("matrices with different delays");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Rational tau_;
    std::vector<OrePoly> entries_;
};

inline std::ostream& operator<<(std::ostream& os, const OpMatrix& m) { return os << m.to_string(); }

inline OpMatrix mat_mul(const OpMatrix& a, const OpMatrix& b) { return a * b; }

// ---------------------------------------------------------------------------
// Linear algebra over the skew field K(delta)

using FracMatrix = std::vector<std::vector<DeltaFraction>>;
using FracVector = std::vector<DeltaFraction>;

/// Nonzero lambda with lambda * L = 0 (left linear dependency of the rows), or nullopt when the rows
/// are independent. Eliminates with left row operations; the dependency returned is the first row
/// to vanish.
inline std::optional<FracVector> skew_left_kernel(const FracMatrix& L, const Rational& tau) {
    const std::size_t n = L.size();
    if (n == 0) return std::nullopt;
    const std::size_t m = L.front().size();
    FracMatrix work = L;
    FracMatrix track(n, FracVector(n, DeltaFraction(tau)));
    for (std::size_t i = 0; i < n; ++i) track[i][i] = DeltaFraction::one(tau);
    std::vector<bool> used(n, false);
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!used[i] && !work[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p == n) continue;
        used[p] = true;
        DeltaFraction inv = work[p][c].inverse();
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i] || work[i][c].is_zero()) continue;
            DeltaFraction f = work[i][c] * inv;
            for (std::size_t j = c; j < m; ++j)
                if (!work[p][j].is_zero()) work[i][j] -= f * work[p][j];
            for (std::size_t j = 0; j < n; ++j)
                if (!track[p][j].is_zero()) track[i][j] -= f * track[p][j];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!used[i]) return track[i];
    return std::nullopt;
}

/// Nonzero mu with L * mu = 0 (right dependency of the columns), or nullopt.
inline std::optional<FracVector> skew_right_kernel(const FracMatrix& L, const Rational& tau) {
    const std::size_t n = L.size();
    const std::size_t m = n ? L.front().size() : 0;
    if (m == 0) return std::nullopt;
    FracMatrix work = L;
    FracMatrix track(m, FracVector(m, DeltaFraction(tau)));  // column k of track = combination for column k
    for (std::size_t k = 0; k < m; ++k) track[k][k] = DeltaFraction::one(tau);
    std::vector<bool> used(m, false);
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t p = m;
        for (std::size_t k = 0; k < m; ++k)
            if (!used[k] && !work[r][k].is_zero()) {
                p = k;
                break;
            }
        if (p == m) continue;
        used[p] = true;
        DeltaFraction inv = work[r][p].inverse();
        for (std::size_t k = 0; k < m; ++k) {
            if (used[k] || work[r][k].is_zero()) continue;
            DeltaFraction f = inv * work[r][k];
            for (std::size_t i = r; i < n; ++i)
                if (!work[i][p].is_zero()) work[i][k] -= work[i][p] * f;
            for (std::size_t i = 0; i < m; ++i)
                if (!track[i][p].is_zero()) track[i][k] -= track[i][p] * f;
        }
    }
    for (std::size_t k = 0; k < m; ++k)
        if (!used[k]) {
            FracVector mu(m, DeltaFraction(tau));
            for (std::size_t i = 0; i < m; ++i) mu[i] = track[i][k];
            return mu;
        }
    return std::nullopt;
}

/// Rank over K(delta) (left row rank equals right column rank over a division ring).
inline std::size_t skew_rank(const FracMatrix& L) {
    const std::size_t n = L.size();
    if (n == 0) return 0;
    const std::size_t m = L.front().size();
    FracMatrix work = L;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m && rank < n; ++c) {
        std::size_t p = rank;
        while (p < n && work[p][c].is_zero()) ++p;
        if (p == n) continue;
        std::swap(work[p], work[rank]);
        DeltaFraction inv = work[rank][c].inverse();
        for (std::size_t i = rank + 1; i < n; ++i) {
            if (work[i][c].is_zero()) continue;
            DeltaFraction f = work[i][c] * inv;
            for (std::size_t j = c; j < m; ++j)
                if (!work[rank][j].is_zero()) work[i][j] -= f * work[rank][j];
        }
        ++rank;
    }
    return rank;
}

/// Degree-0 coefficients of a matrix, as a matrix over K(delta). Entries of positive degree are rejected.
inline FracMatrix constant_part(const OpMatrix& m) {
    if (m.degree() > 0) throw PreconditionError("matrix has positive derivative degree");
    FracMatrix out(m.rows(), FracVector(m.cols(), DeltaFraction(m.tau())));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).coeff(0);
    return out;
}

inline std::size_t rank_over_fractions(const OpMatrix& m) { return skew_rank(constant_part(m)); }

}  // namespace piflat
