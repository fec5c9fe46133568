#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "piflat/errors.hpp"
#include "piflat/op_matrix.hpp"

namespace piflat {

/// A square matrix over O-bar together with its two-sided inverse.
struct UnimodularPair {
    OpMatrix forward;
    OpMatrix inverse;

    static UnimodularPair identity(std::size_t n, const Rational& tau) {
        return {OpMatrix::identity(n, tau), OpMatrix::identity(n, tau)};
    }

    /// Builds a pair after checking forward * inverse = inverse * forward = I.
    static UnimodularPair checked(OpMatrix forward, OpMatrix inverse) {
        UnimodularPair p{std::move(forward), std::move(inverse)};
        if (!p.is_consistent()) throw DomainError("matrices are not mutually inverse");
        return p;
    }

    std::size_t size() const noexcept { return forward.rows(); }

    bool is_consistent() const {
        if (forward.rows() != forward.cols() || inverse.rows() != inverse.cols() || forward.rows() != inverse.rows())
            return false;
        return (forward * inverse).is_identity() && (inverse * forward).is_identity();
    }
};

struct ReductionOptions {
    /// Re-verify forward * inverse = I after every elementary operation.
    bool check_each_step = true;
};

/// Elementary row operations applied simultaneously to a working matrix M and to S, with S^-1
/// updated by the inverse operation. Maintains M = S.forward * M_original.
class RowTransformer {
public:
    RowTransformer(OpMatrix m, ReductionOptions options = {})
        : m_(std::move(m)), s_(UnimodularPair::identity(m_.rows(), m_.tau())), options_(options) {}

    const OpMatrix& matrix() const noexcept { return m_; }
    const UnimodularPair& transform() const noexcept { return s_; }
    UnimodularPair&& take_transform() { return std::move(s_); }
    OpMatrix&& take_matrix() { return std::move(m_); }

    void swap(std::size_t i, std::size_t k) {
        if (i == k) return;
        m_.swap_rows(i, k);
        s_.forward.swap_rows(i, k);
        s_.inverse.swap_cols(i, k);
        check();
    }
    /// row_i <- c * row_i for a unit c of K(delta).
    void scale(std::size_t i, const DeltaFraction& c) {
        OrePoly u(c), u_inv(c.inverse());
        m_.scale_row(i, u);
        s_.forward.scale_row(i, u);
        s_.inverse.scale_col(i, u_inv);
        check();
    }
    /// row_target <- row_target + q * row_source
    void add(std::size_t target, std::size_t source, const OrePoly& q) {
        if (q.is_zero()) return;
        m_.add_row_multiple(target, source, q);
        s_.forward.add_row_multiple(target, source, q);
        s_.inverse.add_col_multiple(source, target, -q);
        check();
    }

private:
    void check() const {
        if (options_.check_each_step && !s_.is_consistent())
            throw DomainError("internal: row transform lost its inverse");
    }

    OpMatrix m_;
    UnimodularPair s_;
    ReductionOptions options_;
};

/// Column analogue of RowTransformer. Maintains M = M_original * T.forward.
class ColumnTransformer {
public:
    ColumnTransformer(OpMatrix m, ReductionOptions options = {})
        : m_(std::move(m)), t_(UnimodularPair::identity(m_.cols(), m_.tau())), options_(options) {}

    const OpMatrix& matrix() const noexcept { return m_; }
    const UnimodularPair& transform() const noexcept { return t_; }
    UnimodularPair&& take_transform() { return std::move(t_); }
    OpMatrix&& take_matrix() { return std::move(m_); }

    void swap(std::size_t j, std::size_t k) {
        if (j == k) return;
        m_.swap_cols(j, k);
        t_.forward.swap_cols(j, k);
        t_.inverse.swap_rows(j, k);
        check();
    }
    /// col_j <- col_j * c
    void scale(std::size_t j, const DeltaFraction& c) {
        OrePoly u(c), u_inv(c.inverse());
        m_.scale_col(j, u);
        t_.forward.scale_col(j, u);
        t_.inverse.scale_row(j, u_inv);
        check();
    }
    /// col_target <- col_target + col_source * q
    void add(std::size_t target, std::size_t source, const OrePoly& q) {
        if (q.is_zero()) return;
        m_.add_col_multiple(target, source, q);
        t_.forward.add_col_multiple(target, source, q);
        t_.inverse.add_row_multiple(source, target, -q);
        check();
    }

private:
    void check() const {
        if (options_.check_each_step && !t_.is_consistent())
            throw DomainError("internal: column transform lost its inverse");
    }

    OpMatrix m_;
    UnimodularPair t_;
    ReductionOptions options_;
};

/// Leading row-coefficient matrix: row i holds the coefficients of D^(deg row_i) in row i.
inline FracMatrix leading_row_matrix(const OpMatrix& m, const std::vector<std::size_t>& rows) {
    FracMatrix L;
    for (std::size_t i : rows) {
        long r = m.row_degree(i);
        FracVector v;
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j).coeff(r));
        L.push_back(std::move(v));
    }
    return L;
}

/// Leading column-coefficient matrix restricted to the given columns.
inline FracMatrix leading_col_matrix(const OpMatrix& m, const std::vector<std::size_t>& cols) {
    FracMatrix L(m.rows());
    for (std::size_t j : cols) {
        long c = m.col_degree(j);
        for (std::size_t i = 0; i < m.rows(); ++i) L[i].push_back(m(i, j).coeff(c));
    }
    return L;
}

inline std::vector<std::size_t> nonzero_rows(const OpMatrix& m) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (!m.row_is_zero(i)) out.push_back(i);
    return out;
}

inline std::vector<std::size_t> nonzero_cols(const OpMatrix& m) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m.col_is_zero(j)) out.push_back(j);
    return out;
}

/// Nonzero rows satisfy the predictable degree property (leading row matrix has full row rank).
inline bool is_row_reduced(const OpMatrix& m) {
    auto rows = nonzero_rows(m);
    return !skew_left_kernel(leading_row_matrix(m, rows), m.tau()).has_value();
}

inline bool is_column_reduced(const OpMatrix& m) {
    auto cols = nonzero_cols(m);
    if (cols.empty()) return true;
    return !skew_right_kernel(leading_col_matrix(m, cols), m.tau()).has_value();
}

struct RowReduction {
    UnimodularPair transform;  // S with S.forward * M = reduced
    OpMatrix reduced;          // nonzero rows row-reduced, zero rows at the bottom
    std::size_t rank = 0;      // number of nonzero rows
};

struct ColumnReduction {
    UnimodularPair transform;  // T with M * T.forward = reduced
    OpMatrix reduced;          // nonzero columns column-reduced, zero columns on the right
    std::size_t rank = 0;
};

namespace detail {

inline void sink_zero_rows(RowTransformer& rt) {
    const OpMatrix& m = rt.matrix();
    std::size_t n = m.rows();
    // stable: bubble each zero row past the nonzero rows below it
    for (std::size_t pass = 0; pass < n; ++pass) {
        bool moved = false;
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (rt.matrix().row_is_zero(i) && !rt.matrix().row_is_zero(i + 1)) {
                rt.swap(i, i + 1);
                moved = true;
            }
        if (!moved) break;
    }
}

inline void sink_zero_cols(ColumnTransformer& ct) {
    std::size_t n = ct.matrix().cols();
    for (std::size_t pass = 0; pass < n; ++pass) {
        bool moved = false;
        for (std::size_t j = 0; j + 1 < n; ++j)
            if (ct.matrix().col_is_zero(j) && !ct.matrix().col_is_zero(j + 1)) {
                ct.swap(j, j + 1);
                moved = true;
            }
        if (!moved) break;
    }
}

inline void row_reduce_in_place(RowTransformer& rt) {
    const Rational tau = rt.matrix().tau();
    detail::sink_zero_rows(rt);
    while (true) {
        auto rows = nonzero_rows(rt.matrix());
        auto lambda = skew_left_kernel(leading_row_matrix(rt.matrix(), rows), tau);
        if (!lambda) break;
        std::vector<long> deg;
        for (std::size_t i : rows) deg.push_back(rt.matrix().row_degree(i));
        // pivot: maximal degree among nonzero kernel coordinates, lowest index on ties
        std::size_t p = rows.size();
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if ((*lambda)[k].is_zero()) continue;
            if (p == rows.size() || deg[k] > deg[p]) p = k;
        }
        // normalize lambda_p = 1, then row_p += sum_{i != p} lambda_i D^(r_p - r_i) row_i
        DeltaFraction norm = (*lambda)[p].inverse();
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k == p || (*lambda)[k].is_zero()) continue;
            OrePoly q = OrePoly::monomial(norm * (*lambda)[k], deg[p] - deg[k]);
            rt.add(rows[p], rows[k], q);
        }
        if (rt.matrix().row_degree(rows[p]) >= deg[p])
            throw DomainError("internal: row reduction step did not lower the degree");
        detail::sink_zero_rows(rt);
    }
}

inline void column_reduce_in_place(ColumnTransformer& ct) {
    const Rational tau = ct.matrix().tau();
    detail::sink_zero_cols(ct);
    while (true) {
        auto cols = nonzero_cols(ct.matrix());
        if (cols.empty()) break;
        auto mu = skew_right_kernel(leading_col_matrix(ct.matrix(), cols), tau);
        if (!mu) break;
        std::vector<long> deg;
        for (std::size_t j : cols) deg.push_back(ct.matrix().col_degree(j));
        std::size_t p = cols.size();
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if ((*mu)[k].is_zero()) continue;
            if (p == cols.size() || deg[k] > deg[p]) p = k;
        }
        // normalize mu_p = 1, then col_p += sum_{j != p} col_j D^(c_p - c_j) mu_j
        DeltaFraction norm = (*mu)[p].inverse();
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (k == p || (*mu)[k].is_zero()) continue;
            OrePoly q = OrePoly::derivative(tau, deg[p] - deg[k]) * OrePoly((*mu)[k] * norm);
            ct.add(cols[p], cols[k], q);
        }
        if (ct.matrix().col_degree(cols[p]) >= deg[p])
            throw DomainError("internal: column reduction step did not lower the degree");
        detail::sink_zero_cols(ct);
    }
}

}  // namespace detail

/// Unimodular S over O-bar such that the nonzero rows of S*M are row-reduced; zero rows at the bottom.
inline RowReduction row_reduce(const OpMatrix& m, ReductionOptions options = {}) {
    RowTransformer rt(m, options);
    detail::row_reduce_in_place(rt);
    std::size_t rank = nonzero_rows(rt.matrix()).size();
    OpMatrix reduced = rt.matrix();
    return {rt.take_transform(), std::move(reduced), rank};
}

/// Unimodular T over O-bar such that the nonzero columns of M*T are column-reduced; zero columns last.
inline ColumnReduction column_reduce(const OpMatrix& m, ReductionOptions options = {}) {
    ColumnTransformer ct(m, options);
    detail::column_reduce_in_place(ct);
    std::size_t rank = nonzero_cols(ct.matrix()).size();
    OpMatrix reduced = ct.matrix();
    return {ct.take_transform(), std::move(reduced), rank};
}

/// Left row rank over O-bar.
inline std::size_t row_rank(const OpMatrix& m, ReductionOptions options = {}) {
    return row_reduce(m, options).rank;
}

namespace detail {

/// After reduction, finish Gauss-Jordan on the leading k x k block of a degree-0 matrix.
inline bool normalize_rows_to_identity(RowTransformer& rt, std::size_t k) {
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && rt.matrix()(p, c).is_zero()) ++p;
        if (p == k) return false;
        rt.swap(p, c);
        rt.scale(c, rt.matrix()(c, c).coeff(0).inverse());
        for (std::size_t i = 0; i < k; ++i) {
            if (i == c || rt.matrix()(i, c).is_zero()) continue;
            rt.add(i, c, -rt.matrix()(i, c));
        }
    }
    return true;
}

inline bool normalize_cols_to_identity(ColumnTransformer& ct, std::size_t k) {
    for (std::size_t r = 0; r < k; ++r) {
        std::size_t p = r;
        while (p < k && ct.matrix()(r, p).is_zero()) ++p;
        if (p == k) return false;
        ct.swap(p, r);
        ct.scale(r, ct.matrix()(r, r).coeff(0).inverse());
        for (std::size_t j = 0; j < k; ++j) {
            if (j == r || ct.matrix()(r, j).is_zero()) continue;
            ct.add(j, r, -ct.matrix()(r, j));
        }
    }
    return true;
}

}  // namespace detail

/// Hyper-regularity through reduction: degree 0 and full rank after row (n >= m) or column (n < m) reduction.
inline bool is_hyper_regular(const OpMatrix& m, ReductionOptions options = {}) {
    const std::size_t n = m.rows(), k = m.cols();
    if (n >= k) {
        auto red = row_reduce(m, options);
        if (red.reduced.degree() > 0) return false;
        return red.rank == k && rank_over_fractions(red.reduced) == k;
    }
    auto red = column_reduce(m, options);
    if (red.reduced.degree() > 0) return false;
    return red.rank == n && rank_over_fractions(red.reduced) == n;
}

/// S unimodular with S.forward * M = (I_m ; 0), for hyper-regular M with n >= m.
inline std::optional<UnimodularPair> left_inverse(const OpMatrix& m, ReductionOptions options = {}) {
    const std::size_t k = m.cols();
    if (m.rows() < k) return std::nullopt;
    RowTransformer rt(m, options);
    detail::row_reduce_in_place(rt);
    if (rt.matrix().degree() > 0 || nonzero_rows(rt.matrix()).size() != k) return std::nullopt;
    if (!detail::normalize_rows_to_identity(rt, k)) return std::nullopt;
    return rt.take_transform();
}

/// T unimodular with M * T.forward = (I_n, 0), for hyper-regular M with n <= m.
inline std::optional<UnimodularPair> right_inverse(const OpMatrix& m, ReductionOptions options = {}) {
    const std::size_t k = m.rows();
    if (m.cols() < k) return std::nullopt;
    ColumnTransformer ct(m, options);
    detail::column_reduce_in_place(ct);
    if (ct.matrix().degree() > 0 || nonzero_cols(ct.matrix()).size() != k) return std::nullopt;
    if (!detail::normalize_cols_to_identity(ct, k)) return std::nullopt;
    return ct.take_transform();
}

}  // namespace piflat
