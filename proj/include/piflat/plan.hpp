#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "piflat/flatness.hpp"
#include "piflat/signal.hpp"

namespace piflat {

/// y^(order)(time) = value.
struct BoundaryCondition {
    Rational time;
    long order = 0;
    Rational value;
};

struct PlanRequest {
    std::vector<BoundaryCondition> conditions;
    long degree = 5;
    Rational start{0};
    Rational end{1};
    Rational step{Rational(1, 100)};
    std::optional<Rational> horizon;
};

/// Rest-to-rest conditions: y(start) = from, y(end) = to, derivatives 1..(degree-1)/2 vanish at both ends.
inline std::vector<BoundaryCondition> rest_to_rest(long degree, const Rational& start, const Rational& end,
                                                   const Rational& from, const Rational& to) {
    if (degree < 1 || degree % 2 == 0) throw PreconditionError("rest-to-rest planning needs an odd degree >= 1");
    std::vector<BoundaryCondition> out;
    for (long r = 0; r <= (degree - 1) / 2; ++r) {
        out.push_back({start, r, r == 0 ? from : Rational(0)});
        out.push_back({end, r, r == 0 ? to : Rational(0)});
    }
    return out;
}

namespace detail {

/// Exact Gauss-Jordan solve of a square system; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        Rational inv = 1 / a[col][col];
        for (auto& x : a[col]) x *= inv;
        b[col] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    return b;
}

inline Rational falling_factorial(long i, long r) {
    Rational out = 1;
    for (long k = 0; k < r; ++k) out *= i - k;
    return out;
}

}  // namespace detail

/// 0 before start, the interpolating polynomial on [start, end), its end value afterwards.
inline PiecewiseSignal plan_polynomial(const PlanRequest& req) {
    if (req.degree < 0) throw PreconditionError("degree must be non-negative");
    if (!(req.start < req.end)) throw PreconditionError("planning interval is empty");
    const std::size_t n = static_cast<std::size_t>(req.degree + 1);
    if (req.conditions.size() != n) throw PreconditionError("the number of conditions must equal degree + 1");
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    std::vector<Rational> b(n);
    for (std::size_t row = 0; row < n; ++row) {
        const auto& c = req.conditions[row];
        if (c.time < req.start || c.time > req.end) throw PreconditionError("condition time outside the planning interval");
        if (c.order < 0) throw PreconditionError("negative derivative order");
        for (long i = c.order; i <= req.degree; ++i) {
            Rational pw = 1;
            for (long k = 0; k < i - c.order; ++k) pw *= c.time;
            a[row][static_cast<std::size_t>(i)] = detail::falling_factorial(i, c.order) * pw;
        }
        b[row] = c.value;
    }
    auto coeffs = detail::solve_exact(std::move(a), std::move(b));
    if (!coeffs) throw DomainError("singular boundary-condition system");
    QPoly y(std::move(*coeffs));
    for (const auto& c : req.conditions) {
        QPoly d = y;
        for (long r = 0; r < c.order; ++r) d = d.derivative();
        if (d(c.time) != c.value) throw DomainError("internal: planned polynomial misses a boundary condition");
    }
    RationalFunction poly(y);
    return PiecewiseSignal({req.start, req.end}, {poly, RationalFunction(y(req.end))});
}

struct Trajectory {
    std::vector<PiecewiseSignal> outputs;
    std::vector<PiecewiseSignal> states;
    std::vector<PiecewiseSignal> inputs;
};

/// (x ; u) = pi^-1 Q y, exact on (-inf, horizon].
inline Trajectory plan_trajectory(const SystemLTV& sys, const FlatnessCertificate& cert,
                                  const std::vector<PiecewiseSignal>& y, const Rational& horizon) {
    const std::size_t n = sys.states(), m = sys.inputs();
    if (y.size() != cert.outputs() || cert.Q.rows() != n + m) throw ShapeError("flat output count does not match");
    Trajectory out;
    out.outputs = y;
    for (std::size_t i = 0; i < n + m; ++i) {
        PiecewiseSignal qy;
        for (std::size_t l = 0; l < y.size(); ++l) qy = sig_add(qy, sig_apply(cert.Q(i, l), y[l]));
        PiecewiseSignal xi = sig_apply_inverse(cert.pi, qy, horizon);
        (i < n ? out.states : out.inputs).push_back(std::move(xi));
    }
    return out;
}

/// Largest advance used by pi^-1, in units of tau (how early the inputs may start moving).
inline long advance_steps(const FlatnessCertificate& cert) { return cert.pi.order(); }

}  // namespace piflat
