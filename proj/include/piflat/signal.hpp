#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "piflat/flatness.hpp"
#include "piflat/laurent.hpp"

namespace piflat {

/// Piecewise rational signal: 0 before breakpoints[0], pieces[i] on [breakpoints[i], breakpoints[i+1]),
/// the last piece on [breakpoints.back(), inf). An optional horizon bounds where the values are exact.
class PiecewiseSignal {
public:
    PiecewiseSignal() = default;

    PiecewiseSignal(std::vector<Rational> breakpoints, std::vector<RationalFunction> pieces,
                    std::optional<Rational> horizon = std::nullopt)
        : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)), horizon_(std::move(horizon)) {
        if (breaks_.size() != pieces_.size()) throw ShapeError("one piece per breakpoint is required");
        for (std::size_t i = 1; i < breaks_.size(); ++i)
            if (!(breaks_[i - 1] < breaks_[i])) throw DomainError("breakpoints must be strictly increasing");
        normalize();
    }

    /// f on [t0, inf), zero before.
    static PiecewiseSignal from(const Rational& t0, const RationalFunction& f) { return PiecewiseSignal({t0}, {f}); }

    const std::vector<Rational>& breakpoints() const noexcept { return breaks_; }
    const std::vector<RationalFunction>& pieces() const noexcept { return pieces_; }
    const std::optional<Rational>& horizon() const noexcept { return horizon_; }
    bool is_zero() const noexcept { return pieces_.empty(); }
    /// First time where the signal may be nonzero (only meaningful when !is_zero()).
    const Rational& support_start() const { return breaks_.front(); }

    PiecewiseSignal with_horizon(const std::optional<Rational>& h) const {
        PiecewiseSignal out = *this;
        out.horizon_ = min_horizon(horizon_, h);
        return out;
    }

    /// Index of the piece active at t, or -1 before the support.
    long piece_index(const Rational& t) const {
        auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
        return static_cast<long>(it - breaks_.begin()) - 1;
    }

    static std::optional<Rational> min_horizon(const std::optional<Rational>& a, const std::optional<Rational>& b) {
        if (!a) return b;
        if (!b) return a;
        return std::min(*a, *b);
    }

    friend bool operator==(const PiecewiseSignal& a, const PiecewiseSignal& b) {
        return a.breaks_ == b.breaks_ && a.pieces_ == b.pieces_ && a.horizon_ == b.horizon_;
    }

private:
    // Drops leading zero pieces and merges equal neighbours.
    void normalize() {
        std::vector<Rational> b;
        std::vector<RationalFunction> p;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            if (p.empty() ? pieces_[i].is_zero() : pieces_[i] == p.back()) continue;
            b.push_back(breaks_[i]);
            p.push_back(pieces_[i]);
        }
        breaks_ = std::move(b);
        pieces_ = std::move(p);
    }

    std::vector<Rational> breaks_;
    std::vector<RationalFunction> pieces_;
    std::optional<Rational> horizon_;
};

/// (d^k f)(t) = f(t - k tau); k < 0 advances.
inline PiecewiseSignal sig_shift(const PiecewiseSignal& f, long k, const Rational& tau) {
    Rational dt = Rational(k) * tau;
    std::vector<Rational> b;
    std::vector<RationalFunction> p;
    for (std::size_t i = 0; i < f.pieces().size(); ++i) {
        b.push_back(f.breakpoints()[i] + dt);
        p.push_back(f.pieces()[i].shifted(k, tau));
    }
    std::optional<Rational> h;
    if (f.horizon()) h = *f.horizon() + dt;
    return PiecewiseSignal(std::move(b), std::move(p), h);
}

/// Piecewise classical derivative.
inline PiecewiseSignal sig_derive(const PiecewiseSignal& f) {
    std::vector<RationalFunction> p;
    for (const auto& piece : f.pieces()) p.push_back(piece.derivative());
    return PiecewiseSignal(f.breakpoints(), std::move(p), f.horizon());
}

inline PiecewiseSignal sig_add(const PiecewiseSignal& f, const PiecewiseSignal& g) {
    std::vector<Rational> b;
    std::merge(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(), g.breakpoints().end(),
               std::back_inserter(b));
    b.erase(std::unique(b.begin(), b.end()), b.end());
    std::vector<RationalFunction> p;
    p.reserve(b.size());
    for (const auto& t : b) {
        RationalFunction v;
        if (long i = f.piece_index(t); i >= 0) v += f.pieces()[static_cast<std::size_t>(i)];
        if (long j = g.piece_index(t); j >= 0) v += g.pieces()[static_cast<std::size_t>(j)];
        p.push_back(std::move(v));
    }
    return PiecewiseSignal(std::move(b), std::move(p), PiecewiseSignal::min_horizon(f.horizon(), g.horizon()));
}

inline PiecewiseSignal sig_negate(const PiecewiseSignal& f) {
    std::vector<RationalFunction> p;
    for (const auto& piece : f.pieces()) p.push_back(-piece);
    return PiecewiseSignal(f.breakpoints(), std::move(p), f.horizon());
}

inline PiecewiseSignal sig_sub(const PiecewiseSignal& f, const PiecewiseSignal& g) { return sig_add(f, sig_negate(g)); }

/// c(t) f(t); poles of c surface only at evaluation time.
inline PiecewiseSignal sig_mul_by(const RationalFunction& c, const PiecewiseSignal& f) {
    std::vector<RationalFunction> p;
    for (const auto& piece : f.pieces()) p.push_back(c * piece);
    return PiecewiseSignal(f.breakpoints(), std::move(p), f.horizon());
}

/// Applies p in O: (c d^i D^j f)(t) = c(t) f^(j)(t - i tau).
inline PiecewiseSignal sig_apply(const OrePoly& p, const PiecewiseSignal& f) {
    if (!p.is_denominator_free()) throw DomainError("sig_apply needs an operator without delta denominators");
    if (f.is_zero()) return f;
    PiecewiseSignal out;
    PiecewiseSignal deriv = f;
    long j_done = 0;
    for (const auto& [j, coeff] : p.terms()) {
        for (; j_done < j; ++j_done) deriv = sig_derive(deriv);
        for (const auto& [i, c] : coeff.numerator().terms())
            out = sig_add(out, sig_mul_by(c, sig_shift(deriv, i, p.tau())));
    }
    return out;
}

/// pi^-1 f as the exact finite sum sum_j a_j f(t - j tau), valid on (-inf, horizon].
inline PiecewiseSignal sig_apply_inverse(const DeltaPoly& pi, const PiecewiseSignal& f, const Rational& horizon) {
    if (pi.is_zero()) throw DomainError("cannot invert the zero delta-polynomial");
    const long k = pi.order();
    // Advances by k tau read f that far ahead.
    std::optional<Rational> h = horizon;
    if (f.horizon()) h = PiecewiseSignal::min_horizon(h, *f.horizon() - Rational(k) * pi.tau());
    if (f.is_zero()) return f.with_horizon(h);
    Integer steps = ceil((horizon - f.support_start()) / pi.tau());
    long span = std::max<long>(0, steps.get_si());
    std::size_t L = static_cast<std::size_t>(span + k + 1);
    TruncatedLaurent inv = invert_delta_poly(pi, L);
    PiecewiseSignal out;
    for (std::size_t idx = 0; idx < inv.length(); ++idx) {
        const RationalFunction& a = inv.coeffs[idx];
        if (a.is_zero()) continue;
        long j = inv.start + static_cast<long>(idx);
        out = sig_add(out, sig_mul_by(a, sig_shift(f, j, pi.tau())));
    }
    return out.with_horizon(h);
}

/// Exact value at t (pieces are left-closed). Throws HorizonError past the horizon, PoleError at a pole.
inline Rational sig_eval(const PiecewiseSignal& f, const Rational& t) {
    if (f.horizon() && t > *f.horizon()) throw HorizonError("evaluation beyond the validity horizon");
    long i = f.piece_index(t);
    if (i < 0) return 0;
    return f.pieces()[static_cast<std::size_t>(i)](t);
}

/// True iff f vanishes identically on [lo, hi]. Throws HorizonError when hi is past the horizon.
inline bool sig_is_zero_on(const PiecewiseSignal& f, const Rational& lo, const Rational& hi) {
    if (f.horizon() && hi > *f.horizon()) throw HorizonError("window extends beyond the validity horizon");
    const auto& b = f.breakpoints();
    for (std::size_t i = 0; i < b.size(); ++i) {
        bool starts_before_hi = b[i] <= hi;
        bool ends_after_lo = i + 1 == b.size() || b[i + 1] > lo;
        if (starts_before_hi && ends_after_lo && !f.pieces()[i].is_zero()) return false;
    }
    return true;
}

struct Window {
    Rational lo;
    Rational hi;
};

/// A x - B u, one signal per equation, with the horizon capped at the window end.
inline std::vector<PiecewiseSignal> sig_residual(const SystemLTV& sys, const std::vector<PiecewiseSignal>& x,
                                                 const std::vector<PiecewiseSignal>& u, const Window& window) {
    if (x.size() != sys.states() || u.size() != sys.inputs()) throw ShapeError("signal count does not match the system");
    std::vector<PiecewiseSignal> out;
    for (std::size_t i = 0; i < sys.states(); ++i) {
        PiecewiseSignal r;
        for (std::size_t j = 0; j < sys.states(); ++j) r = sig_add(r, sig_apply(sys.A()(i, j), x[j]));
        for (std::size_t j = 0; j < sys.inputs(); ++j) r = sig_sub(r, sig_apply(sys.B()(i, j), u[j]));
        if (r.horizon() && window.hi > *r.horizon()) throw HorizonError("residual window extends beyond the validity horizon");
        out.push_back(r.with_horizon(window.hi));
    }
    return out;
}

}  // namespace piflat
