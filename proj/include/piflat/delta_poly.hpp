#pragma once

#include <limits>
#include <map>
#include <utility>

#include "piflat/errors.hpp"
#include "piflat/ratfun.hpp"

namespace piflat {

/// Degree of the zero polynomial (and of zero operator rows).
inline constexpr long kNegInf = std::numeric_limits<long>::min() / 4;

/// Element of the delay-operator ring K[delta] with commutation rule delta*f(t) = f(t - tau)*delta.
///
/// Sparse: maps delta-exponents to nonzero coefficients. Every value carries its delay tau and
/// binary operations require equal delays.
class DeltaPoly {
public:
    using Terms = std::map<long, RationalFunction>;

    explicit DeltaPoly(Rational tau = 1) : tau_(std::move(tau)) { check_tau(); }
    DeltaPoly(const RationalFunction& c, Rational tau) : tau_(std::move(tau)) {
        check_tau();
        if (!c.is_zero()) terms_.emplace(0, c);
    }
    DeltaPoly(Terms terms, Rational tau) : terms_(std::move(terms)), tau_(std::move(tau)) {
        check_tau();
        std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
        for (const auto& [e, c] : terms_)
            if (e < 0) throw DomainError("negative delta exponent in a delta polynomial");
    }

    /// c * delta^k.
    static DeltaPoly monomial(const RationalFunction& c, long k, const Rational& tau) {
        DeltaPoly p(tau);
        if (!c.is_zero()) p.terms_.emplace(k, c);
        return p;
    }
    static DeltaPoly delta(const Rational& tau, long k = 1) { return monomial(1, k, tau); }

    const Rational& tau() const noexcept { return tau_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.is_one(); }
    /// True for nonzero elements of K (the units of K[delta]).
    bool is_unit() const noexcept { return terms_.size() == 1 && terms_.begin()->first == 0; }
    long degree() const noexcept { return terms_.empty() ? kNegInf : terms_.rbegin()->first; }
    /// Lowest exponent with nonzero coefficient.
    long order() const {
        if (terms_.empty()) throw DomainError("order of the zero delta polynomial");
        return terms_.begin()->first;
    }
    const RationalFunction& leading() const {
        if (terms_.empty()) throw DomainError("leading coefficient of the zero delta polynomial");
        return terms_.rbegin()->second;
    }
    RationalFunction coeff(long k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? RationalFunction() : it->second;
    }
    /// True when every coefficient lies in Q (then the ring element commutes with delta).
    bool has_constant_coefficients() const {
        for (const auto& [e, c] : terms_)
            if (!c.is_constant()) return false;
        return true;
    }

    friend bool operator==(const DeltaPoly& a, const DeltaPoly& b) {
        return a.tau_ == b.tau_ && a.terms_ == b.terms_;
    }

    DeltaPoly operator-() const {
        DeltaPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    friend DeltaPoly operator+(const DeltaPoly& a, const DeltaPoly& b) {
        same_tau(a, b);
        DeltaPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend DeltaPoly operator-(const DeltaPoly& a, const DeltaPoly& b) { return a + (-b); }

    friend DeltaPoly operator*(const DeltaPoly& a, const DeltaPoly& b) {
        same_tau(a, b);
        DeltaPoly r(a.tau_);
        for (const auto& [i, f] : a.terms_)
            for (const auto& [j, g] : b.terms_) r.add_term(i + j, f * g.shifted(i, a.tau_));
        return r;
    }

    DeltaPoly& operator+=(const DeltaPoly& o) { return *this = *this + o; }
    DeltaPoly& operator-=(const DeltaPoly& o) { return *this = *this - o; }
    DeltaPoly& operator*=(const DeltaPoly& o) { return *this = *this * o; }

    /// c * p (scalar acting on the left; no twist).
    DeltaPoly left_scaled(const RationalFunction& c) const {
        if (c.is_zero()) return DeltaPoly(tau_);
        DeltaPoly r = *this;
        for (auto& [e, x] : r.terms_) x = c * x;
        return r;
    }

    /// Coefficientwise derivative theta (d/dt acting on coefficients, theta(delta) = 0).
    DeltaPoly theta() const {
        DeltaPoly r(tau_);
        for (const auto& [e, c] : terms_) r.add_term(e, c.derivative());
        return r;
    }

    /// Applies sigma^k to every coefficient (conjugation by delta^k).
    DeltaPoly coefficient_shifted(long k) const {
        DeltaPoly r = *this;
        for (auto& [e, c] : r.terms_) c = c.shifted(k, tau_);
        return r;
    }

    /// Left-associate with leading coefficient 1.
    DeltaPoly left_monic() const {
        if (is_zero()) return *this;
        return left_scaled(leading().inverse());
    }

    /// Right-associate p*c with leading coefficient 1.
    DeltaPoly right_monic() const {
        if (is_zero()) return *this;
        // lc(p*c) = lc(p) * sigma^deg(c)
        RationalFunction c = leading().inverse().shifted(-degree(), tau_);
        return *this * DeltaPoly(c, tau_);
    }

    std::size_t hash() const {
        std::size_t h = std::hash<std::string>{}(tau_.get_str());
        for (const auto& [e, c] : terms_) h = (h * 1000003u) ^ (c.hash() + static_cast<std::size_t>(e) * 7919u);
        return h;
    }

    static void same_tau(const DeltaPoly& a, const DeltaPoly& b) {
        if (a.tau_ != b.tau_) throw ShapeError("delta polynomials with different delays");
    }

private:
    void check_tau() const {
        if (tau_ <= 0) throw DomainError("the delay tau must be positive");
    }

    void add_term(long e, const RationalFunction& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Terms terms_;
    Rational tau_;
};

/// Right division: p = quotient * q + remainder, deg remainder < deg q.
inline std::pair<DeltaPoly, DeltaPoly> dp_divmod_right(const DeltaPoly& p, const DeltaPoly& q) {
    DeltaPoly::same_tau(p, q);
    if (q.is_zero()) throw DomainError("division by the zero delta polynomial");
    const Rational& tau = p.tau();
    DeltaPoly quot(tau), rem = p;
    const long dq = q.degree();
    const RationalFunction& lq = q.leading();
    while (!rem.is_zero() && rem.degree() >= dq) {
        long a = rem.degree() - dq;
        // (c delta^a)(lq delta^dq) = c sigma^a(lq) delta^(a+dq)
        DeltaPoly step = DeltaPoly::monomial(rem.leading() / lq.shifted(a, tau), a, tau);
        quot += step;
        rem -= step * q;
    }
    return {quot, rem};
}

/// Left division: p = q * quotient + remainder, deg remainder < deg q.
inline std::pair<DeltaPoly, DeltaPoly> dp_divmod_left(const DeltaPoly& p, const DeltaPoly& q) {
    DeltaPoly::same_tau(p, q);
    if (q.is_zero()) throw DomainError("division by the zero delta polynomial");
    const Rational& tau = p.tau();
    DeltaPoly quot(tau), rem = p;
    const long dq = q.degree();
    const RationalFunction& lq = q.leading();
    while (!rem.is_zero() && rem.degree() >= dq) {
        long a = rem.degree() - dq;
        // (lq delta^dq)(c delta^a) = lq sigma^dq(c) delta^(a+dq)
        DeltaPoly step = DeltaPoly::monomial((rem.leading() / lq).shifted(-dq, tau), a, tau);
        quot += step;
        rem -= q * step;
    }
    return {quot, rem};
}

/// Greatest common left divisor g (p = g*x, q = g*y), right-normalized to leading coefficient 1.
inline DeltaPoly dp_gcld(DeltaPoly a, DeltaPoly b) {
    DeltaPoly::same_tau(a, b);
    while (!b.is_zero()) {
        DeltaPoly r = dp_divmod_left(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.right_monic();
}

/// Greatest common right divisor g (p = x*g, q = y*g), left-normalized to leading coefficient 1.
inline DeltaPoly dp_gcrd(DeltaPoly a, DeltaPoly b) {
    DeltaPoly::same_tau(a, b);
    while (!b.is_zero()) {
        DeltaPoly r = dp_divmod_right(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.left_monic();
}

/// Least common left multiple m = u*p = v*q with m monic.
struct LeftMultiple {
    DeltaPoly lclm;
    DeltaPoly u;
    DeltaPoly v;
};

inline LeftMultiple dp_lclm(const DeltaPoly& p, const DeltaPoly& q) {
    DeltaPoly::same_tau(p, q);
    const Rational& tau = p.tau();
    if (p.is_zero() || q.is_zero()) throw DomainError("lclm with a zero argument");
    if (p.is_unit()) {
        // m = q (monic), u = lc(q)^-1 q p^-1, v = lc(q)^-1
        RationalFunction inv_q = q.leading().inverse();
        DeltaPoly m = q.left_scaled(inv_q);
        DeltaPoly u = m * DeltaPoly(p.leading().inverse(), tau);
        return {m, u, DeltaPoly(inv_q, tau)};
    }
    if (q.is_unit()) {
        RationalFunction inv_p = p.leading().inverse();
        DeltaPoly m = p.left_scaled(inv_p);
        DeltaPoly v = m * DeltaPoly(q.leading().inverse(), tau);
        return {m, DeltaPoly(inv_p, tau), v};
    }
    // Extended right-division Euclid: r_i = s_i*p + t_i*q. At termination s*p + t*q = 0.
    DeltaPoly r0 = p, r1 = q;
    DeltaPoly s0(RationalFunction(1), tau), s1(tau), t0(tau), t1(RationalFunction(1), tau);
    while (!r1.is_zero()) {
        auto [quot, rem] = dp_divmod_right(r0, r1);
        DeltaPoly s2 = s0 - quot * s1, t2 = t0 - quot * t1;
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    DeltaPoly u = s1, v = -t1;
    DeltaPoly m = u * p;
    RationalFunction norm = m.leading().inverse();
    return {m.left_scaled(norm), u.left_scaled(norm), v.left_scaled(norm)};
}

struct GcdLclm {
    DeltaPoly gcld;
    DeltaPoly lclm;
    DeltaPoly u;  // u * p = lclm
    DeltaPoly v;  // v * q = lclm
};

/// gcld of (p, q) together with their least common left multiple and its cofactors.
/// A zero argument is allowed as long as the other is nonzero; then lclm = 0.
inline GcdLclm dp_gcd_lclm(const DeltaPoly& p, const DeltaPoly& q) {
    DeltaPoly::same_tau(p, q);
    if (p.is_zero() && q.is_zero()) throw DomainError("gcd/lclm of two zero polynomials");
    const Rational& tau = p.tau();
    DeltaPoly g = dp_gcld(p, q);
    if (p.is_zero()) return {g, DeltaPoly(tau), DeltaPoly(RationalFunction(1), tau), DeltaPoly(tau)};
    if (q.is_zero()) return {g, DeltaPoly(tau), DeltaPoly(tau), DeltaPoly(RationalFunction(1), tau)};
    auto [m, u, v] = dp_lclm(p, q);
    return {g, m, u, v};
}

inline DeltaPoly dp_mul(const DeltaPoly& p, const DeltaPoly& q) { return p * q; }
inline DeltaPoly dp_theta(const DeltaPoly& p) { return p.theta(); }
inline long dp_order(const DeltaPoly& p) { return p.order(); }

}  // namespace piflat
