#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "piflat/delta_fraction.hpp"
#include "piflat/errors.hpp"

namespace piflat {

/// Element of O-bar = K(delta)[D]: polynomials in the derivative D with left coefficients in K(delta).
///
/// D commutes with delta and satisfies D*c = c*D + theta(c). Elements of O = K[delta, D] are the
/// values whose coefficients all have denominator 1.
class OrePoly {
public:
    using Terms = std::map<long, DeltaFraction>;

    explicit OrePoly(Rational tau = 1) : tau_(std::move(tau)) {}
    OrePoly(const DeltaFraction& c)  // NOLINT(google-explicit-constructor)
        : tau_(c.tau()) {
        if (!c.is_zero()) terms_.emplace(0, c);
    }
    OrePoly(const DeltaPoly& c) : OrePoly(DeltaFraction(c)) {}  // NOLINT(google-explicit-constructor)
    OrePoly(Terms terms, Rational tau) : terms_(std::move(terms)), tau_(std::move(tau)) {
        std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
        for (const auto& [e, c] : terms_) {
            if (e < 0) throw DomainError("negative derivative exponent");
            if (c.tau() != tau_) throw ShapeError("operator coefficients with different delays");
        }
    }

    static OrePoly monomial(const DeltaFraction& c, long j) {
        OrePoly p(c.tau());
        if (!c.is_zero()) p.terms_.emplace(j, c);
        return p;
    }
    static OrePoly derivative(const Rational& tau, long j = 1) { return monomial(DeltaFraction::one(tau), j); }
    static OrePoly one(const Rational& tau) { return OrePoly(DeltaFraction::one(tau)); }
    static OrePoly scalar(const RationalFunction& c, const Rational& tau) { return OrePoly(DeltaFraction(c, tau)); }

    const Rational& tau() const noexcept { return tau_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.is_one(); }
    /// D-degree; kNegInf for zero.
    long degree() const noexcept { return terms_.empty() ? kNegInf : terms_.rbegin()->first; }
    const DeltaFraction& leading_coeff() const {
        if (terms_.empty()) throw DomainError("leading coefficient of the zero operator");
        return terms_.rbegin()->second;
    }
    DeltaFraction coeff(long j) const {
        auto it = terms_.find(j);
        return it == terms_.end() ? DeltaFraction(tau_) : it->second;
    }
    /// True when the operator lies in O (no delta denominators).
    bool is_denominator_free() const {
        for (const auto& [e, c] : terms_)
            if (!c.is_polynomial()) return false;
        return true;
    }

    friend bool operator==(const OrePoly& a, const OrePoly& b) { return a.tau_ == b.tau_ && a.terms_ == b.terms_; }

    OrePoly operator-() const {
        OrePoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    friend OrePoly operator+(const OrePoly& a, const OrePoly& b) {
        same_tau(a, b);
        OrePoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend OrePoly operator-(const OrePoly& a, const OrePoly& b) { return a + (-b); }

    friend OrePoly operator*(const OrePoly& a, const OrePoly& b) {
        same_tau(a, b);
        OrePoly r(a.tau_);
        if (a.is_zero() || b.is_zero()) return r;
        const long max_j = a.degree();
        for (const auto& [jb, cb] : b.terms_) {
            // theta^l(cb) for l = 0..max_j, computed once per right coefficient
            std::vector<DeltaFraction> thetas{cb};
            for (long l = 1; l <= max_j; ++l) {
                if (thetas.back().is_zero()) break;
                thetas.push_back(thetas.back().theta());
            }
            for (const auto& [ja, ca] : a.terms_) {
                Integer binom = 1;
                for (long l = 0; l <= ja && l < static_cast<long>(thetas.size()); ++l) {
                    if (l > 0) binom = binom * (ja - l + 1) / l;
                    const DeltaFraction& tl = thetas[static_cast<std::size_t>(l)];
                    if (tl.is_zero()) continue;
                    DeltaFraction term = ca * tl;
                    if (binom != 1) term = DeltaFraction(RationalFunction(Rational(binom)), a.tau_) * term;
                    r.add_term(ja + jb - l, term);
                }
            }
        }
        return r;
    }

    OrePoly& operator+=(const OrePoly& o) { return *this = *this + o; }
    OrePoly& operator-=(const OrePoly& o) { return *this = *this - o; }
    OrePoly& operator*=(const OrePoly& o) { return *this = *this * o; }

    /// c * p for c in K(delta): multiplies every coefficient on the left, no D-commutation occurs.
    OrePoly left_scaled(const DeltaFraction& c) const {
        OrePoly r(tau_);
        if (c.is_zero()) return r;
        for (const auto& [e, x] : terms_) r.add_term(e, c * x);
        return r;
    }

    static void same_tau(const OrePoly& a, const OrePoly& b) {
        if (a.tau_ != b.tau_) throw ShapeError("operators with different delays");
    }

private:
    void add_term(long e, const DeltaFraction& c) {
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

/// One term c(t) * delta^i * D^j of an element of O.
struct OMonomial {
    RationalFunction coeff;
    long delta_exp = 0;
    long d_exp = 0;
};

/// Embeds a sum of O-monomials into O-bar.
inline OrePoly op_from_O(const std::vector<OMonomial>& monomials, const Rational& tau) {
    OrePoly p(tau);
    for (const auto& m : monomials) {
        if (m.delta_exp < 0 || m.d_exp < 0) throw DomainError("negative exponent in an O-monomial");
        p += OrePoly::monomial(DeltaFraction(DeltaPoly::monomial(m.coeff, m.delta_exp, tau)), m.d_exp);
    }
    return p;
}

inline OrePoly op_mul(const OrePoly& p, const OrePoly& q) { return p * q; }
inline long op_degree(const OrePoly& p) { return p.degree(); }
inline DeltaFraction op_leading_coeff(const OrePoly& p) { return p.leading_coeff(); }

/// pi * p with pi the monic common left denominator of the coefficients of p; the product lies in O.
inline std::pair<DeltaPoly, OrePoly> op_clear_denominators(const OrePoly& p) {
    if (p.is_zero()) return {DeltaPoly(RationalFunction(1), p.tau()), p};
    std::vector<DeltaFraction> coeffs;
    for (const auto& [e, c] : p.terms()) coeffs.push_back(c);
    auto cd = df_common_denominator(coeffs);
    OrePoly::Terms cleared;
    std::size_t i = 0;
    for (const auto& [e, c] : p.terms()) cleared.emplace(e, DeltaFraction(cd.numerators[i++]));
    return {cd.pi, OrePoly(std::move(cleared), p.tau())};
}

}  // namespace piflat
