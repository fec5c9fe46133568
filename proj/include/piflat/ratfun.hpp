#pragma once

#include <functional>
#include <string>
#include <utility>

#include "piflat/errors.hpp"
#include "piflat/polynomial.hpp"
#include "piflat/rational.hpp"

namespace piflat {

/// Element of the coefficient field K = Q(t).
///
/// Always held in canonical form: numerator and denominator coprime, denominator monic,
/// zero stored as 0/1. Structural equality is therefore field equality.
class RationalFunction {
public:
    RationalFunction() : den_(1) {}
    RationalFunction(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(long c) : RationalFunction(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(int c) : RationalFunction(Rational(c)) {}   // NOLINT(google-explicit-constructor)
    RationalFunction(QPoly p) : num_(std::move(p)), den_(1) {}   // NOLINT(google-explicit-constructor)
    RationalFunction(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

    static RationalFunction t() { return RationalFunction(QPoly::t()); }

    const QPoly& numerator() const noexcept { return num_; }
    const QPoly& denominator() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const { return den_.degree() == 0 && num_.degree() == 0 && num_.leading() == 1; }
    bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const noexcept { return den_.degree() == 0; }
    /// Value of a constant element; meaningful only when is_constant().
    Rational constant_value() const { return num_.is_zero() ? Rational(0) : num_.leading() / den_.leading(); }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_polynomial() && b.is_polynomial()) return RationalFunction(a.num_ * b.num_);
        // Cross-cancel first so the products stay small.
        QPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        QPoly n1 = a.num_.divmod(g1).first, d2 = b.den_.divmod(g1).first;
        QPoly n2 = b.num_.divmod(g2).first, d1 = a.den_.divmod(g2).first;
        RationalFunction r;
        r.num_ = n1 * n2;
        r.den_ = d1 * d2;
        r.normalize_sign();
        return r;
    }

    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        return a * b.inverse();
    }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    RationalFunction inverse() const {
        if (is_zero()) throw DomainError("inversion of the zero rational function");
        RationalFunction r;
        r.num_ = den_;
        r.den_ = num_;
        r.normalize_sign();
        return r;
    }

    /// d/dt by the quotient rule.
    RationalFunction derivative() const {
        if (is_zero() || is_constant()) return {};
        if (is_polynomial()) return RationalFunction(num_.derivative().scaled(1 / den_.leading()));
        return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    /// sigma^k: t -> t - k*tau. Negative k advances.
    RationalFunction shifted(long k, const Rational& tau) const {
        if (k == 0 || is_constant()) return *this;
        Rational c = -Rational(k) * tau;
        RationalFunction r;
        r.num_ = num_.translated(c);
        r.den_ = den_.translated(c);  // translation preserves coprimality and monic leading coefficient
        return r;
    }

    /// Exact value at t0; throws PoleError at a pole.
    Rational operator()(const Rational& t0) const {
        Rational d = den_(t0);
        if (d == 0) throw PoleError("evaluation at pole t = " + t0.get_str());
        return num_(t0) / d;
    }

    std::size_t hash() const {
        std::size_t h = 0;
        auto mix = [&h](const QPoly& p) {
            for (const auto& c : p.coefficients())
                h = h * 1000003u ^ std::hash<std::string>{}(c.get_str());
            h = h * 31u + 7u;
        };
        mix(num_);
        mix(den_);
        return h;
    }

private:
    void canonicalize() {
        if (den_.is_zero()) throw DomainError("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = QPoly(1);
            return;
        }
        if (den_.degree() > 0) {
            QPoly g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = num_.divmod(g).first;
                den_ = den_.divmod(g).first;
            }
        }
        normalize_sign();
    }

    void normalize_sign() {
        if (num_.is_zero()) {
            den_ = QPoly(1);
            return;
        }
        Rational lead = den_.leading();
        if (lead != 1) {
            Rational inv = 1 / lead;
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    QPoly num_;
    QPoly den_;
};

inline RationalFunction rf_add(const RationalFunction& a, const RationalFunction& b) { return a + b; }
inline RationalFunction rf_mul(const RationalFunction& a, const RationalFunction& b) { return a * b; }
inline RationalFunction rf_div(const RationalFunction& a, const RationalFunction& b) { return a / b; }
inline RationalFunction rf_derive(const RationalFunction& a) { return a.derivative(); }
inline RationalFunction rf_shift(const RationalFunction& a, long k, const Rational& tau) { return a.shifted(k, tau); }
inline Rational rf_eval(const RationalFunction& a, const Rational& t0) { return a(t0); }

}  // namespace piflat
