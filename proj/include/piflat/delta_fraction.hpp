#pragma once

#include <span>
#include <utility>
#include <vector>

#include "piflat/delta_poly.hpp"
#include "piflat/errors.hpp"

namespace piflat {

/// Element of the skew field K(delta), stored as a canonical left fraction d^-1 * n.
///
/// Canonical form: d monic, gcld(d, n) = 1, zero stored as 1^-1 * 0. Two fractions are equal
/// exactly when their canonical forms coincide.
class DeltaFraction {
public:
    explicit DeltaFraction(Rational tau = 1) : den_(RationalFunction(1), tau), num_(tau) {}
    DeltaFraction(DeltaPoly n)  // NOLINT(google-explicit-constructor)
        : den_(RationalFunction(1), n.tau()), num_(std::move(n)) {}
    DeltaFraction(const RationalFunction& c, const Rational& tau) : den_(RationalFunction(1), tau), num_(c, tau) {}
    /// d^-1 * n, canonicalized.
    DeltaFraction(DeltaPoly d, DeltaPoly n) : den_(std::move(d)), num_(std::move(n)) {
        DeltaPoly::same_tau(den_, num_);
        if (den_.is_zero()) throw DomainError("left fraction with zero denominator");
        canonicalize();
    }

    static DeltaFraction one(const Rational& tau) { return DeltaFraction(RationalFunction(1), tau); }

    const DeltaPoly& denominator() const noexcept { return den_; }
    const DeltaPoly& numerator() const noexcept { return num_; }
    const Rational& tau() const noexcept { return num_.tau(); }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_one() const { return den_.is_one() && num_.is_one(); }

    friend bool operator==(const DeltaFraction& a, const DeltaFraction& b) {
        return a.den_ == b.den_ && a.num_ == b.num_;
    }

    DeltaFraction operator-() const {
        DeltaFraction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend DeltaFraction operator+(const DeltaFraction& a, const DeltaFraction& b) {
        DeltaPoly::same_tau(a.num_, b.num_);
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return DeltaFraction(a.den_, a.num_ + b.num_);
        auto [m, ua, ub] = dp_lclm(a.den_, b.den_);
        return DeltaFraction(m, ua * a.num_ + ub * b.num_);
    }
    friend DeltaFraction operator-(const DeltaFraction& a, const DeltaFraction& b) { return a + (-b); }

    friend DeltaFraction operator*(const DeltaFraction& a, const DeltaFraction& b) {
        DeltaPoly::same_tau(a.num_, b.num_);
        if (a.is_zero() || b.is_zero()) return DeltaFraction(a.tau());
        if (b.den_.is_one()) return DeltaFraction(a.den_, a.num_ * b.num_);
        // n_a * d_b^-1 = u^-1 * v where u * n_a = v * d_b
        auto [m, u, v] = dp_lclm(a.num_, b.den_);
        return DeltaFraction(u * a.den_, v * b.num_);
    }

    DeltaFraction& operator+=(const DeltaFraction& o) { return *this = *this + o; }
    DeltaFraction& operator-=(const DeltaFraction& o) { return *this = *this - o; }
    DeltaFraction& operator*=(const DeltaFraction& o) { return *this = *this * o; }

    DeltaFraction inverse() const {
        if (is_zero()) throw DomainError("inversion of zero in K(delta)");
        return DeltaFraction(num_, den_);
    }

    /// Extension of d/dt to fractions: theta(d^-1 n) = d^-1 (theta(n) - theta(d) * d^-1 n).
    DeltaFraction theta() const {
        if (is_zero()) return *this;
        if (den_.is_one()) return DeltaFraction(num_.theta());
        DeltaPoly dd = den_.theta();
        DeltaFraction inner = DeltaFraction(num_.theta()) - DeltaFraction(dd) * *this;
        return DeltaFraction(den_, DeltaPoly(RationalFunction(1), tau())) * inner;
    }

    std::size_t hash() const { return den_.hash() * 31u + num_.hash(); }

private:
    void canonicalize() {
        const Rational& tau = num_.tau();
        if (num_.is_zero()) {
            den_ = DeltaPoly(RationalFunction(1), tau);
            return;
        }
        if (den_.degree() > 0 && num_.degree() >= 0) {
            DeltaPoly g = dp_gcld(den_, num_);
            if (g.degree() > 0) {
                den_ = dp_divmod_left(den_, g).first;
                num_ = dp_divmod_left(num_, g).first;
            }
        }
        RationalFunction lead = den_.leading();
        if (!lead.is_one()) {
            RationalFunction inv = lead.inverse();
            den_ = den_.left_scaled(inv);
            num_ = num_.left_scaled(inv);
        }
    }

    DeltaPoly den_;
    DeltaPoly num_;
};

inline DeltaFraction df_add(const DeltaFraction& a, const DeltaFraction& b) { return a + b; }
inline DeltaFraction df_mul(const DeltaFraction& a, const DeltaFraction& b) { return a * b; }
inline DeltaFraction df_inv(const DeltaFraction& a) { return a.inverse(); }
inline DeltaFraction df_theta(const DeltaFraction& a) { return a.theta(); }
inline bool df_eq(const DeltaFraction& a, const DeltaFraction& b) { return (a - b).is_zero(); }

/// Common left denominator: pi = left lclm of all denominators (monic), plus pi * entry for each entry.
struct CommonDenominator {
    DeltaPoly pi;
    std::vector<DeltaPoly> numerators;
};

inline CommonDenominator df_common_denominator(std::span<const DeltaFraction> entries) {
    if (entries.empty()) throw PreconditionError("common denominator of an empty list");
    const Rational& tau = entries.front().tau();
    DeltaPoly pi(RationalFunction(1), tau);
    for (const auto& e : entries) {
        DeltaPoly::same_tau(pi, e.denominator());
        if (e.denominator().is_one() || e.denominator() == pi) continue;
        pi = dp_lclm(pi, e.denominator()).lclm;
    }
    CommonDenominator out{pi, {}};
    out.numerators.reserve(entries.size());
    for (const auto& e : entries) {
        // pi = u * d  =>  pi * d^-1 n = u * n
        auto [u, rem] = dp_divmod_right(pi, e.denominator());
        if (!rem.is_zero()) throw DomainError("internal: common denominator is not a left multiple");
        out.numerators.push_back(u * e.numerator());
    }
    return out;
}

}  // namespace piflat
