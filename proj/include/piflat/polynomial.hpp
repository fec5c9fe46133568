#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "piflat/errors.hpp"
#include "piflat/rational.hpp"

namespace piflat {

/// Dense univariate polynomial in t over Q. coefficients()[i] multiplies t^i; no trailing zeros.
class QPoly {
public:
    QPoly() = default;
    QPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
        if (c != 0) coeffs_.push_back(c);
    }
    QPoly(long c) : QPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    QPoly(int c) : QPoly(Rational(c)) {}   // NOLINT(google-explicit-constructor)
    explicit QPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    QPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

    static QPoly t() { return QPoly({Rational(0), Rational(1)}); }
    static QPoly monomial(std::size_t exponent, const Rational& c = 1) {
        std::vector<Rational> v(exponent + 1);
        v[exponent] = c;
        return QPoly(std::move(v));
    }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
    const Rational& leading() const { return coeffs_.back(); }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }

    QPoly operator-() const {
        QPoly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
        return QPoly(std::move(v));
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return QPoly(std::move(v));
    }

    QPoly& operator+=(const QPoly& o) { return *this = *this + o; }
    QPoly& operator-=(const QPoly& o) { return *this = *this - o; }
    QPoly& operator*=(const QPoly& o) { return *this = *this * o; }

    QPoly scaled(const Rational& c) const {
        if (c == 0) return {};
        QPoly r = *this;
        for (auto& x : r.coeffs_) x *= c;
        return r;
    }

    QPoly monic() const { return is_zero() ? *this : scaled(1 / leading()); }

    /// Euclidean division: *this = q * d + r with deg r < deg d.
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const {
        if (d.is_zero()) throw DomainError("polynomial division by zero");
        std::vector<Rational> rem = coeffs_;
        if (degree() < d.degree()) return {QPoly(), *this};
        std::vector<Rational> quot(static_cast<std::size_t>(degree() - d.degree() + 1));
        const Rational inv_lead = 1 / d.leading();
        for (long k = degree() - d.degree(); k >= 0; --k) {
            Rational c = rem[static_cast<std::size_t>(k + d.degree())] * inv_lead;
            quot[static_cast<std::size_t>(k)] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j < d.coeffs_.size(); ++j) rem[static_cast<std::size_t>(k) + j] -= c * d.coeffs_[j];
        }
        return {QPoly(std::move(quot)), QPoly(std::move(rem))};
    }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    QPoly derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Rational> v(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<long>(i);
        return QPoly(std::move(v));
    }

    /// p(t + c) via Horner composition.
    QPoly translated(const Rational& c) const {
        if (c == 0 || coeffs_.size() <= 1) return *this;
        QPoly lin({c, Rational(1)});
        QPoly acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lin + QPoly(*it);
        return acc;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

/// Monic gcd; gcd(0, 0) = 0.
inline QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a.divmod(b).second.monic();
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

}  // namespace piflat
