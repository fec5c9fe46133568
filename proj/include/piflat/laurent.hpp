#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "piflat/delta_poly.hpp"
#include "piflat/errors.hpp"
#include "piflat/format.hpp"

namespace piflat {

/// Truncated Laurent series sum_{j=start}^{start+L-1} c_j d^j (coefficients on the left).
struct TruncatedLaurent {
    long start = 0;
    std::vector<RationalFunction> coeffs;
    Rational tau{1};

    std::size_t length() const noexcept { return coeffs.size(); }
    /// Highest exponent whose coefficient is known.
    long last() const noexcept { return start + static_cast<long>(coeffs.size()) - 1; }

    bool is_zero() const {
        return std::all_of(coeffs.begin(), coeffs.end(), [](const RationalFunction& c) { return c.is_zero(); });
    }

    /// Coefficient of d^e; zero below start, HorizonError past the truncation.
    RationalFunction coeff(long e) const {
        if (e < start) return RationalFunction();
        if (e > last()) throw HorizonError("series coefficient beyond the truncation window");
        return coeffs[static_cast<std::size_t>(e - start)];
    }

    friend bool operator==(const TruncatedLaurent& a, const TruncatedLaurent& b) {
        return a.start == b.start && a.coeffs == b.coeffs && a.tau == b.tau;
    }
};

/// L leading terms of pi^-1 = d^-k (tail)^-1, with pi = tail * d^k and tail(0) != 0.
inline TruncatedLaurent invert_delta_poly(const DeltaPoly& pi, std::size_t L) {
    if (pi.is_zero()) throw DomainError("cannot invert the zero delta-polynomial");
    if (L == 0) throw DomainError("truncation length must be positive");
    const long k = pi.order();
    const long n = pi.degree() - k;
    const RationalFunction b0_inv = pi.coeff(k).inverse();
    std::vector<RationalFunction> c(L);
    c[0] = b0_inv;
    for (std::size_t l = 1; l < L; ++l) {
        RationalFunction acc;
        long top = std::min(static_cast<long>(l), n);
        for (long i = 1; i <= top; ++i) {
            RationalFunction bi = pi.coeff(k + i);
            if (bi.is_zero()) continue;
            acc += bi * c[l - static_cast<std::size_t>(i)].shifted(i, pi.tau());
        }
        c[l] = -(b0_inv * acc);
    }
    for (auto& cj : c) cj = cj.shifted(-k, pi.tau());
    return {-k, std::move(c), pi.tau()};
}

/// pi * s, truncated to the exponents where every contributing coefficient of s is known.
inline TruncatedLaurent series_mul_poly(const DeltaPoly& pi, const TruncatedLaurent& s) {
    if (pi.tau() != s.tau) throw DomainError("series and polynomial use different delays");
    if (pi.is_zero() || s.coeffs.empty()) return {s.start, std::vector<RationalFunction>(std::max<std::size_t>(s.length(), 1)), s.tau};
    const long k = pi.order();
    TruncatedLaurent out{s.start + k, std::vector<RationalFunction>(s.length()), s.tau};
    for (long e = out.start; e <= out.last(); ++e) {
        RationalFunction acc;
        for (const auto& [i, a] : pi.terms()) {
            long j = e - i;
            if (j < s.start) continue;
            const RationalFunction& cj = s.coeffs[static_cast<std::size_t>(j - s.start)];
            if (!cj.is_zero()) acc += a * cj.shifted(i, s.tau);
        }
        out.coeffs[static_cast<std::size_t>(e - out.start)] = acc;
    }
    return out;
}

/// True iff pi * s = 1 on every exponent <= order. False when `order` exceeds the known window.
inline bool series_check(const DeltaPoly& pi, const TruncatedLaurent& s, long order) {
    TruncatedLaurent p = series_mul_poly(pi, s);
    if (order > p.last()) return false;
    if (order >= 0 && p.start > 0) return false;
    for (long e = p.start; e <= order; ++e) {
        const RationalFunction& c = p.coeffs[static_cast<std::size_t>(e - p.start)];
        if (e == 0 ? !c.is_one() : !c.is_zero()) return false;
    }
    return true;
}

/// Ascending-order text, e.g. `-d^-1 - 1 - d - d^2`.
inline std::string to_string(const TruncatedLaurent& s) {
    std::string out;
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        if (s.coeffs[i].is_zero()) continue;
        detail::append_term(out, s.coeffs[i], {detail::power_text("d", s.start + static_cast<long>(i))});
    }
    return out.empty() ? "0" : out;
}

inline std::ostream& operator<<(std::ostream& os, const TruncatedLaurent& s) { return os << to_string(s); }

}  // namespace piflat
