#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "piflat/ore_poly.hpp"

namespace piflat {

// Canonical text forms. Everything printed here for elements of O parses back with the system grammar.

inline std::string to_string(const QPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& cs = p.coefficients();
    for (long e = p.degree(); e >= 0; --e) {
        const Rational& c = cs[static_cast<std::size_t>(e)];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? "-" : "+";
        }
        std::string var = e == 0 ? "" : (e == 1 ? "t" : "t^" + std::to_string(e));
        if (var.empty()) out += mag.get_str();
        else if (mag == 1) out += var;
        else out += mag.get_str() + "*" + var;
    }
    return out;
}

namespace detail {

inline std::size_t nonzero_terms(const QPoly& p) {
    std::size_t n = 0;
    for (const auto& c : p.coefficients())
        if (c != 0) ++n;
    return n;
}

inline bool negative_lead(const RationalFunction& c) { return !c.is_zero() && c.numerator().leading() < 0; }

/// Rational function text that is safe as a factor of a product.
inline std::string factor_text(const RationalFunction& c) {
    if (c.is_polynomial()) {
        std::string s = to_string(c.numerator());
        return nonzero_terms(c.numerator()) > 1 ? "(" + s + ")" : s;
    }
    std::string n = to_string(c.numerator()), d = to_string(c.denominator());
    if (nonzero_terms(c.numerator()) > 1 || negative_lead(c)) n = "(" + n + ")";
    if (nonzero_terms(c.denominator()) > 1 || c.denominator().leading() != 1 || c.denominator().degree() > 1) d = "(" + d + ")";
    return n + "/" + d;
}

inline std::string power_text(const char* var, long e) {
    if (e == 0) return "";
    if (e == 1) return var;
    return std::string(var) + "^" + std::to_string(e);
}

/// Appends sign-separated monomial text. `coeff` is a nonzero rational function.
inline void append_term(std::string& out, const RationalFunction& coeff, const std::vector<std::string>& vars) {
    bool neg = negative_lead(coeff);
    RationalFunction mag = neg ? -coeff : coeff;
    if (out.empty()) {
        if (neg) out += "-";
    } else {
        out += neg ? " - " : " + ";
    }
    std::vector<std::string> parts;
    bool has_vars = false;
    for (const auto& v : vars)
        if (!v.empty()) has_vars = true;
    if (!mag.is_one() || !has_vars) {
        if (!has_vars && mag.is_polynomial() && !(neg && nonzero_terms(mag.numerator()) > 1))
            parts.push_back(to_string(mag.numerator()));
        else parts.push_back(factor_text(mag));
    }
    for (const auto& v : vars)
        if (!v.empty()) parts.push_back(v);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "*";
        out += parts[i];
    }
}

}  // namespace detail

inline std::string to_string(const RationalFunction& c) {
    if (c.is_polynomial()) return to_string(c.numerator());
    std::string out;
    detail::append_term(out, c, {});
    return out;
}

inline std::string to_string(const DeltaPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        detail::append_term(out, it->second, {detail::power_text("d", it->first)});
    return out;
}

inline std::string to_string(const DeltaFraction& f) {
    if (f.is_polynomial()) return to_string(f.numerator());
    return "(" + to_string(f.denominator()) + ")^-1*(" + to_string(f.numerator()) + ")";
}

/// Canonical form: monomials c(t)*d^i*D^j ordered by (j, i) descending.
inline std::string to_string(const OrePoly& p) {
    if (p.is_zero()) return "0";
    if (!p.is_denominator_free()) {
        std::string out;
        for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
            if (!out.empty()) out += " + ";
            const DeltaFraction& c = it->second;
            std::string text = to_string(c);
            bool wrap = it->first > 0 && c.is_polynomial() && (c.numerator().terms().size() > 1 || text[0] == '-');
            out += wrap ? "(" + text + ")" : text;
            if (it->first > 0) out += "*" + detail::power_text("D", it->first);
        }
        return out;
    }
    std::string out;
    for (auto jt = p.terms().rbegin(); jt != p.terms().rend(); ++jt) {
        const DeltaPoly& c = jt->second.numerator();
        for (auto it = c.terms().rbegin(); it != c.terms().rend(); ++it)
            detail::append_term(out, it->second,
                                {detail::power_text("d", it->first), detail::power_text("D", jt->first)});
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const QPoly& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const RationalFunction& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const DeltaPoly& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const DeltaFraction& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const OrePoly& p) { return os << to_string(p); }

}  // namespace piflat
