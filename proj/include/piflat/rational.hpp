#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "piflat/errors.hpp"

namespace piflat {

/// Exact rational scalar. mpq_class keeps numerator/denominator reduced with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "7", "-3/4" or "+2". Throws DomainError on malformed input or a zero denominator.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    if (s.empty()) throw DomainError("empty rational literal");
    auto slash = s.find('/');
    auto valid_int = [](const std::string& part) {
        std::size_t i = (!part.empty() && part.front() == '-') ? 1 : 0;
        if (i >= part.size()) return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!valid_int(s)) throw DomainError("malformed rational literal '" + s + "'");
        return Rational(Integer(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw DomainError("malformed rational literal '" + s + "'");
    Integer d(den);
    if (d == 0) throw DomainError("zero denominator in rational literal");
    Rational r(Integer(num), d);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

/// Smallest integer not below r.
inline Integer ceil(const Rational& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Integer floor(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

}  // namespace piflat
