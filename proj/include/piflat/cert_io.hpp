#pragma once

#include <string>

#include <json.hpp>

#include "piflat/flatness.hpp"
#include "piflat/format.hpp"
#include "piflat/parse.hpp"

namespace piflat {

namespace detail {

inline nlohmann::json matrix_json(const OpMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline OpMatrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols, const Rational& tau,
                                 const char* name) {
    if (!j.is_array() || j.size() != rows) throw ParseError(std::string("certificate field '") + name + "' has the wrong shape", 1, 1);
    OpMatrix m(rows, cols, tau);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw ParseError(std::string("certificate field '") + name + "' has the wrong shape", 1, 1);
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = parse_operator(j[i][k].get<std::string>(), tau);
    }
    return m;
}

}  // namespace detail

/// Structured certificate; every operator is a string in the system grammar.
inline nlohmann::json certificate_to_json(const FlatnessCertificate& cert) {
    const std::size_t m = cert.outputs(), n = cert.P.cols() - m;
    nlohmann::json j;
    j["kind"] = to_string(cert.kind);
    j["k"] = cert.k_index;
    j["tau"] = cert.pi.tau().get_str();
    j["n"] = n;
    j["m"] = m;
    j["pi"] = to_string(cert.pi);
    j["P"] = detail::matrix_json(cert.P);
    j["Q"] = detail::matrix_json(cert.Q);
    if (cert.input_map) j["input_map"] = detail::matrix_json(*cert.input_map);
    return j;
}

inline FlatnessCertificate certificate_from_json(const nlohmann::json& j) {
    try {
        Rational tau = parse_tau(j.at("tau").get<std::string>());
        std::size_t n = j.at("n").get<std::size_t>(), m = j.at("m").get<std::size_t>();
        FlatnessCertificate cert;
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "pi_flat") cert.kind = FlatnessKind::pi_flat;
        else if (kind == "pi_zero_flat") cert.kind = FlatnessKind::pi_zero_flat;
        else throw ParseError("unknown certificate kind '" + kind + "'", 1, 1);
        cert.pi = parse_delta_poly(j.at("pi").get<std::string>(), tau);
        cert.P = detail::matrix_from_json(j.at("P"), m, n + m, tau, "P");
        cert.Q = detail::matrix_from_json(j.at("Q"), n + m, m, tau, "Q");
        cert.k_index = j.at("k").get<std::size_t>();
        if (j.contains("input_map")) cert.input_map = detail::matrix_from_json(j["input_map"], m, n, tau, "input_map");
        return cert;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed certificate: ") + e.what(), 1, 1);
    }
}

}  // namespace piflat
