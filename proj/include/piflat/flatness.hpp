#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "piflat/errors.hpp"
#include "piflat/reduction.hpp"

namespace piflat {

/// Linear time-varying differential-delay system A x = B u over O.
class SystemLTV {
public:
    /// Validates shapes, that A and B lie in O, and that (A, -B) has full left row rank over O-bar.
    SystemLTV(OpMatrix a, OpMatrix b) : a_(std::move(a)), b_(std::move(b)) {
        if (a_.rows() == 0 || a_.rows() != a_.cols()) throw ShapeError("A must be square and non-empty");
        if (b_.rows() != a_.rows() || b_.cols() == 0 || b_.cols() > a_.rows())
            throw ShapeError("B must be n x m with 1 <= m <= n");
        if (a_.tau() != b_.tau()) throw ShapeError("A and B use different delays");
        if (!a_.is_denominator_free() || !b_.is_denominator_free())
            throw PreconditionError("system matrices must have entries in O (no delta denominators)");
        if (row_rank(matrix()) != a_.rows()) throw PreconditionError("(A, -B) does not have full left row rank");
    }

    const OpMatrix& A() const noexcept { return a_; }
    const OpMatrix& B() const noexcept { return b_; }
    const Rational& tau() const noexcept { return a_.tau(); }
    std::size_t states() const noexcept { return a_.rows(); }
    std::size_t inputs() const noexcept { return b_.cols(); }

    /// F = (A, -B), acting on xi = (x ; u).
    OpMatrix matrix() const { return hcat(a_, -b_); }

private:
    OpMatrix a_;
    OpMatrix b_;
};

enum class FlatnessKind { pi_flat, pi_zero_flat };

inline const char* to_string(FlatnessKind k) { return k == FlatnessKind::pi_flat ? "pi_flat" : "pi_zero_flat"; }

/// Witness (pi, P, Q): pi^-1 P * pi^-1 Q = I_m and F * pi^-1 Q = 0, with P and Q over O.
struct FlatnessCertificate {
    DeltaPoly pi;
    OpMatrix P;  // m x (n+m)
    OpMatrix Q;  // (n+m) x m
    FlatnessKind kind = FlatnessKind::pi_flat;
    std::size_t k_index = 0;
    /// Input map R~ (u = R~ x on the behavior), attached by the pi-0-flat algorithm.
    std::optional<OpMatrix> input_map;

    std::size_t outputs() const noexcept { return P.rows(); }
    DeltaFraction pi_inverse() const { return DeltaFraction(pi, DeltaPoly(RationalFunction(1), pi.tau())); }
    OpMatrix P_bar() const { return P.left_scaled(pi_inverse()); }
    OpMatrix Q_bar() const { return Q.left_scaled(pi_inverse()); }
};

struct FlatnessOutcome {
    std::optional<FlatnessCertificate> certificate;
    std::string failure;

    bool ok() const noexcept { return certificate.has_value(); }
};

struct VerificationReport {
    bool ok = false;
    std::string reason;
};

/// k = 1 + D-degree of the input block P*(0 ; I_m), or 0 when that block vanishes.
inline std::size_t flatness_index_k(const FlatnessCertificate& cert, std::size_t n, std::size_t m) {
    if (cert.P.rows() != m || cert.P.cols() != n + m) throw ShapeError("certificate shape does not match (n, m)");
    OpMatrix input_block = cert.P.block(0, n, m, m);
    if (input_block.is_zero()) return 0;
    return static_cast<std::size_t>(input_block.degree() + 1);
}

inline std::size_t flatness_index_k(const FlatnessCertificate& cert) {
    std::size_t m = cert.P.rows();
    return flatness_index_k(cert, cert.P.cols() - m, m);
}

inline VerificationReport verify_certificate_report(const OpMatrix& F, const FlatnessCertificate& cert) {
    const std::size_t total = F.cols();
    const std::size_t m = cert.P.rows();
    if (m == 0 || F.rows() + m != total) return {false, "certificate output count does not match the system"};
    if (cert.P.cols() != total || cert.Q.rows() != total || cert.Q.cols() != m)
        return {false, "certificate matrix shapes do not match the system"};
    if (cert.pi.tau() != F.tau() || cert.P.tau() != F.tau() || cert.Q.tau() != F.tau())
        return {false, "certificate delay differs from the system delay"};
    if (cert.pi.is_zero()) return {false, "pi is zero"};
    if (!cert.pi.leading().is_one()) return {false, "pi is not monic"};
    if (!cert.P.is_denominator_free() || !cert.Q.is_denominator_free()) return {false, "P or Q has delta denominators"};
    if (cert.kind == FlatnessKind::pi_zero_flat && !cert.P.block(0, F.rows(), m, m).is_zero())
        return {false, "pi_zero_flat certificate depends on the input"};
    OpMatrix pbar = cert.P_bar(), qbar = cert.Q_bar();
    if (!(pbar * qbar).is_identity()) return {false, "pi^-1 P * pi^-1 Q is not the identity"};
    if (!(F * qbar).is_zero()) return {false, "F * pi^-1 Q is not zero"};
    return {true, {}};
}

inline bool verify_certificate(const OpMatrix& F, const FlatnessCertificate& cert) {
    return verify_certificate_report(F, cert).ok;
}

/// Clears a common left denominator from (P-bar, Q-bar) and packages the certificate.
inline FlatnessCertificate make_certificate(const OpMatrix& pbar, const OpMatrix& qbar, FlatnessKind kind) {
    std::vector<DeltaFraction> coeffs;
    auto collect = [&coeffs](const OpMatrix& mat) {
        for (std::size_t i = 0; i < mat.rows(); ++i)
            for (std::size_t j = 0; j < mat.cols(); ++j)
                for (const auto& [e, c] : mat(i, j).terms()) coeffs.push_back(c);
    };
    collect(pbar);
    collect(qbar);
    DeltaPoly pi(RationalFunction(1), pbar.tau());
    if (!coeffs.empty()) pi = df_common_denominator(coeffs).pi;
    DeltaFraction pi_frac(pi);
    FlatnessCertificate cert{pi, pbar.left_scaled(pi_frac), qbar.left_scaled(pi_frac), kind, 0, std::nullopt};
    cert.k_index = flatness_index_k(cert);
    return cert;
}

/// pi-flat output of F xi = 0 via column reduction of F (hyper-regularity of F).
inline FlatnessOutcome pi_flat_output(const OpMatrix& F, ReductionOptions options = {}) {
    const std::size_t n = F.rows(), total = F.cols();
    if (total <= n) throw ShapeError("F must have more columns than rows");
    const std::size_t m = total - n;
    auto W = right_inverse(F, options);
    if (!W) return {std::nullopt, "F is not hyper-regular over O-bar"};
    OpMatrix qbar = W->forward.block(0, n, total, m);
    OpMatrix pbar = W->inverse.block(n, 0, m, total);
    FlatnessCertificate cert = make_certificate(pbar, qbar, FlatnessKind::pi_flat);
    auto report = verify_certificate_report(F, cert);
    if (!report.ok) throw DomainError("internal: pi-flat certificate failed self-check: " + report.reason);
    return {std::move(cert), {}};
}

struct Elimination {
    UnimodularPair M;  // M.forward * B = (I_m ; 0)
    OpMatrix R;        // top m rows of M.forward * A (over O-bar)
    OpMatrix F;        // phi * bottom (n-m) rows of M.forward * A (over O)
    DeltaPoly phi;
};

/// Splits M A x = M B u = (I ; 0) u into u = R x and the input-free equations F x = 0.
inline Elimination eliminate_input(const SystemLTV& sys, ReductionOptions options = {}) {
    const std::size_t n = sys.states(), m = sys.inputs();
    auto M = left_inverse(sys.B(), options);
    if (!M) throw PreconditionError("B is not hyper-regular");
    OpMatrix MA = M->forward * sys.A();
    OpMatrix R = MA.block(0, 0, m, n);
    OpMatrix bottom = MA.block(m, 0, n - m, n);
    std::vector<DeltaFraction> coeffs;
    for (std::size_t i = 0; i < bottom.rows(); ++i)
        for (std::size_t j = 0; j < bottom.cols(); ++j)
            for (const auto& [e, c] : bottom(i, j).terms()) coeffs.push_back(c);
    DeltaPoly phi(RationalFunction(1), sys.tau());
    if (!coeffs.empty()) phi = df_common_denominator(coeffs).pi;
    OpMatrix F = bottom.left_scaled(DeltaFraction(phi));
    return {std::move(*M), std::move(R), std::move(F), std::move(phi)};
}

/// pi-0-flat output (flat output depending on x only). Requires B hyper-regular; throws
/// PreconditionError otherwise so the caller can fall back to pi_flat_output on (A, -B).
inline FlatnessOutcome pi_zero_flat_output(const SystemLTV& sys, ReductionOptions options = {}) {
    const std::size_t n = sys.states(), m = sys.inputs();
    const Rational& tau = sys.tau();
    Elimination elim = eliminate_input(sys, options);

    // pi-flat output of the input-free part F x = 0 ((n-m) x n)
    auto W = right_inverse(elim.F, options);
    if (!W) return {std::nullopt, "the input-free part F is not hyper-regular; the system is not pi-0-flat"};
    const std::size_t r = n - m;
    OpMatrix q1 = W->forward.block(0, r, n, m);
    OpMatrix p1 = W->inverse.block(r, 0, m, n);

    OpMatrix pbar = hcat(p1, OpMatrix(m, m, tau));
    OpMatrix qbar = vcat(q1, elim.R * q1);

    // M (A, -B) Qbar = 0
    if (!(elim.M.forward * (sys.matrix() * qbar)).is_zero())
        throw DomainError("internal: eliminated system does not annihilate Q-bar");

    FlatnessCertificate cert = make_certificate(pbar, qbar, FlatnessKind::pi_zero_flat);
    cert.input_map = elim.R;
    auto report = verify_certificate_report(sys.matrix(), cert);
    if (!report.ok) throw DomainError("internal: pi-0-flat certificate failed self-check: " + report.reason);
    return {std::move(cert), {}};
}

/// Certificate for the flat output z with y = T z: P-bar -> T^-1 P-bar, Q-bar -> Q-bar T.
inline FlatnessCertificate transform_flat_output(const FlatnessCertificate& cert, const UnimodularPair& T) {
    if (T.size() != cert.outputs()) throw ShapeError("output transform has the wrong size");
    OpMatrix pbar = T.inverse * cert.P_bar();
    OpMatrix qbar = cert.Q_bar() * T.forward;
    const std::size_t m = cert.outputs(), n = cert.P.cols() - m;
    FlatnessKind kind = cert.kind;
    if (kind == FlatnessKind::pi_zero_flat && !pbar.block(0, n, m, m).is_zero()) kind = FlatnessKind::pi_flat;
    FlatnessCertificate out = make_certificate(pbar, qbar, kind);
    out.input_map = cert.input_map;
    return out;
}

}  // namespace piflat
