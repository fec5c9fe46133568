// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "piflat/piflat.hpp"
#include "support/properties.hpp"
#include "support/systems.hpp"

using namespace piflat;
using piflat::testing::Ops;

namespace {

const Ops o;

struct Check {
    std::string detail;
    bool ok = true;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string run(const std::string& cmd, int& status) {
    std::array<char, 512> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) out += buf.data();
    status = pclose(pipe);
    return out;
}

TruncatedLaurent constant_series(long start, long value, std::size_t L) {
    return {start, std::vector<RationalFunction>(L, RationalFunction(Rational(value))), Rational(1)};
}

Check delay_example_certificate() {
    Check c;
    auto sys = piflat::testing::example1_system();
    auto out = pi_zero_flat_output(sys);
    c.require(out.ok(), "flat0 failed: " + out.failure);
    if (!c.ok) return c;
    const auto& cert = *out.certificate;
    c.require(cert.kind == FlatnessKind::pi_zero_flat, "kind is not pi_zero_flat");
    c.require(cert.k_index == 0, "k != 0");
    c.require(!cert.pi.is_zero() && cert.pi.leading().is_one(), "pi is not monic");
    OpMatrix pbar = cert.P_bar();
    c.require(pbar.rows() == 1 && pbar(0, 1).is_zero() && pbar(0, 2).is_zero() && !pbar(0, 0).is_zero() &&
                  pbar(0, 0).degree() == 0,
              "flat output is not a unit multiple of x1");
    c.require(verify_certificate(sys.matrix(), cert), "computed certificate does not verify");
    c.require(verify_certificate(sys.matrix(), piflat::testing::example1_reference_certificate()),
              "hand-derived certificate does not verify");
    c.detail = c.ok ? "kind pi_zero_flat, k 0, pi " + to_string(cert.pi) + ", y = x1" : c.detail;
    return c;
}

Check laurent_inversion() {
    Check c;
    auto s = invert_delta_poly(o.dp(2) - o.dp(), 10);
    c.require(s.start == -1 && s.length() == 10, "wrong window for d^2 - d");
    for (const auto& x : s.coeffs) c.require(x == RationalFunction(-1), "coefficient != -1");
    c.require(series_check(o.dp(2) - o.dp(), s, 7), "series_check to order 7 failed");
    DeltaPoly cubic = o.dp(3) - o.dp(2);
    c.require(series_check(cubic, constant_series(-2, -1, 10), 7), "all -1 from -2 rejected for d^3 - d^2");
    c.require(!series_check(cubic, constant_series(-2, 1, 10), 7), "all +1 from -2 accepted for d^3 - d^2");
    c.require(invert_delta_poly(cubic, 10) == constant_series(-2, -1, 10), "inverse of d^3 - d^2 differs");
    if (c.ok) c.detail = "d^2 - d: start -1, all -1; d^3 - d^2: -1 accepted, +1 rejected";
    return c;
}

Check derivative_input() {
    Check c;
    auto sys = piflat::testing::derivative_input_system();
    auto out = pi_flat_output(sys.matrix());
    c.require(out.ok(), "not flat: " + out.failure);
    if (!c.ok) return c;
    c.require(out.certificate->pi.degree() == 0, "pi has positive degree");
    c.require(flatness_index_k(*out.certificate) == 1, "k != 1");
    c.require(verify_certificate(sys.matrix(), *out.certificate), "certificate does not verify");
    if (c.ok) c.detail = "pi degree 0, k 1, y = u";
    return c;
}

Check motion_planning() {
    Check c;
    auto sys = piflat::testing::example1_system();
    auto cert = *pi_zero_flat_output(sys).certificate;
    PlanRequest req;
    req.degree = 5;
    req.start = 0;
    req.end = 2;
    req.conditions = rest_to_rest(5, 0, 2, 0, 1);
    auto y = plan_polynomial(req);
    c.require(sig_eval(y, 0) == 0 && sig_eval(y, 2) == 1 && sig_eval(y, -1) == 0 && sig_eval(y, 3) == 1,
              "planned output misses a boundary value");
    auto traj = plan_trajectory(sys, cert, {y}, 6);
    auto res = sig_residual(sys, traj.states, traj.inputs, {-3, 6});
    for (const auto& r : res) c.require(sig_is_zero_on(r, -3, 6), "residual is not zero on [-3, 6]");
    c.require(!traj.inputs[0].is_zero() && traj.inputs[0].support_start() == -2, "u does not start at -2");
    if (c.ok) c.detail = "residual exactly zero on [-3, 6], u starts at -2";
    return c;
}

Check kernel_properties() {
    Check c;
    std::size_t total = 0;
    for (const auto& r : piflat::testing::all_kernel_properties(200)) {
        total += r.cases;
        c.require(r.ok() && r.cases >= 200, r.name + ": " + r.failure);
    }
    if (c.ok) c.detail = "8 suites, " + std::to_string(total) + " cases";
    return c;
}

Check negative_cases() {
    Check c;
    c.require(!is_hyper_regular(OpMatrix({{o.D()}}, o.tau)), "(D) reported hyper-regular");
    SystemLTV zero_input(OpMatrix({{o.D(), o.zero()}, {o.zero(), o.D()}}, o.tau),
                         OpMatrix({{o.zero()}, {o.zero()}}, o.tau));
    bool thrown = false;
    try {
        pi_zero_flat_output(zero_input);
    } catch (const PreconditionError&) {
        thrown = true;
    }
    c.require(thrown, "B = (0; 0) did not raise PreconditionError");
    auto sys = piflat::testing::example1_system();
    auto cert = piflat::testing::example1_reference_certificate();
    cert.Q = cert.Q.left_scaled(DeltaFraction(o.dp()));
    c.require(!verify_certificate(sys.matrix(), cert), "tampered Q verified");
    auto cert2 = piflat::testing::example1_reference_certificate();
    cert2.P = OpMatrix({{o.dp(3) - o.dp(2), o.zero(), o.one()}}, o.tau);
    c.require(!verify_certificate(sys.matrix(), cert2), "tampered P verified");
    if (c.ok) c.detail = "(D) rejected, B = 0 raises, tampered certificates fail";
    return c;
}

Check cli_round_trip() {
    Check c;
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(PIFLAT_SYSTEMS_DIR)) {
        if (entry.path().extension() != ".sys") continue;
        ++files;
        SystemFile first = parse_system(read_file(entry.path()));
        std::string text = print_system(first);
        SystemFile second = parse_system(text);
        c.require(first == second && print_system(second) == text, "no fixed point for " + entry.path().string());
    }
    c.require(files > 0, "no shipped system files");
    int status = 0;
    std::string out = run(std::string("\"") + PIFLAT_CLI + "\" invert \"d^2 - d\" --terms 6 --tau 1", status);
    c.require(status == 0, "invert exited with status " + std::to_string(status));
    c.require(out.find("-d^-1 - 1 - d - d^2 - d^3 - d^4") != std::string::npos, "invert printed: " + out);
    if (c.ok) c.detail = std::to_string(files) + " files fixed, invert prints -d^-1 - 1 - d - d^2 - d^3 - d^4";
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        double limit_s;
        std::function<Check()> body;
    };
    const std::vector<Criterion> criteria = {
        {1, 5.0, delay_example_certificate}, {2, 0.1, laurent_inversion}, {3, 0.1, derivative_input},
        {4, 5.0, motion_planning},           {5, 60.0, kernel_properties}, {6, 5.0, negative_cases},
        {7, 5.0, cli_round_trip},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = cr.body();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.ok && secs > cr.limit_s) {
            c.ok = false;
            c.detail = "took " + std::to_string(secs) + " s, limit " + std::to_string(cr.limit_s) + " s";
        }
        if (!c.ok) ++failed;
        std::printf("%s criterion %d (%.3f s): %s\n", c.ok ? "PASS" : "FAIL", cr.id, secs, c.detail.c_str());
    }
    return failed == 0 ? 0 : 1;
}
