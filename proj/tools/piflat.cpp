// piflat: flatness certificates and exact motion planning for LTV differential-delay systems.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "piflat/piflat.hpp"

using namespace piflat;
using nlohmann::json;

namespace {

enum Exit { ok = 0, usage = 1, parse_failure = 2, not_flat = 3, verify_failure = 4, evaluation = 5 };

/// Error carrying an exit code and a category name.
struct CliError : std::runtime_error {
    Exit code;
    std::string category;
    std::optional<std::pair<std::size_t, std::size_t>> position;
    CliError(Exit c, std::string cat, const std::string& what) : std::runtime_error(what), code(c), category(std::move(cat)) {}
};

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError(usage, "io", "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Rational rational_arg(const std::string& text, const char* flag) {
    try {
        return parse_tau(text);
    } catch (const ParseError&) {
        throw CliError(usage, "usage", std::string("option ") + flag + " expects a rational number, got '" + text + "'");
    }
}

struct Loaded {
    SystemFile file;
    SystemLTV sys;
};

Loaded load_system(const std::string& path) {
    std::string text = read_text(path);
    SystemFile file;
    try {
        file = parse_system(text);
    } catch (const ParseError& e) {
        CliError err(parse_failure, "parse", path + ": " + e.what());
        err.position = {e.line(), e.column()};
        throw err;
    }
    try {
        return {file, file.system()};
    } catch (const ShapeError& e) {
        throw CliError(parse_failure, "parse", path + ": " + e.what());
    } catch (const PreconditionError& e) {
        throw CliError(not_flat, "not_flat", path + ": " + e.what());
    }
}

void write_output(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw CliError(usage, "io", "cannot write '" + path + "'");
    out << text;
}

void print_certificate(std::ostream& os, const FlatnessCertificate& cert, const SystemFile& file) {
    os << "kind: " << to_string(cert.kind) << "\n";
    os << "k: " << cert.k_index << "\n";
    os << "pi: " << to_string(cert.pi) << "\n";
    os << "P: " << print_matrix(cert.P) << "\n";
    os << "Q: " << print_matrix(cert.Q) << "\n";
    if (cert.input_map) os << "input_map: " << print_matrix(*cert.input_map) << "\n";
    std::vector<std::string> names = file.states();
    for (const auto& u : file.inputs()) names.push_back(u);
    OpMatrix pbar = cert.P_bar();
    for (std::size_t i = 0; i < pbar.rows(); ++i) {
        os << "y" << i + 1 << " =";
        bool first = true;
        for (std::size_t j = 0; j < pbar.cols(); ++j) {
            if (pbar(i, j).is_zero()) continue;
            os << (first ? " " : " + ") << "(" << to_string(pbar(i, j)) << ") " << names[j];
            first = false;
        }
        if (first) os << " 0";
        os << "\n";
    }
}

struct FlatResult {
    FlatnessOutcome outcome;
    std::string note;
};

FlatResult run_flat0(const SystemLTV& sys) {
    try {
        return {pi_zero_flat_output(sys), {}};
    } catch (const PreconditionError& e) {
        return {pi_flat_output(sys.matrix()),
                std::string(e.what()) + "; falling back to the pi-flat output of (A, -B)"};
    }
}

int emit_certificate(const FlatResult& res, const SystemFile& file, bool as_json, const std::string& out_path) {
    if (!res.outcome.ok()) throw CliError(not_flat, "not_flat", res.outcome.failure);
    const FlatnessCertificate& cert = *res.outcome.certificate;
    json j = certificate_to_json(cert);
    if (!out_path.empty()) write_output(out_path, j.dump(2) + "\n");
    if (as_json) {
        if (!res.note.empty()) j["note"] = res.note;
        std::cout << j.dump(2) << "\n";
    } else {
        if (!res.note.empty()) std::cerr << "note: " << res.note << "\n";
        print_certificate(std::cout, cert, file);
    }
    return ok;
}

int cmd_check(const std::string& path, bool as_json) {
    Loaded l = load_system(path);
    bool b_hr = is_hyper_regular(l.sys.B());
    bool f_hr = is_hyper_regular(l.sys.matrix());
    bool zero_flat = false;
    if (b_hr) zero_flat = pi_zero_flat_output(l.sys).ok();
    if (as_json) {
        json j{{"states", l.sys.states()}, {"inputs", l.sys.inputs()}, {"tau", l.sys.tau().get_str()},
               {"B_hyper_regular", b_hr}, {"F_hyper_regular", f_hr}, {"pi_flat", f_hr}, {"pi_zero_flat", zero_flat}};
        std::cout << j.dump(2) << "\n";
    } else {
        auto yn = [](bool b) { return b ? "yes" : "no"; };
        std::cout << "states: " << l.sys.states() << ", inputs: " << l.sys.inputs() << ", tau: " << l.sys.tau() << "\n";
        std::cout << "B hyper-regular: " << yn(b_hr) << "\n";
        std::cout << "(A, -B) hyper-regular: " << yn(f_hr) << "\n";
        std::cout << "pi-flat: " << yn(f_hr) << "\n";
        std::cout << "pi-0-flat: " << yn(zero_flat) << "\n";
    }
    return f_hr ? ok : not_flat;
}

int cmd_verify(const std::string& path, const std::string& cert_path, bool as_json) {
    Loaded l = load_system(path);
    FlatnessCertificate cert;
    try {
        cert = certificate_from_json(json::parse(read_text(cert_path)));
    } catch (const json::exception& e) {
        throw CliError(parse_failure, "parse", cert_path + ": " + e.what());
    } catch (const ParseError& e) {
        throw CliError(parse_failure, "parse", cert_path + ": " + e.what());
    }
    VerificationReport rep = verify_certificate_report(l.sys.matrix(), cert);
    if (rep.ok && flatness_index_k(cert) != cert.k_index) rep = {false, "recorded k does not match the certificate"};
    if (as_json) {
        json j{{"valid", rep.ok}};
        if (!rep.ok) j["reason"] = rep.reason;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (rep.ok ? "certificate valid" : "certificate invalid: " + rep.reason) << "\n";
    }
    return rep.ok ? ok : verify_failure;
}

int cmd_invert(const std::string& text, long terms, const std::string& tau_text, bool as_json) {
    if (terms < 1) throw CliError(usage, "usage", "--terms must be positive");
    Rational tau = rational_arg(tau_text, "--tau");
    if (tau <= 0) throw CliError(usage, "usage", "--tau must be positive");
    DeltaPoly pi(tau);
    try {
        pi = parse_delta_poly(text, tau);
    } catch (const ParseError& e) {
        CliError err(parse_failure, "parse", e.what());
        err.position = {e.line(), e.column()};
        throw err;
    }
    if (pi.is_zero()) throw CliError(evaluation, "domain", "cannot invert the zero delta-polynomial");
    TruncatedLaurent s = invert_delta_poly(pi, static_cast<std::size_t>(terms));
    if (as_json) {
        json coeffs = json::array();
        for (const auto& c : s.coeffs) coeffs.push_back(to_string(c));
        std::cout << json{{"start", s.start}, {"tau", tau.get_str()}, {"coefficients", coeffs}, {"series", to_string(s)}}.dump(2)
                  << "\n";
    } else {
        std::cout << to_string(s) << "\n";
    }
    return ok;
}

struct PlanOptions {
    long degree = 5;
    std::string t0 = "0", t1 = "2", from = "0", to = "1", grid = "1/100";
    std::string horizon, sample_from, out;
    bool exact = false;
};

std::string render(const Rational& v, bool exact) {
    if (exact) return v.get_str();
    std::ostringstream os;
    os << std::setprecision(12) << to_double(v);
    return os.str();
}

int cmd_plan(const std::string& path, const PlanOptions& opt, bool as_json) {
    Loaded l = load_system(path);
    const Rational& tau = l.sys.tau();
    Rational t0 = rational_arg(opt.t0, "--t0"), t1 = rational_arg(opt.t1, "--t1");
    Rational y0 = rational_arg(opt.from, "--from"), y1 = rational_arg(opt.to, "--to");
    Rational step = rational_arg(opt.grid, "--grid");
    if (step <= 0) throw CliError(usage, "usage", "--grid must be positive");
    if (!(t0 < t1)) throw CliError(usage, "usage", "--t0 must be smaller than --t1");
    Rational horizon = opt.horizon.empty() ? t1 + 4 * tau : rational_arg(opt.horizon, "--horizon");

    FlatResult res = run_flat0(l.sys);
    if (!res.outcome.ok()) throw CliError(not_flat, "not_flat", res.outcome.failure);
    const FlatnessCertificate& cert = *res.outcome.certificate;
    if (!res.note.empty()) std::cerr << "note: " << res.note << "\n";

    PlanRequest req;
    req.degree = opt.degree;
    req.start = t0;
    req.end = t1;
    req.step = step;
    req.horizon = horizon;
    try {
        req.conditions = rest_to_rest(opt.degree, t0, t1, y0, y1);
    } catch (const PreconditionError& e) {
        throw CliError(usage, "usage", e.what());
    }
    PiecewiseSignal y = plan_polynomial(req);
    std::vector<PiecewiseSignal> ys(cert.outputs(), y);
    Trajectory traj = plan_trajectory(l.sys, cert, ys, horizon);

    Rational lo = opt.sample_from.empty() ? t0 - Rational(advance_steps(cert) + 1) * tau
                                          : rational_arg(opt.sample_from, "--sample-from");
    if (lo > horizon) throw CliError(usage, "usage", "sampling start lies beyond the horizon");
    auto residual = sig_residual(l.sys, traj.states, traj.inputs, {lo, horizon});
    bool exact_zero = true;
    for (const auto& r : residual) exact_zero = exact_zero && sig_is_zero_on(r, lo, horizon);

    std::vector<const PiecewiseSignal*> columns;
    for (const auto& s : traj.states) columns.push_back(&s);
    for (const auto& s : traj.inputs) columns.push_back(&s);
    std::vector<std::string> header = l.file.states();
    for (const auto& u : l.file.inputs()) header.push_back(u);

    std::ostringstream csv;
    csv << "t";
    for (const auto& h : header) csv << "," << h;
    csv << "\n";
    std::size_t rows = 0, poles = 0, on_breaks = 0;
    for (Rational t = lo; t <= horizon; t += step, ++rows) {
        csv << render(t, opt.exact);
        bool hit = false;
        for (const auto* s : columns) {
            if (std::binary_search(s->breakpoints().begin(), s->breakpoints().end(), t)) hit = true;
            try {
                csv << "," << render(sig_eval(*s, t), opt.exact);
            } catch (const PoleError&) {
                csv << ",nan";
                ++poles;
            }
        }
        if (hit) ++on_breaks;
        csv << "\n";
    }

    std::string residual_text = exact_zero ? "exact zero" : "nonzero";
    if (!opt.out.empty()) write_output(opt.out, csv.str());
    if (as_json) {
        json j{{"certificate", certificate_to_json(cert)},
               {"flat_output", to_string(y.pieces().front())},
               {"window", {lo.get_str(), horizon.get_str()}},
               {"residual", residual_text},
               {"rows", rows},
               {"grid_points_at_poles", poles},
               {"grid_points_on_breakpoints", on_breaks}};
        if (!res.note.empty()) j["note"] = res.note;
        if (opt.out.empty()) j["csv"] = csv.str();
        else j["out"] = opt.out;
        std::cout << j.dump(2) << "\n";
    } else {
        std::ostream& report = opt.out.empty() ? std::cerr : std::cout;
        if (opt.out.empty()) std::cout << csv.str();
        report << "flat output profile on [" << t0 << ", " << t1 << "): " << to_string(y.pieces().front()) << "\n";
        report << "residual on [" << lo << ", " << horizon << "]: " << residual_text << "\n";
        if (on_breaks) report << "note: " << on_breaks << " grid points fall on breakpoints (right-hand pieces used)\n";
        if (poles) report << "warning: " << poles << " samples hit a pole and were written as nan\n";
    }
    if (!exact_zero) throw CliError(verify_failure, "verify", "planned trajectory does not satisfy the system equations");
    return poles ? evaluation : ok;
}

int cmd_print(const std::string& path) {
    Loaded l = load_system(path);
    std::cout << print_system(l.file);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flatness certificates and exact motion planning for linear time-varying differential-delay systems"};
    app.require_subcommand(1);
    bool as_json = false;
    std::string system_path, cert_path, out_path, poly_text, tau_text = "1";
    long terms = 10;
    PlanOptions plan;

    auto json_flag = [&as_json](CLI::App* sub) { sub->add_flag("--json", as_json, "structured JSON output"); };

    auto* check = app.add_subcommand("check", "hyper-regularity report for B and (A, -B)");
    check->add_option("system", system_path, "system file")->required();
    json_flag(check);

    auto* flat = app.add_subcommand("flat", "pi-flat output via column reduction of (A, -B)");
    flat->add_option("system", system_path, "system file")->required();
    flat->add_option("--out", out_path, "also write the certificate JSON to this file");
    json_flag(flat);

    auto* flat0 = app.add_subcommand("flat0", "pi-0-flat output via input elimination (falls back to flat when B is not hyper-regular)");
    flat0->add_option("system", system_path, "system file")->required();
    flat0->add_option("--out", out_path, "also write the certificate JSON to this file");
    json_flag(flat0);

    auto* verify = app.add_subcommand("verify", "check a saved certificate against a system");
    verify->add_option("system", system_path, "system file")->required();
    verify->add_option("certificate", cert_path, "certificate JSON")->required();
    json_flag(verify);

    auto* invert = app.add_subcommand("invert", "Laurent expansion of the inverse of a delta-polynomial");
    invert->add_option("poly", poly_text, "delta-polynomial, e.g. \"d^2 - d\"")->required();
    invert->add_option("--terms", terms, "number of series terms")->capture_default_str();
    invert->add_option("--tau", tau_text, "delay")->capture_default_str();
    json_flag(invert);

    auto* plan_cmd = app.add_subcommand("plan", "rest-to-rest motion planning through the flat output");
    plan_cmd->add_option("system", system_path, "system file")->required();
    plan_cmd->add_option("--deg", plan.degree, "odd polynomial degree of the flat output profile")->capture_default_str();
    plan_cmd->add_option("--t0", plan.t0, "start of the transition")->capture_default_str();
    plan_cmd->add_option("--t1", plan.t1, "end of the transition")->capture_default_str();
    plan_cmd->add_option("--from", plan.from, "flat output value before t0")->capture_default_str();
    plan_cmd->add_option("--to", plan.to, "flat output value after t1")->capture_default_str();
    plan_cmd->add_option("--grid", plan.grid, "sampling step")->capture_default_str();
    plan_cmd->add_option("--horizon", plan.horizon, "last exact time (default t1 + 4 tau)");
    plan_cmd->add_option("--sample-from", plan.sample_from, "first sample time (default: one delay before the earliest input motion)");
    plan_cmd->add_option("--out", plan.out, "CSV output file (default stdout)");
    plan_cmd->add_flag("--exact", plan.exact, "print exact fractions instead of decimals");
    json_flag(plan_cmd);

    auto* print = app.add_subcommand("print", "canonical form of a system file");
    print->add_option("system", system_path, "system file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*check) return cmd_check(system_path, as_json);
        if (*flat) {
            Loaded l = load_system(system_path);
            return emit_certificate({pi_flat_output(l.sys.matrix()), {}}, l.file, as_json, out_path);
        }
        if (*flat0) {
            Loaded l = load_system(system_path);
            return emit_certificate(run_flat0(l.sys), l.file, as_json, out_path);
        }
        if (*verify) return cmd_verify(system_path, cert_path, as_json);
        if (*invert) return cmd_invert(poly_text, terms, tau_text, as_json);
        if (*plan_cmd) return cmd_plan(system_path, plan, as_json);
        if (*print) return cmd_print(system_path);
    } catch (const CliError& e) {
        if (as_json) {
            json j{{"error", {{"category", e.category}, {"message", e.what()}, {"exit_code", static_cast<int>(e.code)}}}};
            if (e.position) {
                j["error"]["line"] = e.position->first;
                j["error"]["column"] = e.position->second;
            }
            std::cout << j.dump(2) << "\n";
        } else {
            std::cerr << "error[" << e.category << "]: " << e.what() << "\n";
        }
        return e.code;
    } catch (const PoleError& e) {
        std::cerr << "error[pole]: " << e.what() << "\n";
        return evaluation;
    } catch (const HorizonError& e) {
        std::cerr << "error[horizon]: " << e.what() << "\n";
        return evaluation;
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return evaluation;
    }
    return usage;
}
