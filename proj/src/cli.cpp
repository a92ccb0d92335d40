#include "dws/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dws/analysis.hpp"
#include "dws/qep.hpp"
#include "dws/shooting.hpp"

namespace dws::cli {

namespace {

using nlohmann::json;

// Fixed %.17g formatting: identical configs must produce byte-identical
// output, and the decimals must round-trip to the same double.
std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string pair_json(const Complex& z) { return "[" + g17(z.real()) + "," + g17(z.imag()) + "]"; }

void check_positive(double v, const char* name) {
    if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be positive");
}

Method parse_method(const std::string& name) {
    if (name == "shooting") return Method::Shooting;
    if (name == "oracle") return Method::Oracle;
    if (name == "both") return Method::Both;
    throw ConfigError("method must be one of: shooting, oracle, both");
}

const char* method_name(Method m) {
    switch (m) {
        case Method::Shooting: return "shooting";
        case Method::Oracle: return "oracle";
        case Method::Both: return "both";
    }
    return "?";
}

std::string cmd_spectrum(const Config& config) {
    Problem pr = make_problem(config);
    Method method = parse_method(config.method);
    Spectrum sp = compute_spectrum(pr, config.n_max, method);

    std::string outtext = "n,re,im,residual,guess_re,guess_im,method\n";
    for (std::size_t i = 0; i < sp.upper.size(); ++i) {
        outtext += std::to_string(i + 1) + "," + g17(sp.upper[i].real()) + "," +
                   g17(sp.upper[i].imag()) + "," + g17(sp.residuals[i]) + "," +
                   g17(sp.guesses[i].real()) + "," + g17(sp.guesses[i].imag()) + "," +
                   method_name(sp.provenance) + "\n";
    }
    return outtext;
}

std::string cmd_asymptotics(const Config& config) {
    Problem pr = make_problem(config);
    ChebGrid grid(pr.grid_size);
    PhiTable phi = phi_recurrence(pr.a, pr.b, pr.order, grid);
    AsymptoticCoeffs coeffs = invert_eigenvalue_relation(phi, pr.order);
    auto closed = closed_form_c012(pr.a, pr.b, grid);

    double gap = 0.0;
    for (int j = 0; j < std::min(pr.order, 3); ++j)
        gap = std::max(gap, std::abs(coeffs.c[static_cast<std::size_t>(j)] -
                                     closed[static_cast<std::size_t>(j)]));

    std::string outtext = "{\"c\":[";
    for (std::size_t j = 0; j < coeffs.c.size(); ++j)
        outtext += (j ? "," : "") + pair_json(coeffs.c[j]);
    outtext += "],\"closed_form_c012\":[";
    for (int j = 0; j < 3; ++j)
        outtext += (j ? "," : "") + pair_json(closed[static_cast<std::size_t>(j)]);
    outtext += "],\"consistency_gap\":" + g17(gap) + "}\n";
    return outtext;
}

std::string cmd_trace(const Config& config) {
    Problem pr = make_problem(config);
    int n_cut = config.trace_n > 0 ? config.trace_n : std::min(config.n_max, 200);
    int n_need = std::max(config.n_max, n_cut);
    Spectrum sp = compute_spectrum(pr, n_need, Method::Shooting);
    TraceReport rep = trace_report(pr, sp, n_cut);

    std::string outtext = "{\"N\":" + std::to_string(rep.n_cut) +
                          ",\"partial_sum\":" + g17(rep.partial_sum) +
                          ",\"tail_correction\":" + g17(rep.tail_correction) +
                          ",\"total\":" + g17(rep.total) + ",\"rhs\":" + g17(rep.rhs) +
                          ",\"gap\":" + g17(rep.gap) + "}\n";
    return outtext;
}

std::string cmd_check_constant(const Config& config) {
    Problem pr = make_problem(config);
    ChebGrid grid(pr.grid_size);
    double mean_b = mean(sample(pr.b, grid));

    double gap = 0.0;
    double tol = 0.0;
    if (!config.inverse) {
        auto closed = closed_form_c012(pr.a, pr.b, grid);
        gap = constant_damping_gap(closed[0], closed[1], mean_b);
        tol = kConstantTolForward;
    } else {
        int hi = std::min(60, config.n_max);
        int lo = 10;
        if (hi - lo + 1 < pr.order + 2)
            throw ConfigError("inverse mode needs n_max large enough for the fit range 10..60");
        Spectrum sp = compute_spectrum(pr, config.n_max, Method::Shooting);
        CoefficientFit fit = fit_coefficients(sp, pr.order, lo, hi);
        gap = constant_damping_gap(fit.coeffs.c[0], fit.coeffs.c[1], mean_b);
        tol = kConstantTolInverse;
    }
    const char* verdict = std::abs(gap) <= tol ? "constant" : "non-constant";
    return "{\"gap\":" + g17(gap) + ",\"verdict\":\"" + verdict + "\"}\n";
}

std::string cmd_count(const Config& config) {
    if (config.count_n < 1) throw ConfigError("count requires --n >= 1");
    Problem pr = make_problem(config);
    int count = count_in_box(pr, CountingBox(config.count_n));
    return "{\"n\":" + std::to_string(config.count_n) + ",\"count\":" + std::to_string(count) +
           ",\"expected\":" + std::to_string(2 * config.count_n) + "}\n";
}

std::string cmd_compare_oracle(const Config& config) {
    Problem pr = make_problem(config);
    Spectrum sh = compute_spectrum(pr, config.n_max, Method::Shooting);

    CollocationSystem sys = discretize(pr, pr.colloc_size);
    OracleSpectrum os = solve_qep(pr, sys);
    std::vector<Complex> oracle_upper;
    for (const Complex& lam : os.eigenvalues)
        if (lam.imag() > 1e-12 * (1.0 + std::abs(lam))) oracle_upper.push_back(lam);

    std::size_t pairs = std::min(sh.upper.size(), oracle_upper.size());
    double dist = 0.0;
    for (std::size_t i = 0; i < pairs; ++i)
        dist = std::max(dist, std::abs(sh.upper[i] - oracle_upper[i]));
    return "{\"max_pairwise_distance\":" + g17(dist) + "}\n";
}

}  // namespace

void load_config_file(Config& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");

    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "a")
                config.a_src = value.get<std::string>();
            else if (key == "b")
                config.b_src = value.get<std::string>();
            else if (key == "m")
                config.order = value.get<int>();
            else if (key == "grid_M")
                config.grid_size = value.get<int>();
            else if (key == "colloc_N")
                config.colloc_size = value.get<int>();
            else if (key == "n_max")
                config.n_max = value.get<int>();
            else if (key == "ode_tol")
                config.ode_tol = value.get<double>();
            else if (key == "newton_tol")
                config.newton_tol = value.get<double>();
            else if (key == "resid_tol")
                config.resid_tol = value.get<double>();
            else if (key == "out")
                config.out = value.get<std::string>();
            else
                throw ConfigError("unknown config key '" + key + "'");
        } catch (const json::type_error& e) {
            throw ConfigError("config key '" + key + "': " + e.what());
        }
    }
}

Problem make_problem(const Config& config) {
    if (config.a_src.empty()) throw ConfigError("no damping profile: set \"a\" (file or --a)");
    if (config.order < 1) throw ConfigError("m must be >= 1");
    if (config.n_max < 1) throw ConfigError("n_max must be >= 1");
    if (config.grid_size < 8) throw ConfigError("grid_M must be >= 8");
    if (config.colloc_size < 16) throw ConfigError("colloc_N must be >= 16");
    check_positive(config.ode_tol, "ode_tol");
    check_positive(config.newton_tol, "newton_tol");
    check_positive(config.resid_tol, "resid_tol");

    Problem pr;
    pr.a = Expr::parse(config.a_src);
    pr.b = Expr::parse(config.b_src);
    pr.grid_size = config.grid_size;
    pr.colloc_size = config.colloc_size;
    pr.order = config.order;
    pr.n_max = config.n_max;
    pr.ode_tol = config.ode_tol;
    pr.newton_tol = config.newton_tol;
    pr.resid_tol = config.resid_tol;
    return pr;
}

std::string run_command(const std::string& command, const Config& config) {
    if (command == "spectrum") return cmd_spectrum(config);
    if (command == "asymptotics") return cmd_asymptotics(config);
    if (command == "trace") return cmd_trace(config);
    if (command == "check-constant") return cmd_check_constant(config);
    if (command == "count") return cmd_count(config);
    if (command == "compare-oracle") return cmd_compare_oracle(config);
    throw ConfigError("unknown command '" + command + "'");
}

}  // namespace dws::cli
