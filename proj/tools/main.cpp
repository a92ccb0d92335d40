#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "dws/cli.hpp"
#include "dws/errors.hpp"

namespace {

struct CommonOpts {
    CLI::Option* config = nullptr;
    CLI::Option* a = nullptr;
    CLI::Option* b = nullptr;
    CLI::Option* m = nullptr;
    CLI::Option* grid_m = nullptr;
    CLI::Option* colloc_n = nullptr;
    CLI::Option* n_max = nullptr;
    CLI::Option* ode_tol = nullptr;
    CLI::Option* newton_tol = nullptr;
    CLI::Option* resid_tol = nullptr;
    CLI::Option* out = nullptr;

    std::string config_path, a_src, b_src, out_path;
    int m_val = 0, grid_val = 0, colloc_val = 0, n_max_val = 0;
    double ode_val = 0, newton_val = 0, resid_val = 0;
};

void add_common(CLI::App* sub, CommonOpts& o) {
    o.config = sub->add_option("--config", o.config_path, "JSON config file");
    o.a = sub->add_option("--a", o.a_src, "damping profile a(x)");
    o.b = sub->add_option("--b", o.b_src, "potential profile b(x)");
    o.m = sub->add_option("--m", o.m_val, "asymptotic truncation order");
    o.grid_m = sub->add_option("--grid-M", o.grid_val, "Chebyshev grid size");
    o.colloc_n = sub->add_option("--colloc-N", o.colloc_val, "interior collocation nodes");
    o.n_max = sub->add_option("--n-max", o.n_max_val, "number of eigenvalue indices");
    o.ode_tol = sub->add_option("--ode-tol", o.ode_val, "IVP relative tolerance");
    o.newton_tol = sub->add_option("--newton-tol", o.newton_val, "Newton step tolerance");
    o.resid_tol = sub->add_option("--resid-tol", o.resid_val, "acceptance residual for roots");
    o.out = sub->add_option("--out", o.out_path, "output path (default stdout)");
}

// Precedence: flags > config file > defaults.
dws::cli::Config build_config(const CommonOpts& o) {
    dws::cli::Config cfg;
    if (o.config->count()) dws::cli::load_config_file(cfg, o.config_path);
    if (o.a->count()) cfg.a_src = o.a_src;
    if (o.b->count()) cfg.b_src = o.b_src;
    if (o.m->count()) cfg.order = o.m_val;
    if (o.grid_m->count()) cfg.grid_size = o.grid_val;
    if (o.colloc_n->count()) cfg.colloc_size = o.colloc_val;
    if (o.n_max->count()) cfg.n_max = o.n_max_val;
    if (o.ode_tol->count()) cfg.ode_tol = o.ode_val;
    if (o.newton_tol->count()) cfg.newton_tol = o.newton_val;
    if (o.resid_tol->count()) cfg.resid_tol = o.resid_val;
    if (o.out->count()) cfg.out = o.out_path;
    return cfg;
}

int emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return 2;
    }
    f << payload;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirichlet spectra of the 1-D damped wave operator"};
    app.require_subcommand(1);

    struct SubSpec {
        const char* name;
        const char* help;
    };
    const SubSpec specs[] = {
        {"spectrum", "compute eigenvalues lambda_1..lambda_n_max (CSV)"},
        {"asymptotics", "expansion coefficients c_j and closed-form cross-check (JSON)"},
        {"trace", "regularized trace check (JSON)"},
        {"check-constant", "constant-damping criterion (JSON)"},
        {"count", "argument-principle eigenvalue count in a box (JSON)"},
        {"compare-oracle", "shooting vs collocation distance (JSON)"},
    };

    CommonOpts opts[6];
    CLI::App* subs[6];
    int count_n = 0, trace_n = 0;
    bool inverse = false;
    std::string method = "shooting";
    CLI::Option* method_opt = nullptr;
    for (int i = 0; i < 6; ++i) {
        subs[i] = app.add_subcommand(specs[i].name, specs[i].help);
        add_common(subs[i], opts[i]);
    }
    method_opt = subs[0]->add_option("--method", method, "shooting | oracle | both");
    subs[2]->add_option("--trace-n", trace_n, "partial-sum cutoff N (default min(n_max,200))");
    subs[3]->add_flag("--inverse", inverse, "use coefficients fitted from the computed spectrum");
    subs[4]->add_option("--n", count_n, "box index")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    int which = -1;
    for (int i = 0; i < 6; ++i)
        if (subs[i]->parsed()) which = i;

    try {
        dws::cli::Config cfg = build_config(opts[which]);
        cfg.count_n = count_n;
        cfg.trace_n = trace_n;
        cfg.inverse = inverse;
        if (method_opt->count()) cfg.method = method;
        std::string payload = dws::cli::run_command(specs[which].name, cfg);
        return emit(payload, cfg.out);
    } catch (const dws::cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dws::SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dws::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dws::ContourTooClose& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const dws::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
