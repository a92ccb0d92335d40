#pragma once

#include <stdexcept>
#include <string>

#include "dws/problem.hpp"

namespace dws::cli {

/// Invalid or missing configuration (bad JSON, unknown key, out-of-range
/// value).  Mapped to exit code 2 by the front end.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string a_src;  // required
    std::string b_src = "0";
    int order = 4;
    int grid_size = 64;    // grid_M
    int colloc_size = 96;  // colloc_N
    int n_max = 60;
    double ode_tol = 1e-12;
    double newton_tol = 1e-11;
    double resid_tol = 1e-6;
    std::string out;  // empty: stdout

    // Per-command extras.
    int count_n = 0;     // `count`: box index (required)
    int trace_n = 0;     // `trace`: partial-sum cutoff; 0 -> min(n_max, 200)
    bool inverse = false;  // `check-constant`: use coefficients fitted from the spectrum
    std::string method = "shooting";  // `spectrum`: shooting | oracle | both
};

/// Merge values from a JSON config file into `config` (fields present in the
/// file override the defaults already in `config`).
void load_config_file(Config& config, const std::string& path);

/// Validate and convert to a Problem (parses the coefficient expressions).
Problem make_problem(const Config& config);

/// Run one subcommand and return its payload (CSV or JSON text).  Throws
/// ConfigError / SyntaxError / DomainError for bad input, NumericalError
/// subclasses for solver failures.
std::string run_command(const std::string& command, const Config& config);

}  // namespace dws::cli
