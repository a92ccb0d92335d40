#pragma once

#include "dws/expr.hpp"

namespace dws {

/// A damped-wave eigenproblem instance: coefficient profiles a(x), b(x) on
/// [0,1] plus the resolution and tolerance settings shared by all solvers.
struct Problem {
    Expr a;
    Expr b;

    int grid_size = 64;    // Chebyshev nodes for quadrature / recurrences
    int colloc_size = 96;  // interior collocation nodes for the QEP oracle
    int order = 4;         // asymptotic truncation order m
    int n_max = 60;

    double ode_tol = 1e-12;      // local relative tolerance of the IVP integrator
    double ode_abs_tol = 1e-14;  // absolute floor of the error test
    double newton_tol = 1e-11;
    double resid_tol = 1e-6;

    /// Box index used for the argument-principle completeness certificate in
    /// compute_spectrum; <= 0 means "use n_max".
    int certify_box = 0;

    double a_at(double x) const { return a.eval(x); }
    double b_at(double x) const { return b.eval(x); }
};

}  // namespace dws
