#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "dws/problem.hpp"

namespace dws {

/// Chebyshev collocation of u'' + (b - 2 lambda a) u = lambda^2 u with
/// homogeneous Dirichlet conditions imposed by deleting boundary rows and
/// columns.  `n` is the interior node count.
struct CollocationSystem {
    int n = 0;
    Eigen::MatrixXd d2;       // interior block of the second-derivative matrix
    Eigen::VectorXd a_diag;   // a at interior nodes
    Eigen::VectorXd b_diag;   // b at interior nodes
    std::vector<double> interior_nodes;
};

CollocationSystem discretize(const Problem& problem, int n);

/// Eigenvalues of the linearized companion system that survive the shooting
/// residual filter |gamma0(lambda)| <= resid_tol, sorted by increasing Im.
struct OracleSpectrum {
    std::vector<std::complex<double>> eigenvalues;
    std::vector<double> residuals;
};

OracleSpectrum solve_qep(const Problem& problem, const CollocationSystem& sys);

}  // namespace dws
