#include "dws/qep.hpp"

#include <algorithm>
#include <cmath>

#include "dws/funcspace.hpp"
#include "dws/shooting.hpp"

namespace dws {

CollocationSystem discretize(const Problem& problem, int n) {
    if (n < 16) throw std::invalid_argument("discretize: need at least 16 interior nodes");
    const int m = n + 2;  // full Lobatto grid including both endpoints
    ChebGrid grid(m);

    Eigen::MatrixXd d1(m, m);
    const auto& flat = grid.diff_matrix();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) d1(i, j) = flat[static_cast<std::size_t>(i) * m + j];
    Eigen::MatrixXd d2_full = d1 * d1;

    CollocationSystem sys;
    sys.n = n;
    sys.d2 = d2_full.block(1, 1, n, n);
    sys.a_diag.resize(n);
    sys.b_diag.resize(n);
    sys.interior_nodes.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = grid.nodes()[static_cast<std::size_t>(i) + 1];
        sys.interior_nodes[static_cast<std::size_t>(i)] = x;
        sys.a_diag(i) = problem.a_at(x);
        sys.b_diag(i) = problem.b_at(x);
    }
    return sys;
}

OracleSpectrum solve_qep(const Problem& problem, const CollocationSystem& sys) {
    const int n = sys.n;

    // First companion form acting on (u, lambda u); real for real a, b, so
    // conjugate symmetry of the spectrum is automatic.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    companion.block(0, n, n, n) = Eigen::MatrixXd::Identity(n, n);
    companion.block(n, 0, n, n) = sys.d2;
    companion.block(n, 0, n, n) += Eigen::MatrixXd(sys.b_diag.asDiagonal());
    companion.block(n, n, n, n) = -2.0 * Eigen::MatrixXd(sys.a_diag.asDiagonal());

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw EigensolverFailure("dense eigensolver failed to converge");

    // Anything beyond the grid's resolving power is discretization garbage;
    // skip it before the (more expensive) residual test.
    const double lambda_cap = 2.0 * n;

    struct Kept {
        std::complex<double> lambda;
        double residual;
    };
    std::vector<Kept> kept;
    for (int i = 0; i < 2 * n; ++i) {
        std::complex<double> lam = solver.eigenvalues()(i);
        if (std::abs(lam) > lambda_cap) continue;
        double resid = gamma0(problem, lam).abs_gamma0();
        if (resid <= problem.resid_tol) kept.push_back({lam, resid});
    }
    std::sort(kept.begin(), kept.end(),
              [](const Kept& a, const Kept& b) { return a.lambda.imag() < b.lambda.imag(); });

    OracleSpectrum out;
    out.eigenvalues.reserve(kept.size());
    out.residuals.reserve(kept.size());
    for (const Kept& k : kept) {
        out.eigenvalues.push_back(k.lambda);
        out.residuals.push_back(k.residual);
    }
    return out;
}

}  // namespace dws
