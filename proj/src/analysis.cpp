#include "dws/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "dws/qep.hpp"
#include "dws/shooting.hpp"

namespace dws {

namespace {

constexpr double kPi = std::numbers::pi;

bool effectively_real(const Complex& lam) {
    return std::abs(lam.imag()) <= 1e-12 * (1.0 + std::abs(lam));
}

// Im ascending; real eigenvalues (tied Im) by Re descending.
bool spectrum_order(const Complex& a, const Complex& b) {
    if (effectively_real(a) && effectively_real(b)) return a.real() > b.real();
    return a.imag() < b.imag();
}

void sort_aligned(Spectrum& sp) {
    std::vector<std::size_t> idx(sp.upper.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        return spectrum_order(sp.upper[i], sp.upper[j]);
    });
    auto permute = [&](auto& v) {
        if (v.size() != idx.size()) return;  // oracle path fills guesses later
        auto copy = v;
        for (std::size_t i = 0; i < idx.size(); ++i) v[i] = copy[idx[i]];
    };
    permute(sp.upper);
    permute(sp.residuals);
    permute(sp.guesses);
}

Spectrum shooting_spectrum(const Problem& problem, int n_max, const AsymptoticCoeffs& coeffs) {
    Spectrum sp;
    sp.provenance = Method::Shooting;
    sp.p = gamma0(problem, 0.0).abs_gamma0() <= 1e-10 ? 1 : 0;

    for (int n = 1; n <= n_max; ++n) {
        Complex g = guess(coeffs, n);
        Complex lam = refine(problem, g);
        if (lam.imag() < 0) lam = std::conj(lam);  // real coefficients: pick the upper twin
        double resid = gamma0(problem, lam).abs_gamma0();
        if (resid > problem.resid_tol)
            throw NoConvergence("index n=" + std::to_string(n) +
                                    " converged with residual above resid_tol",
                                lam, resid);
        sp.upper.push_back(lam);
        sp.residuals.push_back(resid);
        sp.guesses.push_back(g);
    }
    sort_aligned(sp);

    // Argument-principle certificate: count zeros in the box and compare with
    // the roots actually found (plus conjugates and detected zeros).
    int box_index = problem.certify_box > 0 ? std::min(problem.certify_box, n_max) : n_max;
    CountingBox box(box_index);
    int expected = sp.p;
    for (const Complex& lam : sp.upper) {
        if (std::max(std::abs(lam.real()), std::abs(lam.imag())) >= box.half_side) continue;
        expected += effectively_real(lam) ? 1 : 2;
    }
    int got = count_in_box(problem, box);
    if (got != expected)
        throw CompletenessFailure("argument-principle count " + std::to_string(got) +
                                      " inside box n=" + std::to_string(box_index) +
                                      " does not match the " + std::to_string(expected) +
                                      " roots located",
                                  box_index, got - expected);
    return sp;
}

Spectrum oracle_spectrum(const Problem& problem, int n_max, const AsymptoticCoeffs& coeffs) {
    Spectrum sp;
    sp.provenance = Method::Oracle;
    sp.p = gamma0(problem, 0.0).abs_gamma0() <= 1e-10 ? 1 : 0;

    CollocationSystem sys = discretize(problem, problem.colloc_size);
    OracleSpectrum os = solve_qep(problem, sys);
    for (std::size_t i = 0; i < os.eigenvalues.size(); ++i) {
        Complex lam = os.eigenvalues[i];
        if (std::abs(lam) <= 1e-8) continue;  // zero eigenvalues tracked via p
        if (lam.imag() < -1e-12 * (1.0 + std::abs(lam))) continue;  // lower half
        if (effectively_real(lam)) lam = Complex(lam.real(), 0.0);
        sp.upper.push_back(lam);
        sp.residuals.push_back(os.residuals[i]);
    }
    sort_aligned(sp);  // guesses empty so far; aligned after fill below

    if (static_cast<int>(sp.upper.size()) < n_max)
        throw CompletenessFailure("collocation oracle resolved only " +
                                      std::to_string(sp.upper.size()) + " of " +
                                      std::to_string(n_max) + " requested eigenvalues",
                                  0, static_cast<int>(sp.upper.size()) - n_max);
    sp.upper.resize(static_cast<std::size_t>(n_max));
    sp.residuals.resize(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) sp.guesses.push_back(guess(coeffs, n));
    return sp;
}

}  // namespace

Spectrum compute_spectrum(const Problem& problem, int n_max, Method method) {
    if (n_max < 1) throw std::invalid_argument("compute_spectrum: n_max must be >= 1");

    ChebGrid grid(problem.grid_size);
    PhiTable phi = phi_recurrence(problem.a, problem.b, problem.order, grid);
    AsymptoticCoeffs coeffs = invert_eigenvalue_relation(phi, problem.order);

    switch (method) {
        case Method::Shooting: return shooting_spectrum(problem, n_max, coeffs);
        case Method::Oracle: return oracle_spectrum(problem, n_max, coeffs);
        case Method::Both: break;
    }

    Spectrum s = shooting_spectrum(problem, n_max, coeffs);
    Spectrum o = oracle_spectrum(problem, n_max, coeffs);
    double dist = 0.0;
    for (int i = 0; i < n_max; ++i)
        dist = std::max(dist, std::abs(s.upper[static_cast<std::size_t>(i)] -
                                       o.upper[static_cast<std::size_t>(i)]));
    if (dist > 1e-3)
        throw CompletenessFailure("shooting and collocation spectra disagree (max distance " +
                                      std::to_string(dist) + ")",
                                  0, 0);
    s.provenance = Method::Both;
    return s;
}

TraceReport trace_report(const Problem& problem, const Spectrum& spectrum, int n_cut) {
    if (n_cut < 1) throw std::invalid_argument("trace_report: n_cut must be >= 1");
    if (spectrum.p + static_cast<int>(spectrum.upper.size()) < n_cut)
        throw InsufficientSpectrum("trace_report needs " + std::to_string(n_cut) +
                                   " upper eigenvalues, have " +
                                   std::to_string(spectrum.p + spectrum.upper.size()));

    ChebGrid grid(problem.grid_size);
    auto c = closed_form_c012(problem.a, problem.b, grid);
    double c0 = c[0].real();
    double c2 = c[2].real();

    TraceReport rep;
    rep.n_cut = n_cut;
    int zeros = std::min(spectrum.p, n_cut);
    double sum = zeros * (0.0 - c0);
    for (int j = 0; j < n_cut - zeros; ++j)
        sum += spectrum.upper[static_cast<std::size_t>(j)].real() - c0;
    rep.partial_sum = 2.0 * sum;
    // Re(lambda_n - c0) ~ c2 n^{-2}; sum_{n>N} n^{-2} = 1/N - 1/(2N^2) + O(N^-3)
    rep.tail_correction =
        2.0 * c2 * (1.0 / n_cut - 1.0 / (2.0 * static_cast<double>(n_cut) * n_cut));
    rep.total = rep.partial_sum + rep.tail_correction;
    rep.rhs = 0.5 * (problem.a_at(0.0) + problem.a_at(1.0)) - mean(sample(problem.a, grid));
    rep.gap = std::abs(rep.total - rep.rhs);
    return rep;
}

double constant_damping_gap(Complex c0, Complex c1, double mean_b) {
    return (2.0 * kPi * Complex(0.0, 1.0) * c1 - mean_b - c0 * c0).real();
}

std::pair<double, double> odd_even_invariants(const Expr& a, const ChebGrid& grid) {
    const auto& x = grid.nodes();
    std::vector<double> even(x.size()), odd2(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        double v = a.eval(x[k]);
        double w = a.eval(1.0 - x[k]);
        even[k] = 0.5 * (v + w);
        double o = 0.5 * (v - w);
        odd2[k] = o * o;
    }
    GridFn fodd2(grid, std::move(odd2));
    GridFn feven(grid, std::move(even));
    return {mean(fodd2), mean(feven * fodd2)};
}

CoefficientFit fit_coefficients(const Spectrum& spectrum, int m, int n_lo, int n_hi) {
    if (m < 1) throw std::invalid_argument("fit_coefficients: m must be >= 1");
    if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("fit_coefficients: bad index range");
    if (n_hi > static_cast<int>(spectrum.upper.size()))
        throw InsufficientSpectrum("fit range exceeds available spectrum");
    const int rows = n_hi - n_lo + 1;
    if (rows < m + 2)
        throw std::invalid_argument("fit_coefficients: need at least m+2 sample indices");

    Eigen::MatrixXcd v(rows, m);
    Eigen::VectorXcd y(rows);
    for (int r = 0; r < rows; ++r) {
        int n = n_lo + r;
        double p = 1.0;
        for (int j = 0; j < m; ++j) {
            v(r, j) = p;
            p /= n;
        }
        y(r) = spectrum.upper[static_cast<std::size_t>(n - 1)] - Complex(0.0, kPi * n);
    }

    Eigen::VectorXd scale(m);
    for (int j = 0; j < m; ++j) scale(j) = v.col(j).norm();
    Eigen::MatrixXcd vs = v * scale.cwiseInverse().asDiagonal();

    Eigen::MatrixXcd gram = vs.adjoint() * vs;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    double emin = eig.eigenvalues().minCoeff();
    double emax = eig.eigenvalues().maxCoeff();
    double cond = emin > 0 ? emax / emin : std::numeric_limits<double>::infinity();
    if (cond > 1e12)
        throw IllConditioned("scaled normal equations have condition " + std::to_string(cond));

    Eigen::VectorXcd z = gram.ldlt().solve(vs.adjoint() * y);
    Eigen::VectorXcd coeff = scale.cwiseInverse().asDiagonal() * z;

    CoefficientFit fit;
    fit.coeffs.order = m;
    fit.coeffs.c.assign(coeff.data(), coeff.data() + m);
    fit.residual_norm = (v * coeff - y).norm();
    fit.condition = cond;
    return fit;
}

double reflection_check(const Problem& problem, int n_max) {
    Expr mirror = Expr::parse("1-x");
    Problem reflected = problem;
    reflected.a = problem.a.substitute_x(mirror);
    reflected.b = problem.b.substitute_x(mirror);

    Spectrum sa = compute_spectrum(problem, n_max, Method::Shooting);
    Spectrum sb = compute_spectrum(reflected, n_max, Method::Shooting);

    double dist = 0.0;
    for (int i = 0; i < n_max; ++i)
        dist = std::max(dist, std::abs(sa.upper[static_cast<std::size_t>(i)] -
                                       sb.upper[static_cast<std::size_t>(i)]));
    return dist;
}

}  // namespace dws
