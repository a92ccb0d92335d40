#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "dws/asymptotics.hpp"
#include "dws/problem.hpp"

namespace dws {

enum class Method { Shooting, Oracle, Both };

/// Upper half of the spectrum (Im >= 0), ordered by increasing Im; the full
/// spectrum is upper + conj(upper) + p zeros.  Real eigenvalues (overdamped
/// profiles) are kept in `upper` with Im = 0 and ordered by decreasing Re
/// among themselves.
struct Spectrum {
    int p = 0;  // number of detected zero eigenvalues (0 or 1; no multiplicity resolution)
    std::vector<Complex> upper;
    std::vector<double> residuals;  // |gamma0(lambda_n)| per entry
    std::vector<Complex> guesses;   // asymptotic initial guesses per index
    Method provenance = Method::Shooting;
};

/// Indices n = 1..n_max refined from asymptotic guesses (shooting) or taken
/// from the collocation oracle.  Shooting spectra are certified complete by
/// an argument-principle count over the box of index min(certify_box, n_max).
Spectrum compute_spectrum(const Problem& problem, int n_max, Method method);

/// Finite check of sum over the conjugate-symmetric spectrum of (lambda_n - c0)
/// against (a(0)+a(1))/2 - <a>, with the omitted tail approximated by
/// 2 c2 (1/N - 1/(2N^2)).
struct TraceReport {
    int n_cut = 0;           // partial-sum cutoff N
    double partial_sum = 0;  // 2 sum_{n<=N} Re(lambda_n - c0)
    double tail_correction = 0;
    double total = 0;
    double rhs = 0;
    double gap = 0;
};

TraceReport trace_report(const Problem& problem, const Spectrum& spectrum, int n_cut = 200);

/// Re(2 pi i c1 - <b> - c0^2) = <a^2> - <a>^2; zero exactly when the damping
/// is constant.
double constant_damping_gap(Complex c0, Complex c1, double mean_b);

inline constexpr double kConstantTolForward = 1e-6;
inline constexpr double kConstantTolInverse = 1e-3;

/// Isospectral invariants (<atilde^2>, <a0 atilde^2>) of the decomposition
/// a = a0 + atilde into even and odd parts about x = 1/2.
std::pair<double, double> odd_even_invariants(const Expr& a, const ChebGrid& grid);

struct CoefficientFit {
    AsymptoticCoeffs coeffs;
    double residual_norm = 0;
    double condition = 0;  // of the column-scaled normal equations
};

/// Least-squares fit of lambda_n - pi n i against {n^0, ..., n^{-(m-1)}} over
/// n in [n_lo, n_hi].
CoefficientFit fit_coefficients(const Spectrum& spectrum, int m, int n_lo, int n_hi);

/// Max pairwise distance between the spectra of (a(x), b(x)) and of
/// (a(1-x), b(1-x)); the reflected problem is isospectral.
double reflection_check(const Problem& problem, int n_max);

}  // namespace dws
