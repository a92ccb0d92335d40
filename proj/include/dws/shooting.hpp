#pragma once

#include <complex>

#include "dws/problem.hpp"

namespace dws {

/// Value of the shooting function gamma0(lambda) = u(1,lambda) where u solves
/// u'' = (lambda^2 + 2 lambda a - b) u, u(0)=0, u'(0)=1, together with its
/// lambda-derivative from the variational system.
///
/// To stay clear of overflow for large |Re lambda| the integrator normalizes
/// the state on the fly; results are carried as (mantissa, log_scale) with
/// value = mantissa * exp(log_scale).  The descaled fields are provided for
/// convenience and are finite at desk scale.
struct ShootingResult {
    std::complex<double> lambda;
    std::complex<double> gamma0;    // descaled u(1)
    std::complex<double> dgamma0;   // descaled du/dlambda(1)
    std::complex<double> gamma0_mantissa;
    std::complex<double> dgamma0_mantissa;
    double log_scale = 0.0;
    int ode_steps = 0;
    double tolerance_used = 0.0;

    double log_abs_gamma0() const;
    /// |gamma0| descaled; +inf only if it genuinely overflows a double.
    double abs_gamma0() const;
};

ShootingResult gamma0(const Problem& problem, std::complex<double> lambda);

/// Newton refinement of an eigenvalue from an initial guess; stops when
/// |step| <= newton_tol * (1 + |lambda|).
std::complex<double> refine(const Problem& problem, std::complex<double> initial_guess);

/// Square |Re|,|Im| < pi(n + 1/2) centred at the origin.
struct CountingBox {
    int n;
    double half_side;

    explicit CountingBox(int index);
};

/// Number of zeros of gamma0 inside the box, by trapezoid quadrature of the
/// logarithmic derivative over the boundary, doubling the node count until
/// the value settles within 1e-3 of an integer.
int count_in_box(const Problem& problem, const CountingBox& box);

namespace detail {
/// gamma0 with an explicit tolerance override (used by the contour counter,
/// which needs far less accuracy than Newton does).
ShootingResult shoot(const Problem& problem, std::complex<double> lambda, double rel_tol,
                     double abs_tol);
}  // namespace detail

}  // namespace dws
