#include "dws/shooting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace dws {

namespace {

constexpr double kPi = std::numbers::pi;
using Cx = std::complex<double>;
using State = std::array<Cx, 4>;  // (u, u', v, v') with v = du/dlambda

// Dormand-Prince 5(4) coefficients.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// y5 - y4 error weights.
constexpr double kE[7] = {71.0 / 57600,      0.0,          -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525,   -1.0 / 40};

struct Integration {
    State y;
    double log_scale = 0.0;
    int steps = 0;
};

class DampedWaveRhs {
  public:
    DampedWaveRhs(const Problem& p, Cx lambda) : problem_(p), lambda_(lambda) {}

    State operator()(double x, const State& y) const {
        double ax = problem_.a_at(x);
        double bx = problem_.b_at(x);
        Cx q = lambda_ * lambda_ + 2.0 * lambda_ * ax - bx;
        Cx s = 2.0 * (lambda_ + ax);
        return State{y[1], q * y[0], y[3], q * y[2] + s * y[0]};
    }

  private:
    const Problem& problem_;
    Cx lambda_;
};

Integration integrate(const Problem& problem, Cx lambda, double rtol, double atol) {
    DampedWaveRhs rhs(problem, lambda);

    Integration st;
    st.y = State{0.0, 1.0, 0.0, 0.0};
    double x = 0.0;
    double h = std::min(0.05, 0.5 / (1.0 + std::abs(lambda)));
    double err_prev = 1.0;
    State k[7];
    k[0] = rhs(x, st.y);  // FSAL

    constexpr int kMaxSteps = 20'000'000;
    while (x < 1.0) {
        if (h < 1e-13)
            throw StepSizeUnderflow("ODE step size underflow at x=" + std::to_string(x));
        if (st.steps > kMaxSteps) throw StepSizeUnderflow("ODE step budget exhausted");
        bool last = false;
        if (x + h >= 1.0) {
            h = 1.0 - x;
            last = true;
        }

        for (int s = 1; s < 7; ++s) {
            State ys;
            for (int c = 0; c < 4; ++c) {
                Cx acc = 0.0;
                for (int j = 0; j < s; ++j) acc += kA[s][j] * k[j][c];
                ys[c] = st.y[c] + h * acc;
            }
            k[s] = rhs(x + kC[s] * h, ys);
        }
        // k[6] was evaluated at the 5th-order solution point (A row 7 == b).
        State y5;
        for (int c = 0; c < 4; ++c) {
            Cx acc = 0.0;
            for (int j = 0; j < 6; ++j) acc += kA[6][j] * k[j][c];
            y5[c] = st.y[c] + h * acc;
        }

        double err = 0.0;
        for (int c = 0; c < 4; ++c) {
            Cx e = 0.0;
            for (int j = 0; j < 7; ++j) e += kE[j] * k[j][c];
            e *= h;
            double scale = atol + rtol * std::max(std::abs(st.y[c]), std::abs(y5[c]));
            double r = std::abs(e) / scale;
            err += r * r;
        }
        err = std::sqrt(err / 4.0);

        if (err <= 1.0) {
            x = last ? 1.0 : x + h;
            st.y = y5;
            k[0] = k[6];
            ++st.steps;
            double mag = 0.0;
            for (const Cx& c : st.y) mag = std::max(mag, std::abs(c));
            if (mag > 1e100) {
                for (Cx& c : st.y) c /= mag;
                for (Cx& c : k[0]) c /= mag;
                st.log_scale += std::log(mag);
            }
            double e = std::max(err, 1e-10);
            double fac = 0.9 * std::pow(e, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
            h *= std::clamp(fac, 0.2, 5.0);
            err_prev = e;
        } else {
            double fac = 0.9 * std::pow(err, -0.2);
            h *= std::clamp(fac, 0.1, 1.0);
        }
    }
    return st;
}

}  // namespace

double ShootingResult::log_abs_gamma0() const {
    return std::log(std::abs(gamma0_mantissa)) + log_scale;
}

double ShootingResult::abs_gamma0() const {
    double m = std::abs(gamma0_mantissa);
    if (m == 0.0) return 0.0;
    return std::exp(std::log(m) + log_scale);
}

namespace detail {

ShootingResult shoot(const Problem& problem, Cx lambda, double rel_tol, double abs_tol) {
    Integration st = integrate(problem, lambda, rel_tol, abs_tol);
    ShootingResult r;
    r.lambda = lambda;
    r.gamma0_mantissa = st.y[0];
    r.dgamma0_mantissa = st.y[2];
    r.log_scale = st.log_scale;
    double s = std::exp(st.log_scale);
    r.gamma0 = st.y[0] * s;
    r.dgamma0 = st.y[2] * s;
    r.ode_steps = st.steps;
    r.tolerance_used = rel_tol;
    return r;
}

}  // namespace detail

ShootingResult gamma0(const Problem& problem, Cx lambda) {
    return detail::shoot(problem, lambda, problem.ode_tol, problem.ode_abs_tol);
}

std::complex<double> refine(const Problem& problem, Cx initial_guess) {
    Cx lam = initial_guess;
    Cx best = lam;
    double best_log_resid = std::numeric_limits<double>::infinity();

    constexpr int kMaxIter = 25;
    for (int it = 0; it < kMaxIter; ++it) {
        ShootingResult r = gamma0(problem, lam);
        double log_dg = std::log(std::abs(r.dgamma0_mantissa)) + r.log_scale;
        if (!(log_dg > std::log(1e-300)))
            throw DerivativeBreakdown("|dgamma0| underflow at lambda=(" +
                                      std::to_string(lam.real()) + "," +
                                      std::to_string(lam.imag()) + "); suspected multiple root");
        double log_resid = r.log_abs_gamma0();
        if (log_resid < best_log_resid) {
            best_log_resid = log_resid;
            best = lam;
        }

        Cx step = r.gamma0_mantissa / r.dgamma0_mantissa;
        Cx next = lam - step;
        if (!std::isfinite(next.real()) || !std::isfinite(next.imag()))
            throw NoConvergence("Newton iterate became non-finite", best,
                                std::exp(best_log_resid));
        if (std::abs(next - initial_guess) > 10.0 * (1.0 + std::abs(initial_guess)))
            throw NoConvergence("Newton iteration wandered away from the initial guess", best,
                                std::exp(best_log_resid));
        if (std::abs(step) <= problem.newton_tol * (1.0 + std::abs(next))) return next;
        lam = next;
    }
    throw NoConvergence("Newton did not converge in 25 iterations", best,
                        std::exp(best_log_resid));
}

CountingBox::CountingBox(int index) : n(index), half_side(kPi * (index + 0.5)) {
    if (index < 1) throw std::invalid_argument("CountingBox index must be >= 1");
}

int count_in_box(const Problem& problem, const CountingBox& box) {
    const double s = box.half_side;
    // Counting needs ~1e-4 accuracy in the logarithmic derivative, not the
    // near-machine accuracy Newton wants.
    const double rtol = std::max(problem.ode_tol, 1e-8);
    const double atol = std::max(problem.ode_abs_tol, 1e-10);

    const Cx corners[5] = {Cx(s, -s), Cx(s, s), Cx(-s, s), Cx(-s, -s), Cx(s, -s)};

    auto logderiv = [&](Cx z) {
        ShootingResult r = detail::shoot(problem, z, rtol, atol);
        return r.dgamma0_mantissa / r.gamma0_mantissa;
    };

    // Cached samples per side; doubling a level reuses all previous values.
    std::array<std::vector<Cx>, 4> side_vals;
    int k_per_side = 32;
    for (int side = 0; side < 4; ++side) {
        auto& vals = side_vals[static_cast<std::size_t>(side)];
        vals.resize(static_cast<std::size_t>(k_per_side) + 1);
        for (int j = 0; j <= k_per_side; ++j) {
            Cx z = corners[side] + (corners[side + 1] - corners[side]) *
                                       (static_cast<double>(j) / k_per_side);
            vals[static_cast<std::size_t>(j)] = logderiv(z);
        }
    }

    double prev_value = std::numeric_limits<double>::quiet_NaN();
    int prev_int = -1;
    while (true) {
        Cx integral = 0.0;
        for (int side = 0; side < 4; ++side) {
            const auto& vals = side_vals[static_cast<std::size_t>(side)];
            Cx h = (corners[side + 1] - corners[side]) / static_cast<double>(k_per_side);
            Cx acc = 0.5 * (vals.front() + vals.back());
            for (int j = 1; j < k_per_side; ++j) acc += vals[static_cast<std::size_t>(j)];
            integral += h * acc;
        }
        Cx count = integral / (2.0 * kPi * Cx(0.0, 1.0));
        int rounded = static_cast<int>(std::llround(count.real()));
        bool near_integer = std::abs(count - Cx(rounded, 0.0)) <= 1e-3;
        if (near_integer && rounded == prev_int &&
            std::abs(count.real() - prev_value) <= 1e-3)
            return rounded;
        prev_int = near_integer ? rounded : -1;
        prev_value = count.real();

        if (4 * (2 * k_per_side) > (1 << 16))
            throw ContourTooClose(
                "contour quadrature did not settle on an integer; an eigenvalue "
                "is probably within 1e-6 of the box boundary (try a fractionally "
                "larger or smaller box)");
        // Refine: keep old values at even positions, fill odd midpoints.
        for (int side = 0; side < 4; ++side) {
            auto& vals = side_vals[static_cast<std::size_t>(side)];
            std::vector<Cx> fine(static_cast<std::size_t>(2 * k_per_side) + 1);
            for (int j = 0; j <= k_per_side; ++j)
                fine[static_cast<std::size_t>(2 * j)] = vals[static_cast<std::size_t>(j)];
            for (int j = 0; j < k_per_side; ++j) {
                Cx z = corners[side] + (corners[side + 1] - corners[side]) *
                                           ((j + 0.5) / k_per_side);
                fine[static_cast<std::size_t>(2 * j + 1)] = logderiv(z);
            }
            vals = std::move(fine);
        }
        k_per_side *= 2;
    }
}

}  // namespace dws
