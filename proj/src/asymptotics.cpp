#include "dws/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dws {

namespace {
constexpr double kPi = std::numbers::pi;
}

PhiTable phi_recurrence(const Expr& a, const Expr& b, int order, const ChebGrid& grid) {
    if (order < 1) throw std::invalid_argument("phi_recurrence: order must be >= 1");

    PhiTable t;
    t.order = order;
    t.phi_plus.reserve(static_cast<std::size_t>(order) + 1);
    t.phi_minus.reserve(static_cast<std::size_t>(order) + 1);

    GridFn fa = sample(a, grid);
    GridFn fb = sample(b, grid);
    GridFn fa1 = sample(a.derivative(1), grid);
    GridFn a2b = fa * fa + fb;

    t.phi_plus.push_back(fa);
    t.phi_minus.push_back(fa);
    t.phi_plus.push_back(-0.5 * (fa1 + a2b));
    t.phi_minus.push_back(-0.5 * ((-1.0 * fa1) + a2b));

    // Derivatives of the two leading tables come from symbolic derivatives:
    // phi_1^{(pm)}' = -(±a'' + 2 a a' + b')/2.
    std::vector<GridFn> dplus, dminus;
    dplus.push_back(fa1);
    dminus.push_back(fa1);
    if (order >= 2) {
        GridFn fa2 = sample(a.derivative(2), grid);
        GridFn fb1 = sample(b.derivative(1), grid);
        GridFn a2b1 = 2.0 * (fa * fa1) + fb1;
        dplus.push_back(-0.5 * (fa2 + a2b1));
        dminus.push_back(-0.5 * ((-1.0 * fa2) + a2b1));
    }

    for (int i = 2; i <= order; ++i) {
        std::vector<double> conv_p(static_cast<std::size_t>(grid.size()), 0.0);
        std::vector<double> conv_m(static_cast<std::size_t>(grid.size()), 0.0);
        for (int j = 0; j <= i - 1; ++j) {
            const GridFn& pj = t.phi_plus[static_cast<std::size_t>(j)];
            const GridFn& pk = t.phi_plus[static_cast<std::size_t>(i - 1 - j)];
            const GridFn& mj = t.phi_minus[static_cast<std::size_t>(j)];
            const GridFn& mk = t.phi_minus[static_cast<std::size_t>(i - 1 - j)];
            for (int k = 0; k < grid.size(); ++k) {
                conv_p[static_cast<std::size_t>(k)] += pj[k] * pk[k];
                conv_m[static_cast<std::size_t>(k)] += mj[k] * mk[k];
            }
        }
        GridFn cp(grid, std::move(conv_p));
        GridFn cm(grid, std::move(conv_m));
        t.phi_plus.push_back(-0.5 * (dplus[static_cast<std::size_t>(i - 1)] + cp));
        t.phi_minus.push_back(-0.5 * ((-1.0 * dminus[static_cast<std::size_t>(i - 1)]) + cm));
        if (i < order) {
            dplus.push_back(derivative(t.phi_plus.back()));
            dminus.push_back(derivative(t.phi_minus.back()));
        }
    }

    t.d.resize(static_cast<std::size_t>(order) + 1);
    for (int i = 0; i <= order; ++i)
        t.d[static_cast<std::size_t>(i)] =
            Complex(mean(t.phi_plus[static_cast<std::size_t>(i)]) +
                        mean(t.phi_minus[static_cast<std::size_t>(i)]),
                    0.0);
    return t;
}

TruncatedSeries series_mul(const TruncatedSeries& p, const TruncatedSeries& q) {
    int order = std::min(p.order(), q.order());
    TruncatedSeries r(order);
    for (int k = 0; k <= order; ++k) {
        Complex s = 0.0;
        for (int j = 0; j <= k; ++j) s += p[j] * q[k - j];
        r[k] = s;
    }
    return r;
}

TruncatedSeries series_recip(const TruncatedSeries& p) {
    if (p[0] == Complex(0.0, 0.0))
        throw DivisionByZero("series_recip: leading coefficient vanishes");
    TruncatedSeries q(p.order());
    q[0] = 1.0 / p[0];
    for (int k = 1; k <= p.order(); ++k) {
        Complex s = 0.0;
        for (int j = 1; j <= k; ++j) s += p[j] * q[k - j];
        q[k] = -s / p[0];
    }
    return q;
}

AsymptoticCoeffs invert_eigenvalue_relation(const PhiTable& phi, int m) {
    if (m < 1) throw std::invalid_argument("invert_eigenvalue_relation: m must be >= 1");
    if (phi.order < m)
        throw std::invalid_argument("invert_eigenvalue_relation: phi table order too small");

    const Complex lead(0.0, kPi);  // pi*i, the leading coefficient of mu = lambda/n

    // Work with mu(nu) = nu * lambda(nu) so the series has nonzero constant
    // term; then lambda^{-i} = nu^i * recip(mu)^i and the relation becomes
    //   mu = pi i - (nu/2) sum_i d_i nu^i recip(mu)^i.
    TruncatedSeries mu(m);
    mu[0] = lead;

    for (int pass = 0; pass <= 2 * m + 2; ++pass) {
        TruncatedSeries next(m);
        next[0] = lead;
        TruncatedSeries inv = series_recip(mu);
        TruncatedSeries ipow(m);
        ipow[0] = 1.0;
        for (int i = 0; i < m; ++i) {  // d_i enters at order nu^{i+1}
            for (int k = 0; k + i + 1 <= m; ++k)
                next[k + i + 1] -= 0.5 * phi.d[static_cast<std::size_t>(i)] * ipow[k];
            ipow = series_mul(ipow, inv);
        }
        double delta = 0.0;
        for (int k = 0; k <= m; ++k) delta = std::max(delta, std::abs(next[k] - mu[k]));
        mu = next;
        if (delta == 0.0) break;  // coefficients stationary
    }

    AsymptoticCoeffs out;
    out.order = m;
    out.c.resize(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) out.c[static_cast<std::size_t>(j)] = mu[j + 1];
    return out;
}

std::array<Complex, 3> closed_form_c012(const Expr& a, const Expr& b, const ChebGrid& grid) {
    GridFn fa = sample(a, grid);
    GridFn fb = sample(b, grid);
    GridFn a2b = fa * fa + fb;
    GridFn fa1 = sample(a.derivative(1), grid);

    double mean_a = mean(fa);
    double mean_a2b = mean(a2b);
    double mean_a_a2b = mean(fa * a2b);
    auto [ap0, ap1] = endpoint_values(fa1);

    Complex c0(-mean_a, 0.0);
    Complex c1 = mean_a2b / (2.0 * kPi * Complex(0.0, 1.0));
    Complex c2((mean_a_a2b - mean_a * mean_a2b + 0.5 * (ap1 - ap0)) / (2.0 * kPi * kPi), 0.0);
    return {c0, c1, c2};
}

Complex guess(const AsymptoticCoeffs& coeffs, int n) {
    if (n == 0) throw std::invalid_argument("guess: n must be nonzero");
    if (n < 0) return std::conj(guess(coeffs, -n));
    Complex lam(0.0, kPi * n);
    double npow = 1.0;
    for (int j = 0; j < coeffs.order; ++j) {
        lam += coeffs.c[static_cast<std::size_t>(j)] * npow;
        npow /= n;
    }
    return lam;
}

}  // namespace dws
