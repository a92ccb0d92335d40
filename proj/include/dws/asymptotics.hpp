#pragma once

#include <array>
#include <complex>
#include <vector>

#include "dws/expr.hpp"
#include "dws/funcspace.hpp"

namespace dws {

using Complex = std::complex<double>;

/// Tables phi_i^{(+)}, phi_i^{(-)}, i = 0..order, generated by the triangular
/// recurrence
///     phi_0 = a,
///     phi_1 = -(±a' + a^2 + b)/2,
///     phi_i = -(±phi_{i-1}' + sum_{j<i} phi_j phi_{i-1-j})/2,
/// together with the averages d_i = <phi_i^{(+)} + phi_i^{(-)}>.
struct PhiTable {
    int order = 0;
    std::vector<GridFn> phi_plus;
    std::vector<GridFn> phi_minus;
    std::vector<Complex> d;
};

/// phi_0' and phi_1' are taken from symbolic derivatives of a and b; higher
/// phi_i are differentiated spectrally on the grid.
PhiTable phi_recurrence(const Expr& a, const Expr& b, int order, const ChebGrid& grid);

/// Coefficients s_0..s_order of a formal power series in nu = 1/n.
class TruncatedSeries {
  public:
    explicit TruncatedSeries(int order) : coeffs_(static_cast<std::size_t>(order) + 1) {}

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    Complex& operator[](int j) { return coeffs_[static_cast<std::size_t>(j)]; }
    const Complex& operator[](int j) const { return coeffs_[static_cast<std::size_t>(j)]; }

  private:
    std::vector<Complex> coeffs_;
};

/// Cauchy product truncated at the common order.
TruncatedSeries series_mul(const TruncatedSeries& p, const TruncatedSeries& q);

/// Reciprocal series; requires p[0] != 0 (throws DivisionByZero otherwise).
TruncatedSeries series_recip(const TruncatedSeries& p);

/// Coefficients c_0..c_{m-1} of the eigenvalue expansion
/// lambda_n = pi n i + sum_j c_j n^{-j}.
struct AsymptoticCoeffs {
    int order = 0;
    std::vector<Complex> c;
};

/// Solves lambda + (1/2) sum_i d_i lambda^{-i} = pi n i as a formal series in
/// 1/n by fixed-point substitution in TruncatedSeries arithmetic.
AsymptoticCoeffs invert_eigenvalue_relation(const PhiTable& phi, int m);

/// Direct quadrature of the closed-form expressions
///   c0 = -<a>,  c1 = <a^2+b>/(2 pi i),
///   c2 = [<a(a^2+b)> - <a><a^2+b> + (a'(1)-a'(0))/2] / (2 pi^2);
/// independent check on invert_eigenvalue_relation.
std::array<Complex, 3> closed_form_c012(const Expr& a, const Expr& b, const ChebGrid& grid);

/// Initial guess pi n i + sum_j c_j n^{-j}; conjugated for n < 0.  Rejects n=0.
Complex guess(const AsymptoticCoeffs& coeffs, int n);

}  // namespace dws
