#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "dws/expr.hpp"

namespace dws {

/// Chebyshev-Lobatto grid on [0,1]: x_k = (1 - cos(k pi/(M-1)))/2, ascending,
/// with x_0 = 0 and x_{M-1} = 1 exact.  Carries the Clenshaw-Curtis quadrature
/// weights and the spectral differentiation matrix for its nodes.  Copies are
/// cheap (shared immutable state).
class ChebGrid {
  public:
    explicit ChebGrid(int node_count);  // throws std::invalid_argument if < 8

    int size() const;
    const std::vector<double>& nodes() const;
    /// Quadrature weights for integrals over [0,1]; exact for polynomials of
    /// degree <= size()-1.
    const std::vector<double>& quad_weights() const;
    /// Row-major size x size first-derivative collocation matrix.
    const std::vector<double>& diff_matrix() const;

    bool same_as(const ChebGrid& other) const { return impl_ == other.impl_; }

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// Real-valued samples of a function at the nodes of a ChebGrid.
class GridFn {
  public:
    GridFn(ChebGrid grid, std::vector<double> values);

    const ChebGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](int k) const { return values_[static_cast<std::size_t>(k)]; }
    int size() const { return static_cast<int>(values_.size()); }

  private:
    ChebGrid grid_;
    std::vector<double> values_;
};

GridFn sample(const Expr& e, const ChebGrid& grid);

/// Clenshaw-Curtis value of the integral of f over [0,1].
double mean(const GridFn& f);

/// Spectral derivative of the Chebyshev interpolant of f.
GridFn derivative(const GridFn& f);

/// (f(0), f(1)).
std::pair<double, double> endpoint_values(const GridFn& f);

// Pointwise arithmetic (operands must share the grid).
GridFn operator+(const GridFn& a, const GridFn& b);
GridFn operator-(const GridFn& a, const GridFn& b);
GridFn operator*(const GridFn& a, const GridFn& b);
GridFn operator*(double s, const GridFn& a);
GridFn operator+(const GridFn& a, double s);

}  // namespace dws
