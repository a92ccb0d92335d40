#include "dws/funcspace.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dws {

namespace {
constexpr double kPi = std::numbers::pi;
}

struct ChebGrid::Impl {
    int m = 0;
    std::vector<double> x;     // nodes, ascending
    std::vector<double> w;     // Clenshaw-Curtis weights for [0,1]
    std::vector<double> diff;  // row-major m*m derivative matrix
};

ChebGrid::ChebGrid(int node_count) {
    if (node_count < 8) throw std::invalid_argument("ChebGrid requires at least 8 nodes");
    auto impl = std::make_shared<Impl>();
    const int m = node_count;
    const int n = m - 1;  // panel count
    impl->m = m;

    // x_k = (1 - cos(k pi/n))/2 = sin^2(k pi/(2n)); mirror the upper half so
    // the grid is exactly symmetric and hits 0 and 1 exactly.
    impl->x.resize(m);
    for (int k = 0; k <= n / 2; ++k) {
        double s = std::sin(0.5 * kPi * k / n);
        impl->x[k] = s * s;
        impl->x[n - k] = 1.0 - s * s;
    }
    if (n % 2 == 0) impl->x[n / 2] = 0.5;

    // Clenshaw-Curtis weights on cos(k pi/n) nodes, rescaled to [0,1].
    impl->w.resize(m);
    for (int k = 0; k <= n; ++k) {
        double s = 1.0;
        for (int j = 1; j <= n / 2; ++j) {
            double bj = (2 * j == n) ? 1.0 : 2.0;
            s -= bj * std::cos(2.0 * kPi * j * k / n) / (4.0 * j * j - 1.0);
        }
        double ck = (k == 0 || k == n) ? 1.0 : 2.0;
        impl->w[k] = 0.5 * ck * s / n;
    }

    // First-derivative matrix on the [0,1] nodes with the negative-sum trick
    // for the diagonal.
    impl->diff.assign(static_cast<std::size_t>(m) * m, 0.0);
    auto at = [&](int i, int j) -> double& {
        return impl->diff[static_cast<std::size_t>(i) * m + j];
    };
    auto cfac = [&](int i) { return (i == 0 || i == n) ? 2.0 : 1.0; };
    for (int i = 0; i <= n; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j <= n; ++j) {
            if (i == j) continue;
            double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            double v = sign * cfac(i) / (cfac(j) * (impl->x[i] - impl->x[j]));
            at(i, j) = v;
            rowsum += v;
        }
        at(i, i) = -rowsum;
    }

    impl_ = std::move(impl);
}

int ChebGrid::size() const { return impl_->m; }
const std::vector<double>& ChebGrid::nodes() const { return impl_->x; }
const std::vector<double>& ChebGrid::quad_weights() const { return impl_->w; }
const std::vector<double>& ChebGrid::diff_matrix() const { return impl_->diff; }

GridFn::GridFn(ChebGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.size())
        throw std::invalid_argument("GridFn: value count does not match grid");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("GridFn: non-finite sample");
}

GridFn sample(const Expr& e, const ChebGrid& grid) {
    std::vector<double> v(static_cast<std::size_t>(grid.size()));
    for (int k = 0; k < grid.size(); ++k) {
        try {
            v[static_cast<std::size_t>(k)] = e.eval(grid.nodes()[static_cast<std::size_t>(k)]);
        } catch (const DomainError& err) {
            throw DomainError(std::string(err.what()) + " (grid node k=" + std::to_string(k) + ")");
        }
    }
    return GridFn(grid, std::move(v));
}

double mean(const GridFn& f) {
    const auto& w = f.grid().quad_weights();
    double s = 0.0;
    for (int k = 0; k < f.size(); ++k) s += w[static_cast<std::size_t>(k)] * f[k];
    return s;
}

GridFn derivative(const GridFn& f) {
    const int m = f.size();
    const auto& d = f.grid().diff_matrix();
    std::vector<double> out(static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        const double* row = d.data() + static_cast<std::size_t>(i) * m;
        for (int j = 0; j < m; ++j) s += row[j] * f[j];
        out[static_cast<std::size_t>(i)] = s;
    }
    return GridFn(f.grid(), std::move(out));
}

std::pair<double, double> endpoint_values(const GridFn& f) {
    return {f[0], f[f.size() - 1]};
}

namespace {
void check_same_grid(const GridFn& a, const GridFn& b) {
    if (!a.grid().same_as(b.grid()))
        throw std::invalid_argument("GridFn arithmetic across different grids");
}
}  // namespace

GridFn operator+(const GridFn& a, const GridFn& b) {
    check_same_grid(a, b);
    std::vector<double> v(static_cast<std::size_t>(a.size()));
    for (int k = 0; k < a.size(); ++k) v[static_cast<std::size_t>(k)] = a[k] + b[k];
    return GridFn(a.grid(), std::move(v));
}

GridFn operator-(const GridFn& a, const GridFn& b) {
    check_same_grid(a, b);
    std::vector<double> v(static_cast<std::size_t>(a.size()));
    for (int k = 0; k < a.size(); ++k) v[static_cast<std::size_t>(k)] = a[k] - b[k];
    return GridFn(a.grid(), std::move(v));
}

GridFn operator*(const GridFn& a, const GridFn& b) {
    check_same_grid(a, b);
    std::vector<double> v(static_cast<std::size_t>(a.size()));
    for (int k = 0; k < a.size(); ++k) v[static_cast<std::size_t>(k)] = a[k] * b[k];
    return GridFn(a.grid(), std::move(v));
}

GridFn operator*(double s, const GridFn& a) {
    std::vector<double> v(static_cast<std::size_t>(a.size()));
    for (int k = 0; k < a.size(); ++k) v[static_cast<std::size_t>(k)] = s * a[k];
    return GridFn(a.grid(), std::move(v));
}

GridFn operator+(const GridFn& a, double s) {
    std::vector<double> v(static_cast<std::size_t>(a.size()));
    for (int k = 0; k < a.size(); ++k) v[static_cast<std::size_t>(k)] = a[k] + s;
    return GridFn(a.grid(), std::move(v));
}

}  // namespace dws
