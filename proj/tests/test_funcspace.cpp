#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "dws/funcspace.hpp"

using dws::ChebGrid;
using dws::Expr;
using dws::GridFn;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("grid nodes are ascending with exact endpoints") {
    for (int m : {8, 17, 64}) {
        ChebGrid g(m);
        const auto& x = g.nodes();
        CHECK(x.front() == 0.0);
        CHECK(x.back() == 1.0);
        for (std::size_t k = 1; k < x.size(); ++k) CHECK(x[k] > x[k - 1]);
        // symmetric about 1/2
        for (std::size_t k = 0; k < x.size(); ++k)
            CHECK(x[k] == doctest::Approx(1.0 - x[x.size() - 1 - k]).epsilon(1e-16));
    }
    CHECK_THROWS_AS(ChebGrid(7), std::invalid_argument);
}

TEST_CASE("sample evaluates expressions at the nodes") {
    ChebGrid g(8);
    GridFn ones = sample(Expr::parse("1"), g);
    for (int k = 0; k < g.size(); ++k) CHECK(ones[k] == 1.0);
    GridFn ident = sample(Expr::parse("x"), g);
    for (int k = 0; k < g.size(); ++k) CHECK(ident[k] == g.nodes()[(std::size_t)k]);
    CHECK_THROWS_AS(sample(Expr::parse("1/x"), g), dws::DomainError);
}

TEST_CASE("quadrature hits the documented spot values") {
    CHECK(mean(sample(Expr::parse("x^2"), ChebGrid(16))) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(mean(sample(Expr::parse("sin(pi*x)"), ChebGrid(32))) - 2.0 / kPi) <= 1e-12);
    CHECK(std::abs(mean(sample(Expr::parse("1"), ChebGrid(16))) - 1.0) <= 1e-15);
}

TEST_CASE("quadrature is exact for polynomials up to degree M-1") {
    for (int m : {8, 16, 64}) {
        ChebGrid g(m);
        // x^p integrates to 1/(p+1)
        std::vector<double> pw(static_cast<std::size_t>(g.size()), 1.0);
        for (int p = 0; p <= m - 1; ++p) {
            GridFn f(g, pw);
            CHECK(std::abs(mean(f) - 1.0 / (p + 1)) <= 1e-13);
            for (int k = 0; k < g.size(); ++k) pw[(std::size_t)k] *= g.nodes()[(std::size_t)k];
        }
    }
}

TEST_CASE("spectral derivative spot values") {
    {
        ChebGrid g(16);
        GridFn d = derivative(sample(Expr::parse("x^3"), g));
        for (int k = 0; k < g.size(); ++k) {
            double x = g.nodes()[(std::size_t)k];
            CHECK(std::abs(d[k] - 3.0 * x * x) <= 1e-11);
        }
    }
    {
        ChebGrid g(32);
        GridFn d = derivative(sample(Expr::parse("exp(x)"), g));
        for (int k = 0; k < g.size(); ++k) {
            double x = g.nodes()[(std::size_t)k];
            CHECK(std::abs(d[k] - std::exp(x)) <= 1e-11 * std::exp(x));
        }
    }
    {
        ChebGrid g(24);
        GridFn d = derivative(sample(Expr::parse("5"), g));
        for (int k = 0; k < g.size(); ++k) CHECK(std::abs(d[k]) <= 1e-12);
    }
}

TEST_CASE("grid derivative agrees with the symbolic derivative") {
    ChebGrid g(32);
    for (const char* src : {"x^4", "sin(pi*x)", "exp(x)"}) {
        Expr e = Expr::parse(src);
        GridFn on_grid = derivative(sample(e, g));
        GridFn symbolic = sample(e.derivative(1), g);
        for (int k = 0; k < g.size(); ++k) CHECK(std::abs(on_grid[k] - symbolic[k]) <= 1e-9);
    }
}

TEST_CASE("fundamental theorem: mean of derivative equals boundary difference") {
    ChebGrid g(20);
    for (const char* src : {"x^5 - 2*x^2", "(x-0.3)^4", "x^18"}) {
        GridFn f = sample(Expr::parse(src), g);
        auto [f0, f1] = endpoint_values(f);
        CHECK(std::abs(mean(derivative(f)) - (f1 - f0)) <= 1e-10);
    }
}

TEST_CASE("endpoint values") {
    ChebGrid g(16);
    auto [a0, a1] = endpoint_values(sample(Expr::parse("x"), g));
    CHECK(a0 == 0.0);
    CHECK(a1 == 1.0);
    auto [d0, d1] = endpoint_values(sample(Expr::parse("x^2").derivative(1), g));
    CHECK(d0 == 0.0);
    CHECK(d1 == 2.0);
    auto [c0, c1] = endpoint_values(sample(Expr::parse("5"), g));
    CHECK(c0 == 5.0);
    CHECK(c1 == 5.0);
}

TEST_CASE("grid function arithmetic checks grids and finiteness") {
    ChebGrid g(8), h(9);
    GridFn a = sample(Expr::parse("x"), g);
    GridFn b = sample(Expr::parse("x"), h);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS_AS(GridFn(g, std::vector<double>(3, 0.0)), std::invalid_argument);
    std::vector<double> bad(8, 0.0);
    bad[4] = std::nan("");
    CHECK_THROWS_AS(GridFn(g, bad), std::invalid_argument);
}
