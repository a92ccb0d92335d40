// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures.  Tolerances are pinned in the checks themselves.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "dws/analysis.hpp"
#include "dws/qep.hpp"
#include "dws/shooting.hpp"

using dws::AsymptoticCoeffs;
using dws::ChebGrid;
using dws::Complex;
using dws::Expr;
using dws::Method;
using dws::Problem;
using dws::Spectrum;

namespace {

constexpr double kPi = std::numbers::pi;

Problem make_problem(const char* a, const char* b = "0") {
    Problem p;
    p.a = Expr::parse(a);
    p.b = Expr::parse(b);
    return p;
}

AsymptoticCoeffs coeffs_for(const Problem& p, int m) {
    ChebGrid grid(p.grid_size);
    return invert_eigenvalue_relation(phi_recurrence(p.a, p.b, m, grid), m);
}

std::vector<Complex> oracle_upper(const Problem& p, int colloc_n) {
    auto os = solve_qep(p, discretize(p, colloc_n));
    std::vector<Complex> up;
    for (const Complex& lam : os.eigenvalues)
        if (lam.imag() > 1e-9) up.push_back(lam);
    std::sort(up.begin(), up.end(), [](Complex a, Complex b) { return a.imag() < b.imag(); });
    return up;
}

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// 1. a=0,b=0: lambda_n = i pi n for n=1..50; shooting <=1e-10, oracle(N=96) <=1e-9.
Outcome criterion1() {
    Problem p = make_problem("0");
    AsymptoticCoeffs c = coeffs_for(p, 4);
    double shoot_err = 0.0;
    for (int n = 1; n <= 50; ++n) {
        Complex lam = refine(p, guess(c, n));
        shoot_err = std::max(shoot_err, std::abs(lam - Complex(0.0, kPi * n)));
    }
    auto up = oracle_upper(p, 96);
    double oracle_err = 0.0;
    int oracle_have = static_cast<int>(up.size());
    for (int n = 1; n <= 50; ++n) {
        if (n > oracle_have) {
            oracle_err = std::numeric_limits<double>::infinity();
            break;
        }
        oracle_err = std::max(oracle_err,
                              std::abs(up[static_cast<std::size_t>(n - 1)] - Complex(0.0, kPi * n)));
    }
    bool pass = shoot_err <= 1e-10 && oracle_err <= 1e-9;
    return {pass, "shooting max|err|=" + fmt(shoot_err) + " (<=1e-10), oracle max|err|=" +
                      fmt(oracle_err) + " (<=1e-9, N=96)"};
}

// 2. a=1,b=0: lambda_n = -1 + i sqrt(pi^2 n^2 - 1) to 1e-8 for n=1..50;
//    Re lambda_n = -1 to 1e-9; c2 = 0 to 1e-10 on both asymptotics paths.
Outcome criterion2() {
    Problem p = make_problem("1");
    AsymptoticCoeffs c = coeffs_for(p, 4);
    double err = 0.0, re_err = 0.0;
    for (int n = 1; n <= 50; ++n) {
        Complex lam = refine(p, guess(c, n));
        Complex exact(-1.0, std::sqrt(kPi * kPi * n * n - 1.0));
        err = std::max(err, std::abs(lam - exact));
        re_err = std::max(re_err, std::abs(lam.real() + 1.0));
    }
    ChebGrid grid(p.grid_size);
    double c2_inv = std::abs(c.c[2]);
    double c2_closed = std::abs(closed_form_c012(p.a, p.b, grid)[2]);
    bool pass = err <= 1e-8 && re_err <= 1e-9 && c2_inv <= 1e-10 && c2_closed <= 1e-10;
    return {pass, "max|err|=" + fmt(err) + " (<=1e-8), max|Re+1|=" + fmt(re_err) +
                      " (<=1e-9), |c2|=" + fmt(std::max(c2_inv, c2_closed)) + " (<=1e-10)"};
}

// 3. coefficient consistency across the family, j=0,1,2 to 1e-10.
Outcome criterion3() {
    ChebGrid grid(64);
    double worst = 0.0;
    for (const char* a : {"x", "x^2", "1+sin(pi*x)/2"}) {
        for (const char* b : {"0", "x"}) {
            Expr ea = Expr::parse(a), eb = Expr::parse(b);
            AsymptoticCoeffs inv = invert_eigenvalue_relation(phi_recurrence(ea, eb, 4, grid), 4);
            auto closed = closed_form_c012(ea, eb, grid);
            for (int j = 0; j < 3; ++j)
                worst = std::max(worst, std::abs(inv.c[static_cast<std::size_t>(j)] -
                                                 closed[static_cast<std::size_t>(j)]));
        }
    }
    return {worst <= 1e-10, "max|c_j(inversion) - c_j(closed form)|=" + fmt(worst) + " (<=1e-10)"};
}

// 4. residual order: a=x, m=3 guesses; |lambda_n - guess(n)| n^3 bounded with
//    a non-increasing trend (upper half <= 3x lower half) over n=16..64.
Outcome criterion4() {
    Problem p = make_problem("x");
    AsymptoticCoeffs c3 = coeffs_for(p, 3);
    AsymptoticCoeffs c5 = coeffs_for(p, 5);  // refinement start only
    double low = 0.0, high = 0.0;
    for (int n = 16; n <= 64; ++n) {
        Complex lam = refine(p, guess(c5, n));
        double r = std::abs(lam - guess(c3, n)) * std::pow(n, 3);
        double& slot = n <= 40 ? low : high;
        slot = std::max(slot, r);
    }
    bool pass = std::isfinite(high) && high <= 3.0 * low;
    return {pass, "scaled residual max: n in 16..40 -> " + fmt(low) + ", n in 41..64 -> " +
                      fmt(high) + " (ratio<=3)"};
}

// 5. count_in_box(n) = 2n for n=1..5, a in {0, 1, x}.
Outcome criterion5() {
    for (const char* a : {"0", "1", "x"}) {
        Problem p = make_problem(a);
        for (int n = 1; n <= 5; ++n) {
            int count = count_in_box(p, dws::CountingBox(n));
            if (count != 2 * n)
                return {false, std::string("a=") + a + ", n=" + std::to_string(n) + ": count " +
                                   std::to_string(count) + " != " + std::to_string(2 * n)};
        }
    }
    return {true, "count = 2n for n=1..5 on a in {0,1,x}"};
}

// 6. trace formula: a=x^2 at N=200 matches 1/6 to 1e-4; a=1 matches 0 to 1e-8.
Outcome criterion6() {
    Problem px = make_problem("x^2");
    px.certify_box = 20;
    Spectrum spx = compute_spectrum(px, 200, Method::Shooting);
    dws::TraceReport rx = trace_report(px, spx, 200);

    Problem pc = make_problem("1");
    pc.certify_box = 20;
    Spectrum spc = compute_spectrum(pc, 200, Method::Shooting);
    dws::TraceReport rc = trace_report(pc, spc, 200);

    bool pass = std::abs(rx.rhs - 1.0 / 6.0) <= 1e-12 && rx.gap <= 1e-4 && rc.gap <= 1e-8;
    return {pass, "a=x^2: rhs=" + fmt(rx.rhs) + ", gap=" + fmt(rx.gap) +
                      " (<=1e-4); a=1: gap=" + fmt(rc.gap) + " (<=1e-8)"};
}

// 7. constant-damping criterion, forward and inverse modes.
Outcome criterion7() {
    ChebGrid grid(64);
    auto forward_gap = [&](const char* a) {
        auto c = closed_form_c012(Expr::parse(a), Expr::parse("0"), grid);
        return dws::constant_damping_gap(c[0], c[1], 0.0);
    };
    double g1 = forward_gap("1");
    double gx = forward_gap("x");

    auto inverse_gap = [&](const char* a) {
        Problem p = make_problem(a);
        p.certify_box = 10;
        Spectrum sp = compute_spectrum(p, 60, Method::Shooting);
        dws::CoefficientFit fit = fit_coefficients(sp, 4, 10, 60);
        return dws::constant_damping_gap(fit.coeffs.c[0], fit.coeffs.c[1], 0.0);
    };
    double i1 = inverse_gap("1");
    double ix = inverse_gap("x");

    bool pass = std::abs(g1) <= 1e-10 && std::abs(gx - 1.0 / 12.0) <= 1e-8 &&
                std::abs(i1) <= dws::kConstantTolInverse &&
                std::abs(ix - 1.0 / 12.0) <= dws::kConstantTolInverse;
    return {pass, "forward: a=1 gap=" + fmt(g1) + " (<=1e-10), a=x gap-1/12=" +
                      fmt(gx - 1.0 / 12.0) + " (<=1e-8); inverse: a=1 gap=" + fmt(i1) +
                      ", a=x gap-1/12=" + fmt(ix - 1.0 / 12.0) + " (<=1e-3)"};
}

// 8. cross-oracle: first 20 eigenvalues agree to 1e-6 for a=x and a=1+sin(pi*x)/2.
Outcome criterion8() {
    double worst = 0.0;
    for (const char* a : {"x", "1+sin(pi*x)/2"}) {
        Problem p = make_problem(a);
        AsymptoticCoeffs c = coeffs_for(p, 4);
        auto up = oracle_upper(p, 96);
        if (up.size() < 20) return {false, std::string("a=") + a + ": oracle kept < 20"};
        for (int n = 1; n <= 20; ++n) {
            Complex lam = refine(p, guess(c, n));
            worst = std::max(worst, std::abs(lam - up[static_cast<std::size_t>(n - 1)]));
        }
    }
    return {worst <= 1e-6, "max shooting-vs-collocation distance=" + fmt(worst) + " (<=1e-6)"};
}

// 9. symmetry suite: conjugate closure 1e-10; reflection 1e-8; dgamma0 vs
//    finite differences 1e-6 relative at 10 random lambda in box n=2.
Outcome criterion9() {
    Problem p = make_problem("x");
    AsymptoticCoeffs c = coeffs_for(p, 4);
    double conj_err = 0.0;
    for (int n = 1; n <= 5; ++n) {
        Complex up = refine(p, guess(c, n));
        Complex down = refine(p, std::conj(guess(c, n)));
        conj_err = std::max(conj_err, std::abs(down - std::conj(up)));
    }

    double refl = reflection_check(make_problem("x"), 10);

    std::mt19937 rng(77);
    std::uniform_real_distribution<double> box(-2.5 * kPi, 2.5 * kPi);
    double fd_err = 0.0;
    for (int t = 0; t < 10; ++t) {
        Complex lam(box(rng), box(rng));
        double h = 1e-6 * (1.0 + std::abs(lam));
        Complex fd = (gamma0(p, lam + h).gamma0 - gamma0(p, lam - h).gamma0) / (2.0 * h);
        Complex dg = gamma0(p, lam).dgamma0;
        fd_err = std::max(fd_err, std::abs(fd - dg) / (1.0 + std::abs(dg)));
    }

    bool pass = conj_err <= 1e-10 && refl <= 1e-8 && fd_err <= 1e-6;
    return {pass, "conjugate closure=" + fmt(conj_err) + " (<=1e-10), reflection=" + fmt(refl) +
                      " (<=1e-8), dgamma0 FD=" + fmt(fd_err) + " (<=1e-6)"};
}

// 10. odd/even invariants for a=x: (1/12, 1/24) to 1e-12.
Outcome criterion10() {
    ChebGrid grid(64);
    auto [i1, i2] = odd_even_invariants(Expr::parse("x"), grid);
    double e1 = std::abs(i1 - 1.0 / 12.0);
    double e2 = std::abs(i2 - 1.0 / 24.0);
    return {e1 <= 1e-12 && e2 <= 1e-12,
            "|I1-1/12|=" + fmt(e1) + ", |I2-1/24|=" + fmt(e2) + " (<=1e-12)"};
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const Entry entries[] = {
        {1, "undamped exactness", criterion1},
        {2, "constant damping closed form", criterion2},
        {3, "coefficient consistency", criterion3},
        {4, "asymptotic residual order", criterion4},
        {5, "eigenvalue counting in boxes", criterion5},
        {6, "regularized trace formula", criterion6},
        {7, "constant-damping criterion", criterion7},
        {8, "cross-oracle agreement", criterion8},
        {9, "symmetry suite", criterion9},
        {10, "odd/even invariants", criterion10},
    };

    int failures = 0;
    for (const Entry& e : entries) {
        Outcome o;
        try {
            o = e.run();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        if (!o.pass) ++failures;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", e.id, e.name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
