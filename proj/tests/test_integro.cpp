#include "doctest.h"

#include "fracspec/asymptotics.hpp"
#include "fracspec/error.hpp"
#include "fracspec/integro_algebraic.hpp"
#include "fracspec/reference_solver.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace fracspec;
using std::numbers::pi;

namespace {
const FractionalOrder a75(0.75, Variant::RLBridge);
const Complex I(0.0, 1.0);

PhaseTable& table75()
{
    static PhaseTable t(a75);
    return t;
}

double sup(const std::vector<double>& v, double shift = 0.0)
{
    double s = 0;
    for (double x : v)
        s = std::max(s, std::abs(x - shift));
    return s;
}

double sup_dev(const PQRSolution& s, const IntegroGrid& g)
{
    double d = 0;
    for (std::size_t k = 0; k < g.size(); ++k)
        d = std::max({d, std::abs(s.p[0][k] - 1), std::abs(s.p[1][k]), std::abs(s.q[0][k]), std::abs(s.q[1][k] - 1),
                      std::abs(s.r[0][k]), std::abs(s.r[1][k] - g.tau[k])});
    return d;
}

const DiscreteSpectrum& nystrom75()
{
    static const DiscreteSpectrum s =
        discretize_and_solve({a75, KernelKind::Bridge, KernelForm::Standard}, build_grid(1200));
    return s;
}
} // namespace

TEST_CASE("grid covers the exponential scale")
{
    const auto g = make_integro_grid(table75(), 30.0);
    REQUIRE(g.size() > 100);
    CHECK(g.tau.back() > 40.0 / 30.0 * std::exp(-0.125));
    CHECK(g.tau.back() < 40.0 / 30.0 * std::exp(0.125));
    CHECK(g.tau.front() < 1e-20);
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(g.g0[k] == table75().g0(g.tau[k]));
        CHECK(g.weight[k] == doctest::Approx(0.125 * g.tau[k]));
    }
    CHECK_THROWS_AS(make_integro_grid(table75(), -1.0), DomainError);
}

TEST_CASE("apply_A is linear and off-diagonal")
{
    const double rho = 25.0;
    const auto g = make_integro_grid(table75(), rho);
    const std::size_t n = g.size();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1, 1);
    GridPair f, h, comb;
    for (int c = 0; c < 2; ++c) {
        f[c].resize(n);
        h[c].resize(n);
        comb[c].resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            f[c][k] = U(rng);
            h[c][k] = U(rng);
            comb[c][k] = 2.5 * f[c][k] - 0.75 * h[c][k];
        }
    }
    const auto Af = apply_A(f, rho, g), Ah = apply_A(h, rho, g), Ac = apply_A(comb, rho, g);
    for (int c = 0; c < 2; ++c)
        for (std::size_t k = 0; k < n; ++k)
            CHECK(Ac[c][k] == doctest::Approx(2.5 * Af[c][k] - 0.75 * Ah[c][k]).epsilon(1e-12).scale(1e-12));

    GridPair only_first{f[0], std::vector<double>(n, 0.0)};
    const auto A1 = apply_A(only_first, rho, g);
    CHECK(sup(A1[0]) == 0.0);
    CHECK(sup(A1[1]) > 0.0);

    GridPair bad{std::vector<double>(3), std::vector<double>(3)};
    CHECK_THROWS_AS(apply_A(bad, rho, g), DomainError);
}

TEST_CASE("apply_A(e1) decays in rho")
{
    double prev = INFINITY;
    for (double rho : {20.0, 40.0, 80.0}) {
        const auto g = make_integro_grid(table75(), rho);
        const GridPair e1{std::vector<double>(g.size(), 1.0), std::vector<double>(g.size(), 0.0)};
        const auto A = apply_A(e1, rho, g);
        const double v = std::max(sup(A[0]), sup(A[1]));
        CHECK(v < prev);
        CHECK(v * rho < 20);
        prev = v;
    }
}

TEST_CASE("solve_pqr converges and is a fixed point")
{
    const double rho = rho_asymptotic(10, a75);
    const auto g = make_integro_grid(table75(), rho);
    const auto s = solve_pqr(rho, g);
    CHECK(s.converged);
    CHECK(s.iterations < 30);
    for (int c = 0; c < 3; ++c)
        CHECK(s.last_step[c] < 1e-12);
    const auto Ap = apply_A(s.p, rho, g);
    const auto Ar = apply_A(s.r, rho, g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(s.p[0][k] == doctest::Approx(Ap[0][k] + 1).epsilon(1e-11));
        CHECK(s.p[1][k] == doctest::Approx(Ap[1][k]).scale(1).epsilon(1e-11));
        CHECK(s.r[1][k] == doctest::Approx(Ar[1][k] + g.tau[k]).scale(1).epsilon(1e-11));
    }
}

TEST_CASE("deviation from the forcing shrinks like a power of rho")
{
    std::vector<double> dev;
    for (double rho : {30.0, 60.0, 120.0, 1000.0}) {
        const auto g = make_integro_grid(table75(), rho);
        dev.push_back(sup_dev(solve_pqr(rho, g), g));
    }
    CHECK(dev[0] / dev[1] > 4.0 / 3);
    CHECK(dev[1] / dev[2] > 4.0 / 3);
    CHECK(dev[3] < 3e-3);
}

TEST_CASE("analytic extension")
{
    const double rho = 40.0;
    const auto g = make_integro_grid(table75(), rho);
    const auto s = solve_pqr(rho, g);
    for (Forcing w : {Forcing::P, Forcing::Q, Forcing::R}) {
        for (Complex z : {I, Complex(0.3, -2.0), Complex(-4.0, 1.0)}) {
            const auto a = analytic_extend(s, w, z, g);
            const auto b = analytic_extend(s, w, std::conj(z), g);
            CHECK(std::abs(a[0] - std::conj(b[0])) < 1e-14);
            CHECK(std::abs(a[1] - std::conj(b[1])) < 1e-14);
        }
    }
    // on the positive axis the representation reproduces the grid values
    for (std::size_t k : {std::size_t(10), g.size() / 2, g.size() - 1}) {
        const auto p = analytic_extend(s, Forcing::P, Complex(g.tau[k], 0), g);
        CHECK(p[0].real() == doctest::Approx(s.p[0][k]).epsilon(1e-10));
        CHECK(p[1].real() == doctest::Approx(s.p[1][k]).scale(1).epsilon(1e-10));
        CHECK(std::abs(p[0].imag()) < 1e-15);
    }
    CHECK_THROWS_AS(analytic_extend(s, Forcing::P, Complex(-1, 0), g), DomainError);

    // p(-i) -> (1, 0)
    const auto gb = make_integro_grid(table75(), 1000.0);
    const auto sb = solve_pqr(1000.0, gb);
    const auto pm = analytic_extend(sb, Forcing::P, -I, gb);
    CHECK(std::abs(pm[0] - 1.0) < 1e-2);
    CHECK(std::abs(pm[1]) < 1e-2);
    const auto pm40 = analytic_extend(s, Forcing::P, -I, g);
    CHECK(std::abs(pm[1]) < std::abs(pm40[1]));
}

TEST_CASE("secular condition changes sign once per bracket")
{
    for (std::size_t n = 8; n <= 12; ++n)
        CHECK(count_bracket_roots(n, table75(), 48) == 1);
}

TEST_CASE("secular condition follows the large rho model")
{
    auto& t = table75();
    const double b = b_alpha(a75);
    double prev = INFINITY;
    for (double rho : {50.3, 100.7, 201.1}) {
        const auto g = make_integro_grid(t, rho);
        const auto s = secular(rho, g, t);
        const Complex model = std::pow(rho * I, -1.0) * t.xc0(I) * t.xc0(I) * std::pow(rho, 0.75) *
                              std::pow(-I, -0.25) * std::exp(I * rho) * (b + I);
        const double dev = std::abs(s.condition - model.imag()) / std::abs(model);
        CAPTURE(rho);
        CHECK(dev * rho < 5);
        CHECK(dev < prev);
        prev = dev;
    }
}

TEST_CASE("refine_rho")
{
    auto& t = table75();
    const auto r = refine_rho(10, t);
    CHECK(std::abs(r.rho - 30.892328) < 0.05);
    CHECK(r.condition_residual < 1e-10);
    CHECK(r.sign_changes == 1);
    CHECK(r.n == 10);
    CHECK(r.rho_asym2 == rho_asymptotic(10, a75));
    const double ref = nystrom75().rho(10);
    CHECK(std::abs(r.rho - ref) < std::abs(r.rho_asym2 - ref));

    double prev = 0, c = 0;
    for (std::size_t n = 5; n <= 25; ++n) {
        const auto rn = refine_rho(n, t);
        CHECK(rn.rho > prev);
        prev = rn.rho;
        c = std::max(c, std::abs(rn.rho - rn.rho_asym2) * n);
    }
    CHECK(c < 0.5);

    CHECK_THROWS_AS(PhaseTable(FractionalOrder::classical(Variant::RLBridge)), DomainError);
}

TEST_CASE("cross-solver agreement beats the Nystrom refinement error")
{
    auto& t = table75();
    const auto coarse = discretize_and_solve({a75, KernelKind::Bridge, KernelForm::Standard}, build_grid(600));
    for (std::size_t n : {5u, 12u, 20u}) {
        const double r = refine_rho(n, t).rho;
        const double bar = std::abs(std::pow(coarse.rho(n), 1.5) - nystrom75().lambda(n));
        CHECK(std::abs(std::pow(r, 1.5) - nystrom75().lambda(n)) < bar);
    }
}

TEST_CASE("c_ratio alternates and follows the magnitude law")
{
    auto& t = table75();
    const double b = b_alpha(a75);
    int prev_sign = 0;
    for (std::size_t n = 8; n <= 12; ++n) {
        const auto r = refine_rho(n, t);
        CHECK(r.c_ratio == doctest::Approx(c_ratio(r.rho, t)).epsilon(1e-12));
        const int sg = r.c_ratio > 0 ? 1 : -1;
        if (prev_sign != 0)
            CHECK(sg == -prev_sign);
        prev_sign = sg;
        const double law = std::abs(r.c_ratio) * std::pow(r.rho, 1.75) * std::sqrt(b * b + 1);
        CHECK(std::abs(law - 1) * n < 3);
    }
}

TEST_CASE("exact reconstruction")
{
    auto& t = table75();
    const auto r = refine_rho(10, t);
    const ExactEigenfunction f(r.rho, t);
    CHECK(std::abs(f(0.0)) < 1e-3);
    CHECK(std::abs(f(1.0)) < 1e-3);
    CHECK(f.rho() == r.rho);
    CHECK(reconstruct_f_exact(0.3, r.rho, t) == doctest::Approx(f(0.3)).epsilon(1e-12));

    const EigenfunctionApprox asym(10, a75, &t, true);
    double e_exact = 0, e_asym = 0;
    for (int i = 0; i <= 400; ++i) {
        const double x = i / 400.0;
        const double ref = eigenfunction_at(nystrom75(), 10, x);
        e_exact = std::max(e_exact, std::abs(f(x) - ref));
        e_asym = std::max(e_asym, std::abs(asym(x) - ref));
    }
    CHECK(e_exact < e_asym);

    // near alpha = 1 the interior is a shifted sine
    const FractionalOrder a95(0.95, Variant::RLBridge);
    PhaseTable t95(a95);
    const auto r95 = refine_rho(10, t95);
    const ExactEigenfunction f95(r95.rho, t95);
    for (double x : {0.2, 0.45, 0.8})
        CHECK(std::abs(f95(x) - std::sqrt(2.0) * std::sin(r95.rho * x + pi * 0.05 / 4)) < 0.02);
}

TEST_CASE("printed jump sign gains nothing over the asymptotics")
{
    IntegroOptions opts;
    opts.printed_jump_sign = true;
    PhaseTable t(a75);
    const double ref = nystrom75().rho(10);
    const double asym = std::abs(rho_asymptotic(10, a75) - ref);
    const double good = std::abs(refine_rho(10, t).rho - ref);
    double printed = INFINITY;
    try {
        printed = std::abs(refine_rho(10, t, opts).rho - ref);
    } catch (const std::exception&) {
    }
    CHECK(printed > 0.5 * asym);
    CHECK(printed > 100 * good);
}

TEST_CASE("integro CSV")
{
    std::vector<IntegroRoot> roots{refine_rho(5, table75())};
    std::ostringstream a, b;
    write_integro_csv(a, roots);
    write_integro_csv(b, roots);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("n,rho_refined,rho_asym2,condition_residual,iterations\n5,", 0) == 0);
}
