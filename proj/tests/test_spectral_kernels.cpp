#include "doctest.h"

#include "fracspec/error.hpp"
#include "fracspec/spectral_kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

using namespace fracspec;
using std::numbers::pi;

namespace {
const FractionalOrder a75(0.75, Variant::RLBridge);

PhaseTable& table75()
{
    static PhaseTable t(a75);
    return t;
}
} // namespace

TEST_CASE("theta0 endpoints, monotonicity and tail")
{
    for (double a : {0.55, 0.75, 0.95}) {
        const FractionalOrder o(a, Variant::RLBridge);
        CHECK(theta0(1e-12, o) == doctest::Approx((a - 1) * pi).epsilon(1e-9));
        CHECK(std::abs(theta0(1e12, o)) < 1e-12);
        double prev = theta0(1e-6, o);
        for (double t = 1e-6; t < 1e6; t *= 1.3) {
            const double v = theta0(t, o);
            CHECK(v >= prev);
            CHECK(v <= 0.0);
            CHECK(v >= (a - 1) * pi);
            prev = v;
        }
        // theta0 ~ -sin(a pi) t^{-2a}
        const double t = 1e5;
        CHECK(theta0(t, o) == doctest::Approx(-std::sin(a * pi) * std::pow(t, -2 * a)).epsilon(1e-6));
    }
    CHECK(theta0(10.0, a75) == doctest::Approx(-0.021868129026261611656).epsilon(1e-14));
}

TEST_CASE("theta0 offset and derivative")
{
    for (double t : {1e-8, 0.1, 1.0, 7.0}) {
        CHECK(theta0_offset(t, a75) == doctest::Approx(theta0(t, a75) + pi / 4).epsilon(1e-12));
        const double h = 1e-5 * t;
        const double fd = (theta0_offset(t + h, a75) - theta0_offset(t - h, a75)) / (2 * h);
        CHECK(theta0_derivative(t, a75) == doctest::Approx(fd).epsilon(1e-7));
    }
    // small t: offset ~ sin(a pi) t^{2a}, no cancellation
    CHECK(theta0_offset(1e-20, a75) == doctest::Approx(std::sin(0.75 * pi) * 1e-30).epsilon(1e-10));
}

TEST_CASE("gamma0 and b_alpha")
{
    CHECK(gamma0(2.0, a75) == doctest::Approx(2.1438736151444559696).epsilon(1e-14));
    CHECK(gamma0(1.0, a75) == doctest::Approx(std::sqrt(2 - 2 * std::cos(0.75 * pi))).epsilon(1e-14));
    CHECK(b_alpha(FractionalOrder(0.9, Variant::RLBridge)) == doctest::Approx(-0.17632698070846497347).epsilon(1e-14));
    CHECK(b_alpha(a75) == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(b_alpha(FractionalOrder::classical(Variant::RLBridge)) == 0.0);
}

TEST_CASE("PhaseTable rejects unsupported orders")
{
    CHECK_THROWS_AS(PhaseTable(FractionalOrder(0.75, Variant::Caputo)), DomainError);
    CHECK_THROWS_AS(PhaseTable(FractionalOrder::classical(Variant::RLBridge)), DomainError);
}

TEST_CASE("xc0 closed form at i")
{
    for (double a : {0.55, 0.65, 0.75, 0.85, 0.95}) {
        PhaseTable t(FractionalOrder(a, Variant::RLBridge));
        const Complex want = std::sqrt(a) * std::exp(Complex(0, -pi * (1 - a) / 4));
        CHECK(std::abs(t.xc0(Complex(0, 1)) - want) < 1e-12);
    }
}

TEST_CASE("xc0 against high precision values")
{
    auto& t = table75();
    // mpmath quadrature of exp((1/pi) int theta0/(t - z))
    CHECK(t.xc0(Complex(-2, 0)).real() == doctest::Approx(0.873829168613278182).epsilon(1e-12));
    CHECK(t.xc0_negative(0.01) == doctest::Approx(0.314614199543937284).epsilon(1e-12));
    CHECK(t.xc0_negative(1e2) == doctest::Approx(0.9948974547895495844565603).epsilon(1e-12));
    CHECK(t.xc0_negative(1e4) == doctest::Approx(0.9999429687077271561065941).epsilon(1e-12));

    // closer to the cut the default step is not enough; a finer table is
    PhaseTableOptions fine;
    fine.step = 1.0 / 16;
    PhaseTable tf(a75, fine);
    const Complex z = tf.xc0(Complex(1, 1));
    CHECK(z.real() == doctest::Approx(0.960832264513222215).epsilon(1e-12));
    CHECK(z.imag() == doctest::Approx(-0.233863790528188038).epsilon(1e-12));
}

TEST_CASE("xc0 symmetry, caching and the cut")
{
    auto& t = table75();
    for (Complex z : {Complex(0.3, 2.0), Complex(-5, 0.1), Complex(-10, -3)}) {
        CHECK(std::abs(t.xc0(std::conj(z)) - std::conj(t.xc0(z))) < 1e-14);
        CHECK(t.xc0(z) == t.xc0(z));
    }
    for (double tau : {1e-3, 0.5, 20.0})
        CHECK(t.xc0_negative(tau) == doctest::Approx(t.xc0(Complex(-tau, 0)).real()).epsilon(1e-14));
    CHECK_THROWS_AS(t.xc0(Complex(2.0, 0.0)), DomainError);
    CHECK_THROWS_AS(t.xc0(Complex(0.0, 0.0)), DomainError);
    CHECK_THROWS_AS(t.xc0_negative(-1.0), DomainError);
    // too close to the cut: reported, not returned
    CHECK_THROWS_AS(t.xc0(Complex(10, -3)), AccuracyError);

    const auto& neg = t.xc0_negative_nodes();
    REQUIRE(neg.size() == t.size());
    for (std::size_t k : {0u, 300u, 480u, 700u})
        CHECK(neg[k] == doctest::Approx(t.xc0_negative(t.nodes()[k])).epsilon(1e-13));
}

TEST_CASE("xc0 on the negative axis: decay at the origin and 1 + b/t at infinity")
{
    auto& t = table75();
    // X(-tau) -> 0 as tau -> 0 and is positive
    double prev = 0;
    for (double tau = 1e-8; tau < 1e3; tau *= 10) {
        const double v = t.xc0_negative(tau);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(t.xc0_negative(1e-8) < 1e-2);
    // (1/pi) int theta0 = b_alpha
    const double b = b_alpha(a75);
    double last = 1.0;
    for (double tau : {1e2, 1e3, 1e4, 1e5, 1e6}) {
        const double r = std::abs(t.xc0_negative(tau) - 1 - b / tau) * tau;
        CHECK(r < last);
        last = r;
    }
    CHECK(last < 1e-3);
}

TEST_CASE("pv_weight against high precision values")
{
    auto& t = table75();
    // subtraction form: int (theta0(s) - theta0(t)) / (s^2 - t^2) ds
    CHECK(t.pv_weight(0.5) == doctest::Approx(0.74874925844454550382).epsilon(1e-12));
    CHECK(t.pv_weight(1.0) == doctest::Approx(0.71170045186825571364).epsilon(1e-12));
    CHECK(t.pv_weight(3.0) == doctest::Approx(0.79244390076580716063).epsilon(1e-12));
    CHECK(t.pv_weight(50.0) == doctest::Approx(0.97913749238714983835).epsilon(1e-12));
}

TEST_CASE("pv_weight is smooth between table nodes")
{
    auto& t = table75();
    const double base = t.pv_weight(1.0);
    for (double d : {1e-9, 1e-7, 1e-6, 1e-5, 1e-4}) {
        CHECK(std::abs(t.pv_weight(1.0 + d) - base) < 1e-3 * d + 1e-13);
    }
}

TEST_CASE("g0 and h0")
{
    auto& t = table75();
    for (double x : {1e-3, 0.2, 1.0, 5.0, 80.0}) {
        CHECK(t.g0(x) < 0.0);
        const double w = t.pv_weight(x);
        CHECK(t.g0(x) == doctest::Approx(std::pow(x, 0.75) * std::sin(theta0(x, a75)) * w).epsilon(1e-14));
        CHECK(t.h0(x) == doctest::Approx(std::pow(x, -0.75) * std::sin(theta0(x, a75) - 0.75 * pi) * w)
                             .epsilon(1e-10));
        CHECK(t.h0(x, true) == -t.h0(x));
        // g0 / h0 = t^{2a} sin(theta0) / sin(theta0 - a pi)
        CHECK(t.g0(x) / t.h0(x) == doctest::Approx(std::pow(x, 1.5) * std::sin(theta0(x, a75)) /
                                                   std::sin(theta0(x, a75) - 0.75 * pi))
                                       .epsilon(1e-10));
    }
    CHECK(t.g0(1.0) == doctest::Approx(-0.272355971736729).epsilon(1e-12));
}

TEST_CASE("save and load round trip; stale caches are rejected")
{
    PhaseTable a(a75);
    a.precompute();
    a.xc0(Complex(-1, 1));
    std::stringstream ss;
    a.save(ss);
    const std::string text = ss.str();

    PhaseTable b(a75);
    std::istringstream in(text);
    CHECK(b.load(in) == a.size() + a.cache_entries());
    CHECK(b.cache_entries() == a.cache_entries());
    CHECK(b.xc0(Complex(-1, 1)) == a.xc0(Complex(-1, 1)));
    CHECK(b.pv_weight(a.nodes()[400]) == a.pv_weight(a.nodes()[400]));

    // other alpha: nothing accepted
    PhaseTable c(FractionalOrder(0.8, Variant::RLBridge));
    std::istringstream in2(text);
    CHECK(c.load(in2) == 0);
    CHECK(c.cache_entries() == 0);

    // same alpha, different grid: theta0 records do not match
    PhaseTableOptions opts;
    opts.step = 0.25;
    PhaseTable d(a75, opts);
    std::istringstream in3(text);
    CHECK(d.load(in3) == 0);

    std::ostringstream again;
    b.save(again);
    CHECK(again.str() == text);
    CHECK(phase_cache_filename(0.75) == "phase_alpha_0.75.txt");
}

TEST_CASE("concurrent evaluation agrees with serial")
{
    PhaseTable shared(a75);
    std::vector<double> ts;
    for (int i = 1; i <= 40; ++i)
        ts.push_back(0.05 * i * i);
    std::vector<double> serial;
    {
        PhaseTable solo(a75);
        for (double x : ts)
            serial.push_back(solo.pv_weight(x) + solo.xc0(Complex(-x, 0)).real());
    }
    std::vector<double> par(ts.size());
    std::vector<std::thread> pool;
    for (int w = 0; w < 4; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = 0; i < ts.size(); ++i)
                if (i % 4 == static_cast<std::size_t>(w) || i % 3 == 0)
                    par[i] = shared.pv_weight(ts[i]) + shared.xc0(Complex(-ts[i], 0)).real();
        });
    for (auto& th : pool)
        th.join();
    for (std::size_t i = 0; i < ts.size(); ++i)
        CHECK(par[i] == serial[i]);
}
