#include "fracspec/quadrature.hpp"

#include "fracspec/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <utility>

namespace fracspec {

namespace {

// Returns P_n(x) and P_{n-1}(x).
std::pair<double, double> legendre(std::size_t n, double x)
{
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, p0};
}

} // namespace

QuadratureRule gauss_legendre(std::size_t n)
{
    if (n == 0)
        throw DomainError("gauss_legendre: n must be positive");
    QuadratureRule r;
    r.nodes.assign(n, 0.0);
    r.weights.assign(n, 0.0);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, q] = legendre(n, x);
            const double dp = n * (x * p - q) / (x * x - 1.0);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const auto [p, q] = legendre(n, x);
        const double dp = n * (x * p - q) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        r.nodes[n / 2] = 0.0;
    return r;
}

QuadratureRule gauss_legendre(std::size_t n, double a, double b)
{
    QuadratureRule r = gauss_legendre(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (std::size_t i = 0; i < n; ++i) {
        r.nodes[i] = c + h * r.nodes[i];
        r.weights[i] *= h;
    }
    return r;
}

QuadratureRule gauss_jacobi(std::size_t n, double a, double b)
{
    if (n == 0)
        throw DomainError("gauss_jacobi: n must be positive");
    if (!(a > -1.0 && b > -1.0))
        throw DomainError("gauss_jacobi: exponents must exceed -1");

    // Jacobi matrix of the monic recurrence.
    Eigen::VectorXd diag(n), sub(n > 1 ? n - 1 : 1);
    for (std::size_t k = 0; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        if (k == 0)
            diag[k] = (b - a) / (a + b + 2.0);
        else
            diag[k] = (b * b - a * a) / (s * (s + 2.0));
        if (k + 1 < n) {
            const double j = k + 1.0;
            const double t = 2.0 * j + a + b;
            // j = 1 written with (j + a + b) / (t - 1) cancelled.
            sub[k] = j == 1.0 ? std::sqrt(4.0 * (1.0 + a) * (1.0 + b) / (t * t * (t + 1.0)))
                              : std::sqrt(4.0 * j * (j + a) * (j + b) * (j + a + b) /
                                          (t * t * (t + 1.0) * (t - 1.0)));
        }
    }
    const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                                std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));

    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    if (n == 1) {
        r.nodes[0] = diag[0];
        r.weights[0] = mu0;
        return r;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("gauss_jacobi: tridiagonal eigensolver failed");
    for (std::size_t i = 0; i < n; ++i) {
        r.nodes[i] = es.eigenvalues()[i];
        const double v = es.eigenvectors()(0, i);
        r.weights[i] = mu0 * v * v;
    }
    return r;
}

} // namespace fracspec
