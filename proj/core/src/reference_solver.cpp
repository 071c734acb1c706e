#include "fracspec/reference_solver.hpp"

#include "fracspec/error.hpp"
#include "fracspec/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

namespace fracspec {

namespace {

void require_unit(double x, const char* who)
{
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError(std::string(who) + ": argument outside [0, 1]");
}

} // namespace

KernelEvaluator::KernelEvaluator(const KernelSpec& spec) : spec_(spec), a_(spec.order.alpha())
{
    if (spec.kind == KernelKind::Bridge && !(a_ > 0.5))
        throw DomainError("bridge kernel requires alpha in (1/2, 1]");
    if (spec.order.is_classical()) {
        inv_g2_ = 1.0;
        k11_ = 1.0;
        r1_ = 0.5;
        return;
    }
    const double g = std::tgamma(a_);
    inv_g2_ = 1.0 / (g * g);
    k11_ = a_ > 0.5 ? inv_g2_ / (2.0 * a_ - 1.0) : std::numeric_limits<double>::infinity();
    r1_ = inv_g2_ / (2.0 * a_ * a_);
    pk_.emplace(a_ - 1.0, a_ - 1.0);
    prow_.emplace(a_ - 1.0, a_);
}

double KernelEvaluator::rl_standard(double x, double y) const
{
    const double lo = std::min(x, y), hi = std::max(x, y);
    if (spec_.order.is_classical())
        return lo;
    const double d = hi - lo;
    if (d == 0.0) {
        if (!(a_ > 0.5))
            throw DomainError("kernel diagonal requires alpha > 1/2");
        return std::pow(lo, 2.0 * a_ - 1.0) / (2.0 * a_ - 1.0) * inv_g2_;
    }
    if (lo == 0.0)
        return 0.0;
    // u = lo - t, w = u / d.
    return std::pow(d, 2.0 * a_ - 1.0) * (*pk_)(lo / d) * inv_g2_;
}

double KernelEvaluator::rl_printed(double x, double y) const
{
    const double lo = std::min(x, y);
    if (spec_.order.is_classical())
        return lo;
    const double inner = (std::pow(y, a_) - std::pow(y - lo, a_)) / a_;
    return std::pow(std::abs(x - y), a_ - 1.0) * inner * inv_g2_;
}

double KernelEvaluator::rl(double x, double y) const
{
    require_unit(x, "kernel");
    require_unit(y, "kernel");
    return spec_.form == KernelForm::Standard ? rl_standard(x, y) : rl_printed(x, y);
}

double KernelEvaluator::bridge(double x, double y) const
{
    const double k11 = spec_.form == KernelForm::Standard ? k11_ : rl(1.0, 1.0);
    return rl(x, y) - rl(x, 1.0) * rl(1.0, y) / k11;
}

double KernelEvaluator::operator()(double x, double y) const
{
    return spec_.kind == KernelKind::RL ? rl(x, y) : bridge(x, y);
}

double KernelEvaluator::rl_row(double x) const
{
    if (spec_.order.is_classical())
        return x - 0.5 * x * x;
    const double e = 1.0 - x;
    if (e == 0.0)
        return r1_;
    if (x == 0.0)
        return 0.0;
    return std::pow(e, 2.0 * a_) * (*prow_)(x / e) * inv_g2_ / a_;
}

double KernelEvaluator::row_integral(double x) const
{
    require_unit(x, "row_integral");
    if (spec_.form != KernelForm::Standard && !spec_.order.is_classical())
        throw DomainError("row_integral: available for the standard kernel form only");
    if (spec_.kind == KernelKind::RL)
        return rl_row(x);
    return rl_row(x) - rl_standard(x, 1.0) * r1_ / k11_;
}

double KernelEvaluator::trace_integral() const
{
    if (spec_.form != KernelForm::Standard && !spec_.order.is_classical())
        throw DomainError("trace_integral: available for the standard kernel form only");
    if (!(a_ > 0.5))
        throw DomainError("trace_integral: requires alpha > 1/2");
    const double rl_trace = spec_.order.is_classical() ? 0.5 : inv_g2_ / (2.0 * a_ * (2.0 * a_ - 1.0));
    if (spec_.kind == KernelKind::RL)
        return rl_trace;
    // int_0^1 K(x,1)^2 dx on panels graded toward both ends.
    const QuadratureRule gl = gauss_legendre(20, 0.0, 1.0);
    double acc = 0.0;
    auto panel = [&](double lo, double hi) {
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double x = lo + (hi - lo) * gl.nodes[i];
            const double k = rl_standard(x, 1.0);
            acc += (hi - lo) * gl.weights[i] * k * k;
        }
    };
    for (int j = 1; j < 60; ++j) {
        const double lo = std::ldexp(1.0, -j - 1), hi = std::ldexp(1.0, -j);
        panel(lo, hi);
        panel(1.0 - hi, 1.0 - lo);
    }
    return rl_trace - acc / k11_;
}

double kernel_K(double x, double y, const FractionalOrder& order, KernelForm form)
{
    return KernelEvaluator({order, KernelKind::RL, form}).rl(x, y);
}

double kernel_bridge(double x, double y, const FractionalOrder& order)
{
    return KernelEvaluator({order, KernelKind::Bridge, KernelForm::Standard}).bridge(x, y);
}

NystromGrid build_grid(std::size_t m)
{
    if (m < 2)
        throw DomainError("build_grid: m must be at least 2");
    const QuadratureRule gl = gauss_legendre(m, 0.0, 1.0);
    return NystromGrid{gl.nodes, gl.weights};
}

DiscreteSpectrum::DiscreteSpectrum(KernelSpec spec, NystromGrid grid, std::vector<double> mu,
                                   Eigen::MatrixXd vectors, std::vector<double> correction)
    : spec_(std::move(spec)), grid_(std::move(grid)), mu_(std::move(mu)), vectors_(std::move(vectors)),
      correction_(std::move(correction))
{
}

double DiscreteSpectrum::mu(std::size_t k) const
{
    if (k < 1 || k > mu_.size())
        throw DomainError("eigenvalue index out of range");
    return mu_[k - 1];
}

double DiscreteSpectrum::lambda(std::size_t k) const { return 1.0 / mu(k); }

double DiscreteSpectrum::rho(std::size_t k) const
{
    return std::pow(lambda(k), 1.0 / (2.0 * spec_.order.alpha()));
}

std::vector<double> DiscreteSpectrum::node_values(std::size_t k) const
{
    mu(k);
    std::vector<double> f(grid_.m());
    for (std::size_t j = 0; j < f.size(); ++j)
        f[j] = vectors_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k - 1)) /
               std::sqrt(grid_.weights[j]);
    return f;
}

double DiscreteSpectrum::orthonormality_defect() const
{
    const Eigen::MatrixXd g = vectors_.transpose() * vectors_;
    return (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

DiscreteSpectrum discretize_and_solve(const KernelSpec& spec, const NystromGrid& grid)
{
    if (spec.form == KernelForm::LiteralPrinted && !spec.order.is_classical())
        throw DomainError("the literal printed kernel form is not symmetric and is infinite on the "
                          "diagonal; it cannot be discretized symmetrically");
    if (!(spec.order.alpha() > 0.5))
        throw DomainError("discretize_and_solve: requires alpha > 1/2");
    const KernelEvaluator ev(spec);
    const std::size_t m = grid.m();
    const auto& x = grid.nodes;
    const auto& w = grid.weights;

    Eigen::MatrixXd b(m, m);
    std::vector<double> rowsum(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = j; i < m; ++i) {
            const double k = ev(x[i], x[j]);
            b(i, j) = k;
            rowsum[i] += w[j] * k;
            if (i != j)
                rowsum[j] += w[i] * k;
        }
    }
    // Singularity subtraction: the exact row integral replaces the
    // quadrature of each row, which lands on the diagonal only.
    std::vector<double> corr(m);
    for (std::size_t i = 0; i < m; ++i)
        corr[i] = ev.row_integral(x[i]) - rowsum[i];
    for (std::size_t j = 0; j < m; ++j) {
        const double sj = std::sqrt(w[j]);
        for (std::size_t i = j; i < m; ++i)
            b(i, j) *= std::sqrt(w[i]) * sj;
        b(j, j) += corr[j];
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("symmetric eigensolver did not converge");
    const Eigen::VectorXd& evals = es.eigenvalues();
    const double top = evals[static_cast<Eigen::Index>(m) - 1];
    if (evals[0] < -1e-10 * top) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "discrete operator not positive semidefinite: mu_min=%.3e mu_max=%.3e",
                      evals[0], top);
        throw AccuracyError(buf);
    }

    std::vector<double> mu;
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = static_cast<Eigen::Index>(m) - 1; i >= 0; --i) {
        if (evals[i] > 0.0) {
            mu.push_back(evals[i]);
            cols.push_back(i);
        }
    }
    const double a = spec.order.alpha();
    Eigen::MatrixXd vecs(m, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        Eigen::VectorXd v = es.eigenvectors().col(cols[c]);
        // Positive on the first quarter oscillation near x = 0.
        const double cut = std::numbers::pi / (2.0 * std::pow(1.0 / mu[c], 1.0 / (2.0 * a)));
        double s = 0.0;
        for (std::size_t j = 0; j < m && (x[j] < cut || j == 0); ++j)
            s += std::sqrt(w[j]) * v[static_cast<Eigen::Index>(j)];
        if (s < 0.0)
            v = -v;
        vecs.col(static_cast<Eigen::Index>(c)) = v;
    }
    return DiscreteSpectrum(spec, grid, std::move(mu), std::move(vecs), std::move(corr));
}

std::vector<double> eigenfunction_at(const DiscreteSpectrum& s, std::size_t k, const std::vector<double>& xs)
{
    const double mu = s.mu(k);
    const std::vector<double> f = s.node_values(k);
    const KernelEvaluator ev(s.spec());
    const auto& gx = s.grid().nodes;
    const auto& gw = s.grid().weights;
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        require_unit(x, "eigenfunction_at");
        double num = 0.0, quad_row = 0.0;
        for (std::size_t j = 0; j < gx.size(); ++j) {
            const double kv = gw[j] * ev(x, gx[j]);
            num += kv * f[j];
            quad_row += kv;
        }
        const double d = ev.row_integral(x) - quad_row;
        out.push_back(num / (mu - d));
    }
    return out;
}

double eigenfunction_at(const DiscreteSpectrum& s, std::size_t k, double x)
{
    return eigenfunction_at(s, k, std::vector<double>{x}).front();
}

double caputo_endpoint_value(const DiscreteSpectrum& s, std::size_t n)
{
    if (s.spec().kind != KernelKind::RL)
        throw DomainError("caputo_endpoint_value: needs the RL kernel spectrum");
    return std::abs(eigenfunction_at(s, n, 1.0));
}

double caputo_endpoint_value(double alpha, std::size_t n, std::size_t m)
{
    const KernelSpec spec{make_order(alpha, Variant::Caputo), KernelKind::RL, KernelForm::Standard};
    return caputo_endpoint_value(discretize_and_solve(spec, build_grid(m)), n);
}

void write_spectrum_csv(std::ostream& out, const DiscreteSpectrum& s, std::size_t count)
{
    out << "k,mu,lambda,rho\n";
    char buf[128];
    for (std::size_t k = 1; k <= std::min(count, s.size()); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.12e,%.12e,%.12e\n", k, s.mu(k), s.lambda(k), s.rho(k));
        out << buf;
    }
}

} // namespace fracspec
