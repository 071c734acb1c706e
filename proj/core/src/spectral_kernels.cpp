#include "fracspec/spectral_kernels.hpp"

#include "fracspec/error.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace fracspec {

namespace {

constexpr double pi = std::numbers::pi;

void require_bridge_order(const FractionalOrder& order, const char* who)
{
    if (order.variant() != Variant::RLBridge)
        throw DomainError(std::string(who) + ": defined only for the rl-bridge variant");
}

void require_positive(double t, const char* who)
{
    if (!(t > 0.0) || !std::isfinite(t))
        throw DomainError(std::string(who) + ": argument must be positive and finite");
}

} // namespace

double theta0(double t, const FractionalOrder& order)
{
    require_bridge_order(order, "theta0");
    require_positive(t, "theta0");
    const double a = order.alpha();
    const double T = std::pow(t, 2.0 * a);
    return -std::atan(std::sin(a * pi) / (T - std::cos(a * pi)));
}

double theta0_offset(double t, const FractionalOrder& order)
{
    require_bridge_order(order, "theta0_offset");
    require_positive(t, "theta0_offset");
    const double a = order.alpha();
    const double T = std::pow(t, 2.0 * a);
    return std::atan(std::sin(a * pi) * T / (1.0 - std::cos(a * pi) * T));
}

double theta0_derivative(double t, const FractionalOrder& order)
{
    require_bridge_order(order, "theta0_derivative");
    require_positive(t, "theta0_derivative");
    const double a = order.alpha();
    const double s = std::sin(a * pi), c = std::cos(a * pi);
    const double T = std::pow(t, 2.0 * a);
    return s * 2.0 * a * T / t / ((T - c) * (T - c) + s * s);
}

double gamma0(double t, const FractionalOrder& order)
{
    require_positive(t, "gamma0");
    const double a = order.alpha();
    const double T = std::pow(t, 2.0 * a);
    return std::sqrt(T - 2.0 * std::cos(a * pi) + 1.0 / T);
}

double b_alpha(const FractionalOrder& order)
{
    const double a = order.alpha();
    if (!(a > 0.5 && a <= 1.0))
        throw DomainError("b_alpha: alpha must lie in (1/2, 1]");
    if (order.is_classical())
        return 0.0;
    const double x = pi / (2.0 * a);
    return std::cos(x) / std::sin(x);
}

PhaseTable::PhaseTable(const FractionalOrder& order, PhaseTableOptions opts)
    : order_(order), opts_(opts)
{
    require_bridge_order(order, "PhaseTable");
    if (order.is_classical())
        throw DomainError("PhaseTable: alpha must lie strictly inside (1/2, 1)");
    if (!(opts.step > 0.0) || !(opts.u_max > 0.0) || !(opts.tolerance > 0.0))
        throw DomainError("PhaseTable: step, u_max and tolerance must be positive");

    // Even number of intervals so the doubled-step rule shares the end nodes.
    std::size_t intervals = static_cast<std::size_t>(std::llround(2.0 * opts.u_max / opts.step));
    intervals += intervals % 2;
    const double h = opts.step;
    t_.resize(intervals + 1);
    theta_.resize(intervals + 1);
    eps_.resize(intervals + 1);
    w_.resize(intervals + 1);
    for (std::size_t k = 0; k <= intervals; ++k) {
        const double u = -0.5 * h * static_cast<double>(intervals) + h * static_cast<double>(k);
        t_[k] = std::exp(u);
        theta_[k] = theta0(t_[k], order_);
        eps_[k] = theta0_offset(t_[k], order_);
        w_[k] = h * t_[k];
    }
    w_.front() *= 0.5;
    w_.back() *= 0.5;
}

Complex PhaseTable::xc0_uncached(Complex z) const
{
    if (z.imag() == 0.0 && z.real() >= 0.0)
        throw DomainError("xc0: z lies on the cut [0, inf)");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("xc0: z must be finite");

    // theta0 - theta0(0+)/(1+t) decays at both ends of the u-range for every
    // z, so the trapezoid sum needs no end corrections; the subtracted part
    // integrates to -log(-z)/(1+z).
    const double jump = (alpha() - 1.0) * pi;
    Complex fine = 0.0, coarse = 0.0;
    const std::size_t n = t_.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double tk = t_[k];
        const double rest = tk < 1.0 ? eps_[k] + jump * tk / (1.0 + tk) : theta_[k] - jump / (1.0 + tk);
        const Complex term = w_[k] * rest / (tk - z);
        fine += term;
        if (k % 2 == 0)
            coarse += 2.0 * term;
    }
    const Complex d = 1.0 + z;
    Complex sub;
    if (std::abs(d) < 1e-3) {
        // -log(1-d)/d = 1 + d/2 + d^2/3 + ...
        sub = 0.0;
        Complex dk = 1.0;
        for (int k = 1; k <= 8; ++k) {
            sub += dk / static_cast<double>(k);
            dk *= d;
        }
    } else {
        sub = -std::log(-z) / d;
    }
    const Complex subtracted = jump * sub;
    const double err = std::abs(fine - coarse) / pi;
    if (err > opts_.tolerance) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "xc0(%.6g%+.6gi): quadrature error estimate %.3g exceeds %.3g",
                      z.real(), z.imag(), err, opts_.tolerance);
        throw AccuracyError(buf);
    }
    return std::exp((fine + subtracted) / pi);
}

Complex PhaseTable::xc0(Complex z) const
{
    const ComplexKey key{z.real(), z.imag()};
    {
        std::lock_guard lock(mu_);
        if (auto it = xc0_cache_.find(key); it != xc0_cache_.end())
            return it->second;
    }
    const Complex v = xc0_uncached(z);
    std::lock_guard lock(mu_);
    xc0_cache_.emplace(key, v);
    return v;
}

double PhaseTable::xc0_negative(double tau) const
{
    require_positive(tau, "xc0_negative");
    return xc0(Complex(-tau, 0.0)).real();
}

const std::vector<double>& PhaseTable::xc0_negative_nodes() const
{
    std::call_once(neg_once_, [this] {
        std::vector<double> v(t_.size());
        for (std::size_t k = 0; k < t_.size(); ++k)
            v[k] = xc0_negative(t_[k]);
        xc0_neg_ = std::move(v);
    });
    return xc0_neg_;
}

double PhaseTable::pv_weight_uncached(double t) const
{
    require_positive(t, "pv_weight");
    const double eps_t = theta0_offset(t, order_);
    const double near = theta0_derivative(t, order_) / (2.0 * t);
    double fine = 0.0, coarse = 0.0;
    const std::size_t n = t_.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double tk = t_[k];
        double f;
        if (tk == t) {
            f = near;
        } else if (std::abs(tk - t) < 1e-5 * t) {
            // midpoint slope, O(d^2)
            f = theta0_derivative(0.5 * (tk + t), order_) / (tk + t);
        } else {
            // Offsets keep full precision where theta0 is near (a-1) pi.
            f = (eps_[k] - eps_t) / ((tk - t) * (tk + t));
        }
        const double term = w_[k] * f;
        fine += term;
        if (k % 2 == 0)
            coarse += 2.0 * term;
    }
    const double scale = 2.0 * t / pi;
    const double err = scale * std::abs(fine - coarse);
    if (err > opts_.tolerance) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "pv_weight(%.6g): quadrature error estimate %.3g exceeds %.3g", t,
                      err, opts_.tolerance);
        throw AccuracyError(buf);
    }
    return std::exp(-scale * fine);
}

double PhaseTable::pv_weight(double t) const
{
    {
        std::lock_guard lock(mu_);
        if (auto it = pv_cache_.find(t); it != pv_cache_.end())
            return it->second;
    }
    const double v = pv_weight_uncached(t);
    std::lock_guard lock(mu_);
    pv_cache_.emplace(t, v);
    return v;
}

double PhaseTable::g0(double t) const
{
    require_positive(t, "g0");
    return std::pow(t, alpha()) * std::sin(theta0(t, order_)) * pv_weight(t);
}

double PhaseTable::h0(double t, bool printed_sign) const
{
    require_positive(t, "h0");
    // sin(theta0 - a pi) = -sin(offset).
    const double v = -std::pow(t, -alpha()) * std::sin(theta0_offset(t, order_)) * pv_weight(t);
    return printed_sign ? -v : v;
}

std::size_t PhaseTable::cache_entries() const
{
    std::lock_guard lock(mu_);
    return xc0_cache_.size() + pv_cache_.size();
}

void PhaseTable::precompute() const
{
    xc0(Complex(0.0, 1.0));
    xc0(Complex(0.0, -1.0));
    xc0_negative_nodes();
    for (double t : t_)
        pv_weight(t);
}

} // namespace fracspec
