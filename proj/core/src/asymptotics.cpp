#include "fracspec/asymptotics.hpp"

#include "fracspec/error.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

namespace fracspec {

namespace {

constexpr double pi = std::numbers::pi;

void require_index(std::size_t n)
{
    if (n < 1)
        throw DomainError("eigenvalue index must be at least 1");
}

// int_1^inf v^{-p} exp(-s v) dv for 1 < p < 2.
double power_exp_tail(double p, double s)
{
    if (s == 0.0)
        return 1.0 / (p - 1.0);
    if (s > 50.0)
        return 0.0;
    // Gamma(1-p, s) by one step of the recurrence from Gamma(2-p, s).
    const double g = boost::math::tgamma(2.0 - p, s);
    return std::pow(s, p - 1.0) * (g - std::pow(s, 1.0 - p) * std::exp(-s)) / (1.0 - p);
}

struct LayerData {
    std::vector<double> u0, u1; // U_j(t_k)
    double p0, p1;              // tail exponents
};

LayerData layer_data(const PhaseTable& table)
{
    const double a = table.alpha();
    const FractionalOrder& order = table.order();
    const double b = b_alpha(order);
    const double c0 = std::sqrt(2.0 * a) / pi;
    const double c1 = c0 / std::sqrt(b * b + 1.0);
    const auto& t = table.nodes();
    const auto& th = table.theta0_values();
    const auto& xn = table.xc0_negative_nodes();
    LayerData d;
    d.u0.resize(t.size());
    d.u1.resize(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double g = gamma0(t[k], order);
        const double xt = xn[k] / t[k];
        d.u0[k] = -c0 * xt * std::sin(theta0_offset(t[k], order)) / g;
        d.u1[k] = c1 * std::pow(t[k], a) * (b - t[k]) * xt * std::sin(th[k]) / g;
    }
    d.p0 = 1.0 + a;
    d.p1 = 2.0 * a;
    return d;
}

double layer_sum(const std::vector<double>& u, double p, double sigma, const PhaseTable& table, bool absolute)
{
    const auto& t = table.nodes();
    const auto& w = table.weights();
    double acc = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double e = sigma * t[k];
        if (e > 745.0)
            break;
        acc += w[k] * (absolute ? std::abs(u[k]) : u[k]) * std::exp(-e);
    }
    const double tk = t.back();
    const double amp = (absolute ? std::abs(u.back()) : u.back()) * std::pow(tk, p);
    return acc + amp * std::pow(tk, 1.0 - p) * power_exp_tail(p, sigma * tk);
}

double layer(double x, double rho, LayerEnd end, const PhaseTable& table, bool absolute)
{
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("boundary_layer: x outside [0, 1]");
    if (!(rho > 0.0))
        throw DomainError("boundary_layer: rho must be positive");
    const LayerData d = layer_data(table);
    const double dist = end == LayerEnd::AtZero ? x : 1.0 - x;
    return end == LayerEnd::AtZero ? layer_sum(d.u0, d.p0, rho * dist, table, absolute)
                                   : layer_sum(d.u1, d.p1, rho * dist, table, absolute);
}

} // namespace

double rho_asymptotic(std::size_t n, const FractionalOrder& order, AsymptoticOrder which)
{
    require_index(n);
    const double pn = pi * static_cast<double>(n);
    if (order.variant() == Variant::Caputo)
        return pn - 0.5 * pi;
    if (which == AsymptoticOrder::First)
        return pn;
    return pn + 0.5 * pi * (1.0 - 1.0 / order.alpha());
}

double lambda_asymptotic(std::size_t n, const FractionalOrder& order, AsymptoticOrder which)
{
    return std::pow(rho_asymptotic(n, order, which), 2.0 * order.alpha());
}

double lambda_two_term(std::size_t n, const FractionalOrder& order)
{
    require_index(n);
    const double a = order.alpha();
    const double pn = pi * static_cast<double>(n);
    return std::pow(pn, 2.0 * a) + pi * (a - 1.0) * std::pow(pn, 2.0 * a - 1.0);
}

double inverse_lambda_tail(std::size_t first, const FractionalOrder& order)
{
    require_index(first);
    const double p = 2.0 * order.alpha();
    const double r = rho_asymptotic(first, order);
    const double f = std::pow(r, -p);
    const double df = -p * pi * std::pow(r, -p - 1.0);
    return std::pow(r, 1.0 - p) / (pi * (p - 1.0)) + 0.5 * f - df / 12.0;
}

AsymptoticEigenpair asymptotic_pair(std::size_t n, const FractionalOrder& order, AsymptoticOrder which)
{
    const double rho = rho_asymptotic(n, order, which);
    return {n, which, rho, std::pow(rho, 2.0 * order.alpha())};
}

double upsilon0(double t, const PhaseTable& table)
{
    const FractionalOrder& order = table.order();
    const double a = order.alpha();
    return -std::sqrt(2.0 * a) / pi * table.xc0_negative(t) / t * std::sin(theta0_offset(t, order)) /
           gamma0(t, order);
}

double upsilon1(double t, const PhaseTable& table)
{
    const FractionalOrder& order = table.order();
    const double a = order.alpha();
    const double b = b_alpha(order);
    return std::sqrt(2.0 * a) / pi * std::pow(t, a) * (b - t) / std::sqrt(b * b + 1.0) * table.xc0_negative(t) /
           t * std::sin(theta0(t, order)) / gamma0(t, order);
}

double boundary_layer(double x, double rho, LayerEnd end, const PhaseTable& table)
{
    return layer(x, rho, end, table, false);
}

double boundary_layer_abs(double x, double rho, LayerEnd end, const PhaseTable& table)
{
    return layer(x, rho, end, table, true);
}

EigenfunctionApprox::EigenfunctionApprox(std::size_t n, const FractionalOrder& order, const PhaseTable* table,
                                         bool include_layers)
    : pair_(asymptotic_pair(n, order)), order_(order), table_(table), layers_(include_layers)
{
    if (order.variant() == Variant::Caputo)
        throw DomainError("eigenfunction asymptotics are available for the rl-bridge variant only");
    sign1_ = n % 2 == 0 ? 1.0 : -1.0;
    if (!layers_ || order.is_classical())
        return;
    if (table_ == nullptr)
        throw DomainError("boundary layers need a phase table");
    if (table_->alpha() != order.alpha())
        throw DomainError("phase table built for a different alpha");
    const LayerData d = layer_data(*table_);
    const auto& w = table_->weights();
    d0_.resize(w.size());
    d1_.resize(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        d0_[k] = w[k] * d.u0[k];
        d1_[k] = w[k] * d.u1[k];
    }
    const double tk = table_->nodes().back();
    tail0_ = d.u0.back() * tk;      // amp * tk^{1-p} with amp = u tk^p
    tail1_ = d.u1.back() * tk;
}

double EigenfunctionApprox::operator()(double x) const
{
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("eigenfunction_asymptotic: x outside [0, 1]");
    const double a = order_.alpha();
    const double rho = pair_.rho;
    double f = std::sqrt(2.0) * std::sin(rho * x + 0.25 * pi * (1.0 - a));
    if (d0_.empty())
        return f;
    const auto& t = table_->nodes();
    const double tk = t.back();
    auto sum = [&](const std::vector<double>& d, double tail, double p, double dist) {
        const double sigma = rho * dist;
        double acc = 0.0;
        for (std::size_t k = 0; k < t.size(); ++k) {
            const double e = sigma * t[k];
            if (e > 745.0)
                break;
            acc += d[k] * std::exp(-e);
        }
        return acc + tail * power_exp_tail(p, sigma * tk);
    };
    f += sum(d0_, tail0_, 1.0 + a, x);
    f += sign1_ * sum(d1_, tail1_, 2.0 * a, 1.0 - x);
    return f;
}

std::vector<double> EigenfunctionApprox::operator()(const std::vector<double>& xs) const
{
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs)
        out.push_back((*this)(x));
    return out;
}

double eigenfunction_asymptotic(std::size_t n, double x, const FractionalOrder& order, bool include_layers,
                                const PhaseTable* table)
{
    return EigenfunctionApprox(n, order, table, include_layers)(x);
}

} // namespace fracspec
