#include "fracspec/power_integral.hpp"

#include "fracspec/error.hpp"
#include "fracspec/quadrature.hpp"

#include <cmath>

namespace fracspec {

namespace {

constexpr int jacobi_nodes = 24;
constexpr int legendre_nodes = 20;
constexpr int series_terms = 24;
constexpr double series_start = 8.0;

} // namespace

PowerIntegral::PowerIntegral(double a, double b) : a_(a), b_(b)
{
    if (!(a > -1.0))
        throw DomainError("PowerIntegral: a must exceed -1");

    // Weight (1+x)^a on [-1,1] mapped to u^a on [0,1].
    const QuadratureRule gj = gauss_jacobi(jacobi_nodes, 0.0, a);
    const double scale = std::pow(0.5, a + 1.0);
    for (std::size_t i = 0; i < gj.nodes.size(); ++i) {
        jx_.push_back(0.5 * (gj.nodes[i] + 1.0));
        jw_.push_back(gj.weights[i] * scale);
    }
    const QuadratureRule gl = gauss_legendre(legendre_nodes, 0.0, 1.0);
    lx_ = gl.nodes;
    lw_ = gl.weights;

    binom_.resize(series_terms);
    binom_[0] = 1.0;
    for (int k = 1; k < series_terms; ++k)
        binom_[k] = binom_[k - 1] * (b - (k - 1)) / k;

    p1_ = head(1.0);
    p8_ = p1_ + panels(series_start);
}

double PowerIntegral::head(double s) const
{
    // s^{a+1} int_0^1 u^a (1 + s u)^b du
    double acc = 0.0;
    for (std::size_t i = 0; i < jx_.size(); ++i)
        acc += jw_[i] * std::pow(1.0 + s * jx_[i], b_);
    return std::pow(s, a_ + 1.0) * acc;
}

double PowerIntegral::panels(double s) const
{
    double acc = 0.0;
    for (double lo = 1.0; lo < s; lo *= 2.0) {
        const double hi = std::min(2.0 * lo, s);
        const double len = hi - lo;
        for (std::size_t i = 0; i < lx_.size(); ++i) {
            const double w = lo + len * lx_[i];
            acc += len * lw_[i] * std::pow(w, a_) * std::pow(1.0 + w, b_);
        }
    }
    return acc;
}

double PowerIntegral::operator()(double s) const
{
    if (!(s >= 0.0))
        throw DomainError("PowerIntegral: s must be nonnegative");
    if (s == 0.0)
        return 0.0;
    if (std::isinf(s))
        throw DomainError("PowerIntegral: s must be finite");
    if (s <= 1.0)
        return head(s);
    if (s <= series_start)
        return p1_ + panels(s);

    // w^a (1+w)^b = sum_k binom(b,k) w^{c-1-k}, c = a + b + 1, for w > 1.
    const double c = a_ + b_ + 1.0;
    const double L = std::log(s / series_start);
    double acc = 0.0;
    for (int k = 0; k < series_terms; ++k) {
        const double e = c - k;
        // int_8^s w^{e-1} dw = 8^e (exp(e L) - 1) / e, written to stay
        // accurate as e -> 0.
        const double piece = e == 0.0 ? L : std::pow(series_start, e) * std::expm1(e * L) / e;
        acc += binom_[k] * piece;
    }
    return p8_ + acc;
}

} // namespace fracspec
