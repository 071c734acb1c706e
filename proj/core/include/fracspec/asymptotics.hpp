#pragma once

#include "fracspec/fractional_order.hpp"
#include "fracspec/spectral_kernels.hpp"

#include <cstddef>
#include <vector>

namespace fracspec {

enum class AsymptoticOrder { First, Second };

// RLBridge: First = pi n, Second = pi n + (pi/2)(1 - 1/a).
// Caputo: pi n - pi/2 for both orders (only one correction is known).
double rho_asymptotic(std::size_t n, const FractionalOrder& order, AsymptoticOrder which = AsymptoticOrder::Second);

// rho_asymptotic^{2a}.
double lambda_asymptotic(std::size_t n, const FractionalOrder& order,
                         AsymptoticOrder which = AsymptoticOrder::Second);

// (pi n)^{2a} + pi (a - 1) (pi n)^{2a-1}, the additive two-term form.
double lambda_two_term(std::size_t n, const FractionalOrder& order);

// sum_{k >= first} 1 / lambda_asymptotic(k) (Euler-Maclaurin), the part of
// the operator trace carried by eigenvalues a finite discretization omits.
double inverse_lambda_tail(std::size_t first, const FractionalOrder& order);

struct AsymptoticEigenpair {
    std::size_t n;
    AsymptoticOrder which;
    double rho;
    double lambda;
};

AsymptoticEigenpair asymptotic_pair(std::size_t n, const FractionalOrder& order,
                                    AsymptoticOrder which = AsymptoticOrder::Second);

// Boundary-layer densities.
//   U0(t) = (sqrt(2a)/pi) (X(-t)/t) sin(theta0 - a pi) / gamma0
//   U1(t) = (sqrt(2a)/pi) t^a (b - t)/sqrt(b^2+1) (X(-t)/t) sin(theta0) / gamma0
double upsilon0(double t, const PhaseTable& table);
double upsilon1(double t, const PhaseTable& table);

enum class LayerEnd { AtZero, AtOne };

// int_0^inf U_j(t) exp(-rho t d) dt with d = x (AtZero, U0) or 1 - x (AtOne, U1).
double boundary_layer(double x, double rho, LayerEnd end, const PhaseTable& table);

// Same integral with |U_j| in place of U_j.
double boundary_layer_abs(double x, double rho, LayerEnd end, const PhaseTable& table);

// f_n(x) = sqrt2 sin(rho x + pi(1-a)/4) + layers, with second-order rho.
// The table may be null when alpha = 1 or when layers are off.
class EigenfunctionApprox {
public:
    EigenfunctionApprox(std::size_t n, const FractionalOrder& order, const PhaseTable* table,
                        bool include_layers);

    double operator()(double x) const;
    std::vector<double> operator()(const std::vector<double>& xs) const;

    const AsymptoticEigenpair& pair() const { return pair_; }
    bool include_layers() const { return layers_; }

private:
    AsymptoticEigenpair pair_;
    FractionalOrder order_;
    const PhaseTable* table_;
    bool layers_;
    // Node densities h t_k U_j(t_k) and tail amplitudes.
    std::vector<double> d0_, d1_;
    double tail0_ = 0.0, tail1_ = 0.0;
    double sign1_ = 1.0;
};

double eigenfunction_asymptotic(std::size_t n, double x, const FractionalOrder& order, bool include_layers,
                                const PhaseTable* table);

} // namespace fracspec
