#pragma once

#include <cstddef>
#include <vector>

namespace fracspec {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
QuadratureRule gauss_legendre(std::size_t n);

// n-point Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

// n-point Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b on [-1, 1],
// a, b > -1, by Golub-Welsch.
QuadratureRule gauss_jacobi(std::size_t n, double a, double b);

} // namespace fracspec
