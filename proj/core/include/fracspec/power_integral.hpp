#pragma once

#include <vector>

namespace fracspec {

// P(s) = int_0^s w^a (1 + w)^b dw for s >= 0, a > -1, and a + b + 1 not a
// positive integer below the series length (the s > 8 branch divides by
// a + b + 1 - k).
class PowerIntegral {
public:
    PowerIntegral(double a, double b);

    double operator()(double s) const;

    double a() const { return a_; }
    double b() const { return b_; }

private:
    double head(double s) const;  // s <= 1
    double panels(double s) const; // 1 < s <= 8, excluding P(1)

    double a_, b_;
    std::vector<double> jx_, jw_;  // Gauss-Jacobi on [0,1], weight u^a
    std::vector<double> lx_, lw_;  // Gauss-Legendre on [0,1]
    std::vector<double> binom_;    // binom(b, k)
    double p1_ = 0.0, p8_ = 0.0;
};

} // namespace fracspec
