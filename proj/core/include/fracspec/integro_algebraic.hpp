#pragma once

#include "fracspec/spectral_kernels.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace fracspec {

struct IntegroOptions {
    // Trapezoid step in v = log(tau).
    double step = 0.125;
    // Grid covers tau in [exp(-lower_span/alpha) / rho_ref, upper_cutoff / rho_ref].
    double lower_span = 45.0;
    double upper_cutoff = 40.0;
    // Fixed-point stopping rule.
    double tolerance = 1e-12;
    int max_iterations = 100;
    // Use the jump coefficient -t^{-a} sin(theta0 - a pi) w(t) in place of
    // +t^{-a} sin(theta0 - a pi) w(t).  Off by default; see README.
    bool printed_jump_sign = false;
};

// Quadrature nodes for the operator A with g0, h0 sampled on them.  Built for
// a reference frequency and reusable for nearby rho.
struct IntegroGrid {
    double rho_ref;
    std::vector<double> tau;
    std::vector<double> weight; // step * tau
    std::vector<double> g0;
    std::vector<double> h0;
    std::size_t size() const { return tau.size(); }
};

IntegroGrid make_integro_grid(const PhaseTable& table, double rho_ref, const IntegroOptions& opts = {});

// Two real components sampled on the grid.
using GridPair = std::array<std::vector<double>, 2>;
using ComplexPair = std::array<Complex, 2>;

// (A f)(t) = (1/pi) int exp(-rho tau) / (tau + t) [[0, g0], [h0, 0]] f(tau) dtau
// at every grid node t.
GridPair apply_A(const GridPair& f, double rho, const IntegroGrid& grid);

enum class Forcing { P, Q, R };

struct PQRSolution {
    double rho = 0.0;
    GridPair p, q, r;
    bool converged = false;
    int iterations = 0;
    // Final sup-norm step and fixed-point residual of each system.
    std::array<double, 3> last_step{};
    std::array<double, 3> residual{};
};

// Fixed-point iteration f <- A f + F for F = (1,0), (0,1), (0,t).
// Throws ConvergenceError when a step grows after the first few iterations
// (the map is not contracting at this rho).
PQRSolution solve_pqr(double rho, const IntegroGrid& grid, const IntegroOptions& opts = {});

// Integral representation evaluated at z off (-inf, 0].
ComplexPair analytic_extend(const PQRSolution& sol, Forcing which, Complex z, const IntegroGrid& grid);

struct SecularValue {
    double rho;
    Complex xi;
    Complex eta;
    double condition; // Im(xi conj(eta))
};

SecularValue secular(double rho, const IntegroGrid& grid, const PhaseTable& table,
                     const IntegroOptions& opts = {});
SecularValue secular(const PQRSolution& sol, const IntegroGrid& grid, const PhaseTable& table);

struct IntegroRoot {
    std::size_t n;
    double rho;
    double rho_asym2;
    double condition_residual; // |Im(xi conj eta)| / (|xi| |eta|) at the root
    int iterations;            // fixed-point iterations at the root
    int sign_changes;          // in the bracket scan
    double c_ratio;            // c1 / c0
};

// Root of Im(xi conj eta) in [rho2 - pi/2, rho2 + pi/2], rho2 the second
// order asymptotic frequency.  Throws ConvergenceError if the bracket holds
// no sign change.
IntegroRoot refine_rho(std::size_t n, const PhaseTable& table, const IntegroOptions& opts = {});

// Number of sign changes of the secular condition on `samples` equal
// subintervals of the bracket for index n.
int count_bracket_roots(std::size_t n, const PhaseTable& table, int samples = 64,
                        const IntegroOptions& opts = {});

// c1/c0 = -Re(xi / eta).
double c_ratio(const SecularValue& s);
double c_ratio(double rho_n, const PhaseTable& table, const IntegroOptions& opts = {});

// Eigenfunction from the inverse Laplace representation at a secular root:
// an oscillatory residue term plus two Laplace-type boundary integrals.
// Normalized to unit L2 norm and sign aligned with the asymptotics.
class ExactEigenfunction {
public:
    ExactEigenfunction(double rho_n, const PhaseTable& table, const IntegroOptions& opts = {});

    double rho() const { return rho_; }
    double operator()(double x) const;
    std::vector<double> operator()(const std::vector<double>& xs) const;

private:
    double raw(double x) const;

    const PhaseTable* table_;
    double rho_;
    Complex osc_;                 // coefficient of exp(i rho x)
    std::vector<double> b0_, b1_; // node densities of the two boundary integrals
    double scale_ = 1.0;
};

double reconstruct_f_exact(double x, double rho_n, const PhaseTable& table, const IntegroOptions& opts = {});

// CSV "n,rho_refined,rho_asym2,condition_residual,iterations".
void write_integro_csv(std::ostream& out, const std::vector<IntegroRoot>& roots);

} // namespace fracspec
