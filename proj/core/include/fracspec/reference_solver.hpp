#pragma once

#include "fracspec/fractional_order.hpp"
#include "fracspec/power_integral.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace fracspec {

// RL: covariance of the Riemann-Liouville process,
//   K(x,y) = Gamma(a)^{-2} int_0^{min(x,y)} (x-t)^{a-1} (y-t)^{a-1} dt,
// whose eigenproblem is equivalent to the Caputo variant.
// Bridge: K(x,y) - K(x,1) K(1,y) / K(1,1), equivalent to the RL problem.
enum class KernelKind { RL, Bridge };

// Standard is the covariance above.  LiteralPrinted replaces (x-t)^{a-1}
// by |x-y|^{a-1}; it is neither symmetric nor finite on the diagonal and
// exists only to show that the checks tell the two forms apart.
enum class KernelForm { Standard, LiteralPrinted };

struct KernelSpec {
    FractionalOrder order;
    KernelKind kind = KernelKind::Bridge;
    KernelForm form = KernelForm::Standard;
};

// Pointwise kernel evaluation with the per-alpha setup done once.
class KernelEvaluator {
public:
    explicit KernelEvaluator(const KernelSpec& spec);

    const KernelSpec& spec() const { return spec_; }

    // RL covariance K(x, y).
    double rl(double x, double y) const;
    // Bridge kernel.
    double bridge(double x, double y) const;
    // Kernel selected by spec.kind.
    double operator()(double x, double y) const;

    // int_0^1 K(x, y) dy for the selected kind (Standard form only).
    double row_integral(double x) const;
    // int_0^1 K(x, x) dx for the selected kind.
    double trace_integral() const;

    double k11() const { return k11_; }

private:
    double rl_standard(double x, double y) const;
    double rl_printed(double x, double y) const;
    double rl_row(double x) const;

    KernelSpec spec_;
    double a_;
    double inv_g2_;
    double k11_;
    double r1_;
    std::optional<PowerIntegral> pk_;   // exponents (a-1, a-1)
    std::optional<PowerIntegral> prow_; // exponents (a-1, a)
};

double kernel_K(double x, double y, const FractionalOrder& order, KernelForm form = KernelForm::Standard);
double kernel_bridge(double x, double y, const FractionalOrder& order);

struct NystromGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t m() const { return nodes.size(); }
};

// Gauss-Legendre nodes and weights on (0, 1).
NystromGrid build_grid(std::size_t m);

class DiscreteSpectrum {
public:
    DiscreteSpectrum(KernelSpec spec, NystromGrid grid, std::vector<double> mu, Eigen::MatrixXd vectors,
                     std::vector<double> correction);

    const KernelSpec& spec() const { return spec_; }
    const NystromGrid& grid() const { return grid_; }

    // Number of retained (strictly positive) eigenvalues.
    std::size_t size() const { return mu_.size(); }
    // Descending integral-operator eigenvalues.
    const std::vector<double>& mu() const { return mu_; }
    double mu(std::size_t k) const;
    double lambda(std::size_t k) const;
    // lambda^{1/(2a)}.
    double rho(std::size_t k) const;

    // Orthonormal eigenvectors of the symmetrized matrix, one per column,
    // sign aligned so the corresponding function is positive near x = 0.
    const Eigen::MatrixXd& vectors() const { return vectors_; }

    // Node values f(x_j) = v_j / sqrt(w_j) of the k-th eigenfunction (1-based).
    std::vector<double> node_values(std::size_t k) const;

    // Diagonal singularity-subtraction term on the grid.
    const std::vector<double>& correction() const { return correction_; }

    // Largest |V^T V - I| entry.
    double orthonormality_defect() const;

private:
    KernelSpec spec_;
    NystromGrid grid_;
    std::vector<double> mu_;
    Eigen::MatrixXd vectors_;
    std::vector<double> correction_;
};

// Symmetrized Nystrom discretization with diagonal singularity subtraction
// and full dense symmetric eigendecomposition.
DiscreteSpectrum discretize_and_solve(const KernelSpec& spec, const NystromGrid& grid);

// Unit L2 norm Nystrom interpolant of the k-th eigenfunction (1-based).
double eigenfunction_at(const DiscreteSpectrum& s, std::size_t k, double x);
std::vector<double> eigenfunction_at(const DiscreteSpectrum& s, std::size_t k, const std::vector<double>& xs);

// |f_n(1)| for the RL kernel eigenproblem (Caputo variant).
double caputo_endpoint_value(const DiscreteSpectrum& s, std::size_t n);
double caputo_endpoint_value(double alpha, std::size_t n, std::size_t m);

// CSV "k,mu,lambda,rho" for the first `count` eigenvalues.
void write_spectrum_csv(std::ostream& out, const DiscreteSpectrum& s, std::size_t count);

} // namespace fracspec
