#include "fracspec/integro_algebraic.hpp"

#include "fracspec/asymptotics.hpp"
#include "fracspec/error.hpp"
#include "fracspec/quadrature.hpp"

#include <boost/math/tools/roots.hpp>

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace fracspec {

namespace {

constexpr double pi = std::numbers::pi;
const Complex I(0.0, 1.0);

double sup_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// M_kj = (1/pi) w_j exp(-rho tau_j) / (tau_j + tau_k).
Eigen::MatrixXd operator_matrix(double rho, const IntegroGrid& grid)
{
    const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
    Eigen::VectorXd e(n);
    for (Eigen::Index j = 0; j < n; ++j)
        e[j] = grid.weight[j] * std::exp(-rho * grid.tau[j]) / pi;
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k)
            m(k, j) = e[j] / (grid.tau[j] + grid.tau[k]);
    return m;
}

GridPair forcing(Forcing which, const IntegroGrid& grid)
{
    const std::size_t n = grid.size();
    GridPair f{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    for (std::size_t k = 0; k < n; ++k) {
        if (which == Forcing::P)
            f[0][k] = 1.0;
        else if (which == Forcing::Q)
            f[1][k] = 1.0;
        else
            f[1][k] = grid.tau[k];
    }
    return f;
}

GridPair apply_matrix(const Eigen::MatrixXd& m, const GridPair& f, const IntegroGrid& grid)
{
    const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
    Eigen::VectorXd gf(n), hf(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        gf[j] = grid.g0[j] * f[1][j];
        hf[j] = grid.h0[j] * f[0][j];
    }
    const Eigen::VectorXd o1 = m * gf, o2 = m * hf;
    return {std::vector<double>(o1.data(), o1.data() + n), std::vector<double>(o2.data(), o2.data() + n)};
}

const GridPair& pick(const PQRSolution& sol, Forcing which)
{
    return which == Forcing::P ? sol.p : which == Forcing::Q ? sol.q : sol.r;
}

} // namespace

IntegroGrid make_integro_grid(const PhaseTable& table, double rho_ref, const IntegroOptions& opts)
{
    if (!(rho_ref > 0.0))
        throw DomainError("integro grid: rho must be positive");
    if (!(opts.step > 0.0) || !(opts.upper_cutoff > 0.0) || !(opts.lower_span > 0.0))
        throw DomainError("integro grid: step and range must be positive");
    IntegroGrid g;
    g.rho_ref = rho_ref;
    const double vmin = std::log(1.0 / rho_ref) - opts.lower_span / table.alpha();
    const double vmax = std::log(opts.upper_cutoff / rho_ref);
    const auto count = static_cast<std::size_t>(std::floor((vmax - vmin) / opts.step + 0.5)) + 1;
    for (std::size_t k = 0; k < count; ++k) {
        const double t = std::exp(vmin + opts.step * static_cast<double>(k));
        g.tau.push_back(t);
        g.weight.push_back(opts.step * t);
        g.g0.push_back(table.g0(t));
        g.h0.push_back(table.h0(t, opts.printed_jump_sign));
    }
    return g;
}

GridPair apply_A(const GridPair& f, double rho, const IntegroGrid& grid)
{
    if (f[0].size() != grid.size() || f[1].size() != grid.size())
        throw DomainError("apply_A: function does not match the grid");
    return apply_matrix(operator_matrix(rho, grid), f, grid);
}

PQRSolution solve_pqr(double rho, const IntegroGrid& grid, const IntegroOptions& opts)
{
    if (!(rho > 0.0))
        throw DomainError("solve_pqr: rho must be positive");
    const Eigen::MatrixXd m = operator_matrix(rho, grid);
    PQRSolution sol;
    sol.rho = rho;
    sol.converged = true;
    const Forcing kinds[3] = {Forcing::P, Forcing::Q, Forcing::R};
    for (int s = 0; s < 3; ++s) {
        const GridPair F = forcing(kinds[s], grid);
        GridPair f = F;
        double prev = INFINITY, step = INFINITY;
        int it = 0;
        while (it < opts.max_iterations) {
            GridPair af = apply_matrix(m, f, grid);
            for (int c = 0; c < 2; ++c)
                for (std::size_t k = 0; k < grid.size(); ++k)
                    af[c][k] += F[c][k];
            step = std::max(sup_diff(af[0], f[0]), sup_diff(af[1], f[1]));
            f = std::move(af);
            ++it;
            if (step < opts.tolerance)
                break;
            if (it > 3 && step > prev) {
                char buf[160];
                std::snprintf(buf, sizeof buf,
                              "solve_pqr: iteration not contracting at rho=%.6g (step %.3e after %.3e)", rho, step,
                              prev);
                throw ConvergenceError(buf);
            }
            prev = step;
        }
        GridPair af = apply_matrix(m, f, grid);
        double res = 0.0;
        for (int c = 0; c < 2; ++c)
            for (std::size_t k = 0; k < grid.size(); ++k)
                res = std::max(res, std::abs(f[c][k] - af[c][k] - F[c][k]));
        sol.last_step[s] = step;
        sol.residual[s] = res;
        sol.iterations = std::max(sol.iterations, it);
        if (!(step < opts.tolerance))
            sol.converged = false;
        (s == 0 ? sol.p : s == 1 ? sol.q : sol.r) = std::move(f);
    }
    return sol;
}

ComplexPair analytic_extend(const PQRSolution& sol, Forcing which, Complex z, const IntegroGrid& grid)
{
    if (z.imag() == 0.0 && z.real() <= 0.0)
        throw DomainError("analytic_extend: z lies on (-inf, 0]");
    const GridPair& f = pick(sol, which);
    Complex s1 = 0.0, s2 = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const Complex k = grid.weight[j] * std::exp(-sol.rho * grid.tau[j]) / (pi * (grid.tau[j] + z));
        s1 += k * (grid.g0[j] * f[1][j]);
        s2 += k * (grid.h0[j] * f[0][j]);
    }
    ComplexPair out{s1, s2};
    if (which == Forcing::P)
        out[0] += 1.0;
    else if (which == Forcing::Q)
        out[1] += 1.0;
    else
        out[1] += z;
    return out;
}

SecularValue secular(const PQRSolution& sol, const IntegroGrid& grid, const PhaseTable& table)
{
    const double rho = sol.rho;
    const double a = table.alpha();
    const double b = b_alpha(table.order());
    const Complex X = table.xc0(I) / (rho * I);
    const Complex Y = std::pow(rho * I, a - 1.0) * table.xc0(-I);
    const Complex ph = std::exp(-I * rho);
    const ComplexPair pm = analytic_extend(sol, Forcing::P, -I, grid);
    const ComplexPair pp = analytic_extend(sol, Forcing::P, I, grid);
    const ComplexPair qm = analytic_extend(sol, Forcing::Q, -I, grid);
    const ComplexPair qp = analytic_extend(sol, Forcing::Q, I, grid);
    const ComplexPair rm = analytic_extend(sol, Forcing::R, -I, grid);
    const ComplexPair rp = analytic_extend(sol, Forcing::R, I, grid);
    const Complex xi = X * pm[0] + std::pow(rho, -a) * ph * Y * pp[1];
    const Complex eta = X * std::pow(rho, a) * (rho * b * qm[0] - rho * rm[0]) + ph * Y * (rho * b * qp[1] - rho * rp[1]);
    return {rho, xi, eta, (xi * std::conj(eta)).imag()};
}

SecularValue secular(double rho, const IntegroGrid& grid, const PhaseTable& table, const IntegroOptions& opts)
{
    return secular(solve_pqr(rho, grid, opts), grid, table);
}

double c_ratio(const SecularValue& s)
{
    if (std::abs(s.eta) == 0.0)
        throw DomainError("c_ratio: eta vanishes");
    return -(s.xi / s.eta).real();
}

double c_ratio(double rho_n, const PhaseTable& table, const IntegroOptions& opts)
{
    const IntegroGrid grid = make_integro_grid(table, rho_n, opts);
    return c_ratio(secular(rho_n, grid, table, opts));
}

namespace {

double normalized_condition(double rho, const IntegroGrid& grid, const PhaseTable& table,
                            const IntegroOptions& opts)
{
    const SecularValue s = secular(rho, grid, table, opts);
    return s.condition / (std::abs(s.xi) * std::abs(s.eta));
}

} // namespace

int count_bracket_roots(std::size_t n, const PhaseTable& table, int samples, const IntegroOptions& opts)
{
    const double r2 = rho_asymptotic(n, table.order(), AsymptoticOrder::Second);
    const IntegroGrid grid = make_integro_grid(table, r2, opts);
    const double lo = r2 - 0.5 * pi, hi = r2 + 0.5 * pi;
    int changes = 0;
    double prev = normalized_condition(lo, grid, table, opts);
    for (int i = 1; i <= samples; ++i) {
        const double v = normalized_condition(lo + (hi - lo) * i / samples, grid, table, opts);
        if ((prev < 0.0) != (v < 0.0))
            ++changes;
        prev = v;
    }
    return changes;
}

IntegroRoot refine_rho(std::size_t n, const PhaseTable& table, const IntegroOptions& opts)
{
    const double r2 = rho_asymptotic(n, table.order(), AsymptoticOrder::Second);
    const IntegroGrid grid = make_integro_grid(table, r2, opts);
    auto f = [&](double rho) { return normalized_condition(rho, grid, table, opts); };

    // Coarse scan to locate a sign change; the uniqueness question is left
    // to count_bracket_roots.
    constexpr int scan = 8;
    double lo = r2 - 0.5 * pi, flo = f(lo);
    double hi = lo, fhi = flo;
    bool found = false;
    int changes = 0;
    double blo = 0, bhi = 0, bflo = 0, bfhi = 0;
    for (int i = 1; i <= scan; ++i) {
        hi = r2 - 0.5 * pi + pi * i / scan;
        fhi = f(hi);
        if ((flo < 0.0) != (fhi < 0.0)) {
            ++changes;
            if (!found) {
                blo = lo;
                bhi = hi;
                bflo = flo;
                bfhi = fhi;
                found = true;
            }
        }
        lo = hi;
        flo = fhi;
    }
    if (!found) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "refine_rho: no sign change of the secular condition in [%.6f, %.6f] (n=%zu)",
                      r2 - 0.5 * pi, r2 + 0.5 * pi, n);
        throw ConvergenceError(buf);
    }
    std::uintmax_t max_iter = 100;
    auto tol = [](double x, double y) { return std::abs(x - y) < 1e-13 * std::max(1.0, std::abs(x)); };
    const auto br = boost::math::tools::toms748_solve(f, blo, bhi, bflo, bfhi, tol, max_iter);
    const double root = std::abs(f(br.first)) < std::abs(f(br.second)) ? br.first : br.second;

    const PQRSolution sol = solve_pqr(root, grid, opts);
    const SecularValue sv = secular(sol, grid, table);
    const double resid = std::abs(sv.condition) / (std::abs(sv.xi) * std::abs(sv.eta));
    if (!(resid < 1e-10)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "refine_rho: residual %.3e above 1e-10 at rho=%.12f", resid, root);
        throw ConvergenceError(buf);
    }
    return {n, root, r2, resid, sol.iterations, changes, c_ratio(sv)};
}

ExactEigenfunction::ExactEigenfunction(double rho_n, const PhaseTable& table, const IntegroOptions& opts)
    : table_(&table), rho_(rho_n)
{
    const FractionalOrder& order = table.order();
    const double a = table.alpha();
    const double b = b_alpha(order);
    const double s = std::sin(a * pi);
    const IntegroGrid grid = make_integro_grid(table, rho_n, opts);
    const PQRSolution sol = solve_pqr(rho_n, grid, opts);
    if (!sol.converged)
        throw ConvergenceError("reconstruct: p, q, r iteration did not converge");
    const SecularValue sv = secular(sol, grid, table);
    const double c0 = 1.0, c1 = c_ratio(sv);
    const double big = std::pow(rho_n, 1.0 + a);

    const auto& t = table.nodes();
    const auto& w = table.weights();
    const auto& xn = table.xc0_negative_nodes();
    const double k = std::pow(rho_n, 1.0 - a) * s / (pi * pi);
    b0_.resize(t.size());
    b1_.resize(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
        const Complex z(t[j], 0.0);
        const ComplexPair P = analytic_extend(sol, Forcing::P, z, grid);
        const ComplexPair Q = analytic_extend(sol, Forcing::Q, z, grid);
        const ComplexPair R = analytic_extend(sol, Forcing::R, z, grid);
        const double psi0 = c0 * P[0].real() + c1 * big * (b * Q[0].real() - R[0].real());
        const double psi1 = std::pow(rho_n, -a) * c0 * P[1].real() + c1 * rho_n * (b * Q[1].real() - R[1].real());
        const double rt = rho_n * t[j];
        const double phi0 = -xn[j] * psi0 / rt;
        const double phi1 = std::pow(rt, a - 1.0) * xn[j] * psi1;
        const double g = gamma0(t[j], order);
        b1_[j] = k * w[j] * phi1 * std::sin(table.theta0_values()[j]) / g;
        b0_[j] = -k * w[j] * phi0 * std::sin(theta0_offset(t[j], order)) / g;
    }
    const ComplexPair pm = analytic_extend(sol, Forcing::P, -I, grid);
    const ComplexPair qm = analytic_extend(sol, Forcing::Q, -I, grid);
    const ComplexPair rm = analytic_extend(sol, Forcing::R, -I, grid);
    const Complex psi0i = c0 * pm[0] + c1 * big * (b * qm[0] - rm[0]);
    const Complex phi0i = table.xc0(I) * psi0i / (I * rho_n);
    osc_ = std::pow(rho_n, 1.0 - a) * std::exp(-I * (pi * a / 2.0)) * (s / (a * pi)) * phi0i / I;

    // L2 norm on panels graded toward both ends, where the layers live.
    const QuadratureRule gl = gauss_legendre(16, 0.0, 1.0);
    double norm2 = 0.0;
    auto panel = [&](double lo, double hi) {
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double v = raw(lo + (hi - lo) * gl.nodes[i]);
            norm2 += (hi - lo) * gl.weights[i] * v * v;
        }
    };
    const int panels = std::max(64, static_cast<int>(std::ceil(2.0 * rho_n)));
    const double hpanel = 1.0 / panels;
    for (int i = 1; i + 1 < panels; ++i)
        panel(i * hpanel, (i + 1) * hpanel);
    for (int j = 0; j < 40; ++j) {
        const double lo = hpanel * std::ldexp(1.0, -j - 1), hi = hpanel * std::ldexp(1.0, -j);
        panel(lo, hi);
        panel(1.0 - hi, 1.0 - lo);
    }
    scale_ = 1.0 / std::sqrt(norm2);

    // Positive on the first quarter oscillation.
    double first = 0.0;
    const double cut = pi / (2.0 * rho_n);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i)
        first += gl.weights[i] * raw(cut * gl.nodes[i]);
    if (first < 0.0)
        scale_ = -scale_;
}

double ExactEigenfunction::raw(double x) const
{
    const auto& t = table_->nodes();
    double acc = (osc_ * std::exp(I * (rho_ * x))).real();
    const double s0 = rho_ * x, s1 = rho_ * (1.0 - x);
    for (std::size_t j = 0; j < t.size(); ++j) {
        const double e0 = s0 * t[j], e1 = s1 * t[j];
        if (e0 > 745.0 && e1 > 745.0)
            break;
        if (e0 <= 745.0)
            acc += b0_[j] * std::exp(-e0);
        if (e1 <= 745.0)
            acc += b1_[j] * std::exp(-e1);
    }
    return acc;
}

double ExactEigenfunction::operator()(double x) const
{
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("reconstruct_f_exact: x outside [0, 1]");
    return scale_ * raw(x);
}

std::vector<double> ExactEigenfunction::operator()(const std::vector<double>& xs) const
{
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs)
        out.push_back((*this)(x));
    return out;
}

double reconstruct_f_exact(double x, double rho_n, const PhaseTable& table, const IntegroOptions& opts)
{
    return ExactEigenfunction(rho_n, table, opts)(x);
}

void write_integro_csv(std::ostream& out, const std::vector<IntegroRoot>& roots)
{
    out << "n,rho_refined,rho_asym2,condition_residual,iterations\n";
    char buf[160];
    for (const IntegroRoot& r : roots) {
        std::snprintf(buf, sizeof buf, "%zu,%.12e,%.12e,%.12e,%d\n", r.n, r.rho, r.rho_asym2,
                      r.condition_residual, r.iterations);
        out << buf;
    }
}

} // namespace fracspec
