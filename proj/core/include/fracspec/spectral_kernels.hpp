#pragma once

#include "fracspec/fractional_order.hpp"

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace fracspec {

using Complex = std::complex<double>;

// theta0(t) = -atan(sin(a pi) / (t^{2a} - cos(a pi))), a in (1/2, 1].
double theta0(double t, const FractionalOrder& order);

// theta0(t) - (a - 1) pi, computed without cancellation for small t.
double theta0_offset(double t, const FractionalOrder& order);

// d theta0 / dt.
double theta0_derivative(double t, const FractionalOrder& order);

// sqrt(t^{2a} - 2 cos(a pi) + t^{-2a}).
double gamma0(double t, const FractionalOrder& order);

// cot(pi / (2a)), a in (1/2, 1].
double b_alpha(const FractionalOrder& order);

struct PhaseTableOptions {
    // Trapezoid step in u = log t and the half-width of the u-range.
    double step = 0.125;
    double u_max = 60.0;
    // Error tolerance for the Cauchy-type and principal value integrals.
    double tolerance = 1e-10;
};

// theta0 sampled on a geometric grid t_k = exp(u_k), plus the Cauchy-type
// transforms built from it.  All integrals over (0, inf) use the trapezoid
// rule in u, whose integrands decay exponentially at both ends.
//
// Evaluated transforms are memoized; the memo is guarded by a mutex, so a
// table can be shared between threads.
class PhaseTable {
public:
    explicit PhaseTable(const FractionalOrder& order, PhaseTableOptions opts = {});

    PhaseTable(const PhaseTable&) = delete;
    PhaseTable& operator=(const PhaseTable&) = delete;

    const FractionalOrder& order() const { return order_; }
    double alpha() const { return order_.alpha(); }
    const PhaseTableOptions& options() const { return opts_; }

    std::size_t size() const { return t_.size(); }
    const std::vector<double>& nodes() const { return t_; }
    const std::vector<double>& theta0_values() const { return theta_; }
    // Trapezoid weights h * t_k for integrals in dt.
    const std::vector<double>& weights() const { return w_; }

    // X_c0(z) = exp((1/pi) int theta0(t) / (t - z) dt), z off [0, inf).
    Complex xc0(Complex z) const;

    // X_c0 at the negative real point -tau, tau > 0 (real valued).
    double xc0_negative(double tau) const;

    // X_c0(-t_k) on every table node, computed once.
    const std::vector<double>& xc0_negative_nodes() const;

    // exp(-(2t/pi) PV int theta0(s) / (s^2 - t^2) ds).
    double pv_weight(double t) const;

    // g0(t) = t^a sin(theta0) w(t).
    double g0(double t) const;

    // h0(t) = t^{-a} sin(theta0 - a pi) w(t).  printed_sign = true flips the
    // sign, giving the form -t^{-a} sin(theta0 - a pi) w(t).
    double h0(double t, bool printed_sign = false) const;

    // Number of memoized xc0 and pv_weight values.
    std::size_t cache_entries() const;

    // Flat text cache, one record per line:
    //   alpha=<a> kind={theta0|xc0|pv} key=<k> value=<v>
    void save(std::ostream& out) const;
    // Loads xc0 and pv records with matching alpha.  theta0 records are
    // checked against the table; on mismatch (stale cache) nothing is loaded
    // and 0 is returned, otherwise the count of all accepted records.
    std::size_t load(std::istream& in);

    // Populates the memo with the samples consumers need: X_c0(+-i),
    // X_c0(-t_k) and pv_weight(t_k) on all nodes.
    void precompute() const;

private:
    struct ComplexKey {
        double re, im;
        bool operator<(const ComplexKey& o) const {
            return re < o.re || (re == o.re && im < o.im);
        }
    };

    Complex xc0_uncached(Complex z) const;
    double pv_weight_uncached(double t) const;

    FractionalOrder order_;
    PhaseTableOptions opts_;
    std::vector<double> t_;
    std::vector<double> theta_;
    std::vector<double> eps_;
    std::vector<double> w_;

    mutable std::mutex mu_;
    mutable std::map<ComplexKey, Complex> xc0_cache_;
    mutable std::map<double, double> pv_cache_;
    mutable std::once_flag neg_once_;
    mutable std::vector<double> xc0_neg_;
};

// Cache file name for a given alpha inside a cache directory.
std::string phase_cache_filename(double alpha);

// Loads a table's cache from $FRACSPEC_CACHE_DIR if the variable is set and
// the file exists.  Returns the number of records loaded.
std::size_t load_phase_cache_from_env(PhaseTable& table);

} // namespace fracspec
