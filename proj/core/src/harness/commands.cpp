#include "fracspec/harness/commands.hpp"

#include "fracspec/asymptotics.hpp"
#include "fracspec/error.hpp"
#include "fracspec/harness/csv.hpp"
#include "fracspec/harness/svg.hpp"
#include "fracspec/integro_algebraic.hpp"
#include "fracspec/reference_solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace fs = std::filesystem;

namespace fracspec::harness {

namespace {

constexpr double pi = std::numbers::pi;

KernelSpec kernel_for(const RunConfig& cfg)
{
    const KernelKind kind = cfg.variant == Variant::RLBridge ? KernelKind::Bridge : KernelKind::RL;
    return {cfg.order(), kind, cfg.kernel_form};
}

std::string join(const fs::path& dir, const std::string& name)
{
    return (dir / name).string();
}

void ensure_dir(const std::string& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create '" + dir + "': " + ec.message());
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

struct SpectrumRun {
    std::string table;
    std::string nystrom_dump;
    std::string integro_dump;
};

SpectrumRun run_spectrum(const RunConfig& cfg, std::ostream& log)
{
    validate_config(cfg);
    const FractionalOrder order = cfg.order();
    const auto n_lo = static_cast<std::size_t>(cfg.n_min);
    const auto n_hi = static_cast<std::size_t>(cfg.n_max);
    SpectrumRun run;

    std::optional<DiscreteSpectrum> nys;
    if (cfg.has(Method::Nystrom)) {
        nys.emplace(discretize_and_solve(kernel_for(cfg), build_grid(cfg.m)));
        std::ostringstream d;
        write_spectrum_csv(d, *nys, n_hi);
        run.nystrom_dump = d.str();
    }

    std::vector<std::optional<double>> integro(n_hi + 1);
    if (cfg.has(Method::Integro)) {
        const auto table = open_phase_table(cfg.alpha);
        std::vector<IntegroRoot> roots;
        for (std::size_t n = n_lo; n <= n_hi; ++n) {
            try {
                const IntegroRoot r = refine_rho(n, *table);
                integro[n] = std::pow(r.rho, 2.0 * cfg.alpha);
                roots.push_back(r);
            } catch (const std::runtime_error& e) {
                if (n >= 3)
                    throw;
                log << "note: integro skipped for n=" << n << ": " << e.what() << '\n';
            }
        }
        std::ostringstream d;
        write_integro_csv(d, roots);
        run.integro_dump = d.str();
    }

    std::string& out = run.table;
    out += "n,lambda_asym1,lambda_asym2,lambda_nystrom,lambda_integro,relerr_asym1,relerr_asym2,flags\n";
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        std::optional<double> a1, a2, ln, li;
        if (cfg.has(Method::Asym1))
            a1 = lambda_asymptotic(n, order, AsymptoticOrder::First);
        if (cfg.has(Method::Asym2))
            a2 = lambda_asymptotic(n, order, AsymptoticOrder::Second);
        if (nys && n <= nys->size())
            ln = nys->lambda(n);
        li = integro[n];
        const std::optional<double> ref = cfg.reference == Method::Nystrom ? ln : li;
        std::optional<double> r1, r2;
        if (ref && a1)
            r1 = *ref / *a1 - 1.0;
        if (ref && a2)
            r2 = *ref / *a2 - 1.0;
        out += csv_line({std::to_string(n), fmt(a1), fmt(a2), fmt(ln), fmt(li), fmt(r1), fmt(r2),
                         n < 3 ? "regime=unverified" : ""});
    }
    return run;
}

template <class F>
double sup_abs(const std::vector<double>& a, F&& other)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - other(i)));
    return m;
}

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

Check run_check(const std::string& name, const std::function<Check()>& body)
{
    try {
        return body();
    } catch (const std::exception& e) {
        return {name, false, std::string("error: ") + e.what()};
    }
}

} // namespace

std::unique_ptr<PhaseTable> open_phase_table(double alpha)
{
    auto table = std::make_unique<PhaseTable>(FractionalOrder(alpha, Variant::RLBridge));
    load_phase_cache_from_env(*table);
    return table;
}

std::string spectrum_csv(const RunConfig& cfg, std::ostream& log)
{
    return run_spectrum(cfg, log).table;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& log)
{
    const SpectrumRun run = run_spectrum(cfg, log);
    ensure_dir(cfg.out);
    write_file(join(cfg.out, "spectrum.csv"), run.table);
    log << "wrote " << join(cfg.out, "spectrum.csv") << '\n';
    if (!run.nystrom_dump.empty()) {
        write_file(join(cfg.out, "spectrum_nystrom.csv"), run.nystrom_dump);
        log << "wrote " << join(cfg.out, "spectrum_nystrom.csv") << '\n';
    }
    if (!run.integro_dump.empty()) {
        write_file(join(cfg.out, "integro_roots.csv"), run.integro_dump);
        log << "wrote " << join(cfg.out, "integro_roots.csv") << '\n';
    }
    return exit_ok;
}

int cmd_eigenfunction(const RunConfig& cfg, std::ostream& log)
{
    validate_config(cfg);
    if (!cfg.has(Method::Nystrom))
        throw UsageError("eigenfunction needs nystrom among the methods (reference curve)");
    const FractionalOrder order = cfg.order();
    const bool bridge = cfg.variant == Variant::RLBridge;
    const DiscreteSpectrum nys = discretize_and_solve(kernel_for(cfg), build_grid(cfg.m));
    std::unique_ptr<PhaseTable> table;
    if (bridge && !order.is_classical())
        table = open_phase_table(cfg.alpha);
    const bool exact = cfg.has(Method::Integro);

    std::vector<double> xs(cfg.grid_points);
    for (std::size_t i = 0; i < xs.size(); ++i)
        xs[i] = static_cast<double>(i) / static_cast<double>(xs.size() - 1);

    ensure_dir(cfg.out);
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        const auto k = static_cast<std::size_t>(n);
        const std::vector<double> fn = eigenfunction_at(nys, k, xs);
        std::vector<double> f0, f1, fe;
        if (bridge) {
            f0 = EigenfunctionApprox(k, order, table.get(), false)(xs);
            f1 = EigenfunctionApprox(k, order, table.get(), true)(xs);
        }
        if (exact)
            fe = ExactEigenfunction(refine_rho(k, *table).rho, *table)(xs);

        std::string csv = "x,f_nystrom,f_asym_nolayers,f_asym_layers";
        csv += exact ? ",f_exact\n" : "\n";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::vector<std::string> row{fmt(xs[i]), fmt(fn[i]), bridge ? fmt(f0[i]) : "",
                                         bridge ? fmt(f1[i]) : ""};
            if (exact)
                row.push_back(fmt(fe[i]));
            csv += csv_line(row);
        }
        const std::string stem = "eigenfunction_n" + std::to_string(n);
        write_file(join(cfg.out, stem + ".csv"), csv);

        std::vector<Series> series;
        auto diff = [&](const std::vector<double>& f) {
            std::vector<double> d(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i)
                d[i] = fn[i] - f[i];
            return d;
        };
        std::string summary = "n=" + std::to_string(n);
        if (bridge) {
            series.push_back({"nystrom - asym (no layers)", xs, diff(f0)});
            series.push_back({"nystrom - asym (layers)", xs, diff(f1)});
            summary += " sup|nystrom-asym_nolayers|=" + sci(sup_abs(fn, [&](std::size_t i) { return f0[i]; }));
            summary += " sup|nystrom-asym_layers|=" + sci(sup_abs(fn, [&](std::size_t i) { return f1[i]; }));
        }
        if (exact) {
            series.push_back({"nystrom - exact (experimental)", xs, diff(fe)});
            summary += " sup|nystrom-exact|=" + sci(sup_abs(fn, [&](std::size_t i) { return fe[i]; }));
        }
        if (series.empty())
            series.push_back({"nystrom", xs, fn});
        char title[96];
        std::snprintf(title, sizeof title, "eigenfunction error, n=%d, alpha=%g", n, cfg.alpha);
        write_file(join(cfg.out, stem + ".svg"), line_chart(title, series));
        log << summary << '\n' << "wrote " << join(cfg.out, stem + ".csv") << " and .svg\n";
    }
    return exit_ok;
}

int cmd_validate(const RunConfig& cfg, std::ostream& log)
{
    validate_config(cfg);
    std::vector<Check> checks;
    const KernelForm form = cfg.kernel_form;
    const double alpha = cfg.alpha > 0.5 && cfg.alpha < 1.0 ? cfg.alpha : 0.75;

    checks.push_back(run_check("xc0_closed_form", [&] {
        double worst = 0.0;
        for (double a : {0.55, 0.65, 0.75, 0.85, 0.95}) {
            const auto t = open_phase_table(a);
            const Complex want = std::sqrt(a) * std::exp(Complex(0.0, -pi * (1.0 - a) / 4.0));
            worst = std::max(worst, std::abs(t->xc0(Complex(0.0, 1.0)) - want));
        }
        return Check{"xc0_closed_form", worst < 1e-8, "max error " + sci(worst) + " (tol 1e-8)"};
    }));

    checks.push_back(run_check("classical_limit", [&] {
        const KernelSpec spec{FractionalOrder::classical(Variant::RLBridge), KernelKind::Bridge, form};
        const DiscreteSpectrum s = discretize_and_solve(spec, build_grid(800));
        double worst = 0.0;
        for (std::size_t n = 1; n <= 20; ++n)
            worst = std::max(worst, std::abs(s.mu(n) * std::pow(pi * n, 2.0) - 1.0));
        std::vector<double> xs(201);
        for (std::size_t i = 0; i < xs.size(); ++i)
            xs[i] = i / 200.0;
        const std::vector<double> f = eigenfunction_at(s, 1, xs);
        const double fe = sup_abs(f, [&](std::size_t i) { return std::sqrt(2.0) * std::sin(pi * xs[i]); });
        return Check{"classical_limit", worst < 1e-4 && fe < 1e-4,
                     "eigenvalue relerr " + sci(worst) + ", f1 sup error " + sci(fe) + " (tol 1e-4)"};
    }));

    checks.push_back(run_check("caputo_endpoint", [&] {
        const KernelSpec spec{FractionalOrder(alpha, Variant::Caputo), KernelKind::RL, form};
        const double v = caputo_endpoint_value(discretize_and_solve(spec, build_grid(cfg.m)), 20);
        const double want = std::sqrt(2.0 * alpha);
        const double rel = std::abs(v - want) / want;
        return Check{"caputo_endpoint", rel < 0.01,
                     "|f_20(1)|=" + sci(v) + " vs sqrt(2a)=" + sci(want) + ", rel " + sci(rel)};
    }));

    checks.push_back(run_check("kernel_symmetry", [&] {
        double worst = 0.0, scale = 0.0;
        bool finite = true;
        for (KernelKind kind : {KernelKind::RL, KernelKind::Bridge}) {
            const KernelEvaluator ev({FractionalOrder(alpha, Variant::RLBridge), kind, form});
            for (int i = 0; i < 10; ++i)
                for (int j = 0; j < 10; ++j) {
                    const double x = (i + 0.5) / 10, y = (j + 0.5) / 10;
                    const double kxy = ev(x, y), kyx = ev(y, x);
                    if (!std::isfinite(kxy) || !std::isfinite(kyx)) {
                        finite = false;
                        continue;
                    }
                    worst = std::max(worst, std::abs(kxy - kyx));
                    scale = std::max(scale, std::abs(kxy));
                }
        }
        const bool ok = finite && worst <= 1e-12 * scale;
        const std::string note = finite ? "" : ", non-finite entries";
        return Check{"kernel_symmetry", ok, "max |K(x,y)-K(y,x)| " + sci(worst) + note};
    }));

    checks.push_back(run_check("kernel_psd", [&] {
        const KernelEvaluator ev({FractionalOrder(alpha, Variant::RLBridge), KernelKind::Bridge, form});
        Eigen::MatrixXd g(50, 50);
        for (int i = 0; i < 50; ++i)
            for (int j = 0; j < 50; ++j)
                g(i, j) = ev((i + 0.5) / 50, (j + 0.5) / 50);
        if (!g.allFinite())
            return Check{"kernel_psd", false, "Gram matrix has non-finite entries"};
        const double lo = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g, Eigen::EigenvaluesOnly).eigenvalues()[0];
        return Check{"kernel_psd", lo >= -1e-10, "smallest Gram eigenvalue " + sci(lo)};
    }));

    std::optional<DiscreteSpectrum> spec;
    const RunConfig own = [&] {
        RunConfig c = cfg;
        if (c.variant == Variant::RLBridge && !(c.alpha > 0.5))
            c.alpha = alpha;
        return c;
    }();
    checks.push_back(run_check("orthonormality", [&] {
        spec.emplace(discretize_and_solve(kernel_for(own), build_grid(cfg.m)));
        const double d = spec->orthonormality_defect();
        return Check{"orthonormality", d <= 1e-10, "max |V^T V - I| " + sci(d) + " (m=" + std::to_string(cfg.m) + ")"};
    }));

    checks.push_back(run_check("mercer_trace", [&] {
        if (!spec)
            throw std::runtime_error("no spectrum");
        double sum = 0.0;
        for (double mu : spec->mu())
            sum += mu;
        const double tail = inverse_lambda_tail(spec->size() + 1, own.order());
        const double trace = KernelEvaluator(kernel_for(own)).trace_integral();
        const double rel = std::abs(sum + tail - trace) / trace;
        return Check{"mercer_trace", rel < 0.01,
                     "sum mu " + sci(sum) + " + tail " + sci(tail) + " vs trace " + sci(trace) + ", rel " + sci(rel)};
    }));

    checks.push_back(run_check("csv_determinism", [&] {
        RunConfig c = own;
        c.methods = {Method::Asym1, Method::Asym2, Method::Nystrom};
        c.m = 200;
        c.n_min = 1;
        c.n_max = 10;
        std::ostringstream sink;
        const std::string a = spectrum_csv(c, sink), b = spectrum_csv(c, sink);
        return Check{"csv_determinism", a == b && !a.empty(), std::to_string(a.size()) + " bytes, identical=" + (a == b ? "yes" : "no")};
    }));

    if (cfg.has(Method::Integro) && cfg.variant == Variant::RLBridge) {
        checks.push_back(run_check("integro_bracket", [&] {
            const auto t = open_phase_table(alpha);
            const int c = count_bracket_roots(10, *t, 32);
            return Check{"integro_bracket", c == 1, std::to_string(c) + " sign change(s) in the n=10 bracket"};
        }));
    }

    bool all = true;
    for (const Check& c : checks) {
        log << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        all = all && c.pass;
    }
    log << (all ? "all checks passed" : "some checks failed") << '\n';
    return all ? exit_ok : exit_check_failed;
}

int cmd_cache(const std::string& action, const RunConfig& cfg, std::ostream& log)
{
    const char* env = std::getenv("FRACSPEC_CACHE_DIR");
    if (env == nullptr || *env == '\0')
        throw UsageError("FRACSPEC_CACHE_DIR is not set");
    const fs::path dir(env);
    auto cache_files = [&] {
        std::vector<fs::path> files;
        std::error_code ec;
        if (!fs::is_directory(dir, ec))
            return files;
        for (const auto& e : fs::directory_iterator(dir)) {
            const std::string name = e.path().filename().string();
            if (e.is_regular_file() && name.rfind("phase_alpha_", 0) == 0 && e.path().extension() == ".txt")
                files.push_back(e.path());
        }
        std::sort(files.begin(), files.end());
        return files;
    };
    auto count_lines = [](const fs::path& p) {
        std::ifstream in(p);
        std::size_t n = 0;
        std::string line;
        while (std::getline(in, line))
            ++n;
        return n;
    };

    if (action == "build") {
        const FractionalOrder order(cfg.order());
        if (order.variant() != Variant::RLBridge || order.is_classical())
            throw UsageError("cache build needs the rl-bridge variant with alpha in (1/2, 1)");
        ensure_dir(dir.string());
        const fs::path file = dir / phase_cache_filename(cfg.alpha);
        PhaseTable table(order);
        std::error_code ec;
        if (fs::is_regular_file(file, ec)) {
            std::ifstream in(file);
            const std::size_t loaded = table.load(in);
            if (loaded > 0) {
                log << "cache hit: " << file.string() << " (" << loaded << " entries)\n";
                return exit_ok;
            }
        }
        table.precompute();
        std::ostringstream text;
        table.save(text);
        write_file(file.string(), text.str());
        log << "cache built: " << file.string() << " (" << count_lines(file) << " entries)\n";
        return exit_ok;
    }
    if (action == "stat") {
        std::size_t total = 0;
        for (const fs::path& p : cache_files()) {
            const std::size_t n = count_lines(p);
            log << p.filename().string() << ": " << n << " entries\n";
            total += n;
        }
        log << "entries=" << total << '\n';
        return exit_ok;
    }
    if (action == "clear") {
        std::size_t removed = 0;
        for (const fs::path& p : cache_files()) {
            fs::remove(p);
            ++removed;
        }
        log << "removed " << removed << " file(s)\n";
        return exit_ok;
    }
    throw UsageError("cache action must be build, clear or stat");
}

} // namespace fracspec::harness
