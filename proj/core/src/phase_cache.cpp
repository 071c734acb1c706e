#include "fracspec/spectral_kernels.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>

namespace fracspec {

namespace {

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void PhaseTable::save(std::ostream& out) const
{
    const std::string a = "alpha=" + fmt17(alpha());
    for (std::size_t k = 0; k < t_.size(); ++k)
        out << a << " kind=theta0 key=" << fmt17(t_[k]) << " value=" << fmt17(theta_[k]) << '\n';
    std::lock_guard lock(mu_);
    for (const auto& [key, v] : xc0_cache_)
        out << a << " kind=xc0 key=" << fmt17(key.re) << ',' << fmt17(key.im) << " value=" << fmt17(v.real())
            << ',' << fmt17(v.imag()) << '\n';
    for (const auto& [key, v] : pv_cache_)
        out << a << " kind=pv key=" << fmt17(key) << " value=" << fmt17(v) << '\n';
}

std::size_t PhaseTable::load(std::istream& in)
{
    std::map<ComplexKey, Complex> xc0s;
    std::map<double, double> pvs;
    std::set<double> theta_keys;
    bool stale = false;
    std::string line;
    while (std::getline(in, line)) {
        double a = 0.0, k1 = 0.0, k2 = 0.0, v1 = 0.0, v2 = 0.0;
        char kind[16] = {};
        if (std::sscanf(line.c_str(), "alpha=%lg kind=%15s", &a, kind) != 2)
            continue;
        if (a != alpha())
            continue;
        const std::string k = kind;
        if (k == "theta0") {
            if (std::sscanf(line.c_str(), "alpha=%*g kind=theta0 key=%lg value=%lg", &k1, &v1) != 2)
                continue;
            theta_keys.insert(k1);
            if (std::abs(theta0(k1, order_) - v1) > 1e-14)
                stale = true;
        } else if (k == "xc0") {
            if (std::sscanf(line.c_str(), "alpha=%*g kind=xc0 key=%lg,%lg value=%lg,%lg", &k1, &k2, &v1, &v2) ==
                4)
                xc0s[{k1, k2}] = Complex(v1, v2);
        } else if (k == "pv") {
            if (std::sscanf(line.c_str(), "alpha=%*g kind=pv key=%lg value=%lg", &k1, &v1) == 2)
                pvs[k1] = v1;
        }
    }
    // Values depend on the node table, so a cache written with other
    // table options is unusable.
    if (stale || theta_keys != std::set<double>(t_.begin(), t_.end()))
        return 0;
    std::lock_guard lock(mu_);
    for (const auto& [key, v] : xc0s)
        xc0_cache_.insert_or_assign(key, v);
    for (const auto& [key, v] : pvs)
        pv_cache_.insert_or_assign(key, v);
    return t_.size() + xc0s.size() + pvs.size();
}

std::string phase_cache_filename(double alpha)
{
    return "phase_alpha_" + fmt17(alpha) + ".txt";
}

std::size_t load_phase_cache_from_env(PhaseTable& table)
{
    const char* dir = std::getenv("FRACSPEC_CACHE_DIR");
    if (dir == nullptr || *dir == '\0')
        return 0;
    const std::filesystem::path path = std::filesystem::path(dir) / phase_cache_filename(table.alpha());
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec))
        return 0;
    std::ifstream in(path);
    if (!in)
        return 0;
    return table.load(in);
}

} // namespace fracspec
