#pragma once

#include "fracspec/fractional_order.hpp"
#include "fracspec/reference_solver.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace fracspec::harness {

// Invalid configuration or command line; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

enum class Method { Asym1, Asym2, Nystrom, Integro };

std::string method_name(Method m);
std::set<Method> parse_methods(const std::string& list);

struct RunConfig {
    double alpha = 0.75;
    Variant variant = Variant::RLBridge;
    int n_min = 1;
    int n_max = 30;
    std::set<Method> methods{Method::Asym1, Method::Asym2, Method::Nystrom};
    std::size_t m = 2000;
    std::size_t grid_points = 201;
    std::string out = ".";
    Method reference = Method::Nystrom;
    KernelForm kernel_form = KernelForm::Standard;

    FractionalOrder order() const;
    bool has(Method m) const { return methods.count(m) != 0; }
};

// Reads "key=value" lines; blank lines and lines starting with '#' are skipped.
std::map<std::string, std::string> parse_key_values(std::istream& in);

// Applies one setting.  Keys: alpha, variant, n-min, n-max, methods, m,
// grid-points, out, reference, kernel-form (underscores accepted too).
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

void apply_file(RunConfig& cfg, const std::string& path);

// Checks invariants shared by all commands.
void validate_config(const RunConfig& cfg);

} // namespace fracspec::harness
