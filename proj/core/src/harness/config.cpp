#include "fracspec/harness/config.hpp"

#include "fracspec/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace fracspec::harness {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v)
{
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used == v.size())
            return d;
    } catch (const std::exception&) {
    }
    throw UsageError(key + ": expected a number, got '" + v + "'");
}

long to_long(const std::string& key, const std::string& v)
{
    long out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw UsageError(key + ": expected an integer, got '" + v + "'");
    return out;
}

Method parse_method(const std::string& s)
{
    if (s == "asym1")
        return Method::Asym1;
    if (s == "asym2")
        return Method::Asym2;
    if (s == "nystrom")
        return Method::Nystrom;
    if (s == "integro")
        return Method::Integro;
    throw UsageError("unknown method '" + s + "' (expected asym1, asym2, nystrom, integro)");
}

} // namespace

std::string method_name(Method m)
{
    switch (m) {
    case Method::Asym1:
        return "asym1";
    case Method::Asym2:
        return "asym2";
    case Method::Nystrom:
        return "nystrom";
    case Method::Integro:
        return "integro";
    }
    return "?";
}

std::set<Method> parse_methods(const std::string& list)
{
    std::set<Method> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.insert(parse_method(item));
    }
    return out;
}

FractionalOrder RunConfig::order() const
{
    try {
        return make_order(alpha, variant);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

std::map<std::string, std::string> parse_key_values(std::istream& in)
{
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return kv;
}

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& value)
{
    std::string key = raw_key;
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "alpha") {
        cfg.alpha = to_double(key, value);
    } else if (key == "variant") {
        try {
            cfg.variant = parse_variant(value);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    } else if (key == "n-min") {
        cfg.n_min = static_cast<int>(to_long(key, value));
    } else if (key == "n-max") {
        cfg.n_max = static_cast<int>(to_long(key, value));
    } else if (key == "methods") {
        cfg.methods = parse_methods(value);
    } else if (key == "m") {
        const long m = to_long(key, value);
        if (m < 2)
            throw UsageError("m must be at least 2");
        cfg.m = static_cast<std::size_t>(m);
    } else if (key == "grid-points") {
        const long g = to_long(key, value);
        if (g < 0)
            throw UsageError("grid-points must be positive");
        cfg.grid_points = static_cast<std::size_t>(g);
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "reference") {
        const Method r = parse_method(value);
        if (r != Method::Nystrom && r != Method::Integro)
            throw UsageError("reference must be nystrom or integro");
        cfg.reference = r;
    } else if (key == "kernel-form") {
        if (value == "standard")
            cfg.kernel_form = KernelForm::Standard;
        else if (value == "printed")
            cfg.kernel_form = KernelForm::LiteralPrinted;
        else
            throw UsageError("kernel-form must be standard or printed");
    } else {
        throw UsageError("unknown config key '" + raw_key + "'");
    }
}

void apply_file(RunConfig& cfg, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open config file '" + path + "'");
    for (const auto& [k, v] : parse_key_values(in))
        apply_setting(cfg, k, v);
}

void validate_config(const RunConfig& cfg)
{
    const FractionalOrder order = cfg.order();
    if (cfg.n_min < 1)
        throw UsageError("n-min must be at least 1");
    if (cfg.n_max < cfg.n_min)
        throw UsageError("n-max must not be below n-min");
    if (cfg.methods.empty())
        throw UsageError("method set is empty");
    if (cfg.has(Method::Integro)) {
        if (order.variant() != Variant::RLBridge)
            throw UsageError("integro requires the rl-bridge variant");
        if (order.is_classical())
            throw UsageError("integro requires alpha strictly inside (1/2, 1)");
    }
    if (cfg.has(Method::Nystrom) && !(cfg.alpha > 0.5))
        throw UsageError("nystrom requires alpha > 1/2");
    if (cfg.grid_points < 11)
        throw UsageError("grid-points must be at least 11");
    if (cfg.has(Method::Nystrom) && static_cast<std::size_t>(cfg.n_max) > cfg.m)
        throw UsageError("n-max exceeds the Nystrom size m");
}

} // namespace fracspec::harness
