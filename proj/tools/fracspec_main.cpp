#include "fracspec/harness/commands.hpp"
#include "fracspec/harness/config.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

using namespace fracspec;
using namespace fracspec::harness;

namespace {

// Flags are collected as raw strings and applied after the config file, so
// an explicit flag always wins.
struct Flags {
    std::map<std::string, std::string> values;
    std::string config;

    void attach(CLI::App* sub)
    {
        static const char* keys[][2] = {
            {"alpha", "Fractional order"},
            {"variant", "rl-bridge or caputo"},
            {"n-min", "First eigenvalue index"},
            {"n-max", "Last eigenvalue index"},
            {"methods", "Comma list of asym1, asym2, nystrom, integro"},
            {"m", "Nystrom grid size"},
            {"grid-points", "Eigenfunction sampling points (>= 11)"},
            {"out", "Output directory"},
            {"reference", "Reference method for relative errors: nystrom or integro"},
            {"kernel-form", "standard or printed (debug)"},
        };
        for (const auto& k : keys)
            sub->add_option_function<std::string>(
                std::string("--") + k[0], [this, key = std::string(k[0])](const std::string& v) { values[key] = v; },
                k[1]);
        sub->add_option("--config", config, "key=value configuration file");
    }

    RunConfig build() const
    {
        RunConfig cfg;
        if (!config.empty())
            apply_file(cfg, config);
        for (const auto& [k, v] : values)
            apply_setting(cfg, k, v);
        return cfg;
    }
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Eigenvalues and eigenfunctions of fractional Sturm-Liouville problems"};
    app.require_subcommand(1);

    Flags flags;
    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalue table (spectrum.csv)");
    auto* eigen = app.add_subcommand("eigenfunction", "Eigenfunction tables and error plots");
    auto* validate = app.add_subcommand("validate", "Run the built-in check suite");
    auto* cache = app.add_subcommand("cache", "Manage the phase table cache in $FRACSPEC_CACHE_DIR");
    std::string action;
    cache->add_option("action", action, "build, clear or stat")->required();
    for (auto* sub : {spectrum, eigen, validate, cache})
        flags.attach(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        const RunConfig cfg = flags.build();
        if (*spectrum)
            return cmd_spectrum(cfg, std::cout);
        if (*eigen)
            return cmd_eigenfunction(cfg, std::cout);
        if (*validate)
            return cmd_validate(cfg, std::cout);
        return cmd_cache(action, cfg, std::cout);
    } catch (const UsageError& e) {
        std::cerr << "fracspec: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "fracspec: " << e.what() << '\n';
        return exit_numerical;
    }
}
