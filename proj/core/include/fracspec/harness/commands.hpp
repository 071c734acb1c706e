#pragma once

#include "fracspec/harness/config.hpp"
#include "fracspec/spectral_kernels.hpp"

#include <iosfwd>
#include <memory>
#include <string>

namespace fracspec::harness {

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numerical = 3;

// Phase table for cfg.alpha, preloaded from $FRACSPEC_CACHE_DIR when present.
std::unique_ptr<PhaseTable> open_phase_table(double alpha);

// spectrum.csv text for a configuration (no file output).
std::string spectrum_csv(const RunConfig& cfg, std::ostream& log);

int cmd_spectrum(const RunConfig& cfg, std::ostream& log);
int cmd_eigenfunction(const RunConfig& cfg, std::ostream& log);
int cmd_validate(const RunConfig& cfg, std::ostream& log);
// action: build, clear or stat.
int cmd_cache(const std::string& action, const RunConfig& cfg, std::ostream& log);

} // namespace fracspec::harness
