#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fracspec::harness {

// "%.12e"; empty when the value is absent.
std::string fmt(double v);
std::string fmt(const std::optional<double>& v);

// One comma-separated line terminated by LF.
std::string csv_line(const std::vector<std::string>& fields);

// Writes text to a file in binary mode (LF preserved).  Throws
// std::runtime_error with the OS message on failure.
void write_file(const std::string& path, const std::string& text);

} // namespace fracspec::harness
