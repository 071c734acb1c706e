#include "fracspec/harness/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fracspec::harness {

std::string fmt(double v)
{
    if (!std::isfinite(v))
        return {};
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

std::string fmt(const std::optional<double>& v)
{
    return v ? fmt(*v) : std::string();
}

std::string csv_line(const std::vector<std::string>& fields)
{
    std::string s;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            s += ',';
        s += fields[i];
    }
    s += '\n';
    return s;
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "': " + std::strerror(errno));
    out << text;
    out.close();
    if (!out)
        throw std::runtime_error("error writing '" + path + "': " + std::strerror(errno));
}

} // namespace fracspec::harness
