#include "fracspec/fractional_order.hpp"

#include "fracspec/error.hpp"

#include <cmath>
#include <cstdio>

namespace fracspec {

std::string_view to_string(Variant v)
{
    return v == Variant::RLBridge ? "rl-bridge" : "caputo";
}

Variant parse_variant(std::string_view s)
{
    if (s == "rl-bridge")
        return Variant::RLBridge;
    if (s == "caputo")
        return Variant::Caputo;
    throw DomainError("unknown variant '" + std::string(s) + "' (expected rl-bridge or caputo)");
}

FractionalOrder::FractionalOrder(double alpha, Variant variant)
    : alpha_(alpha), variant_(variant)
{
    const double lo = variant == Variant::RLBridge ? 0.5 : 0.0;
    if (!std::isfinite(alpha) || !(alpha > lo && alpha < 1.0)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "alpha=%g outside (%g, 1) for variant %s", alpha, lo,
                      std::string(to_string(variant)).c_str());
        throw DomainError(buf);
    }
}

FractionalOrder FractionalOrder::classical(Variant variant)
{
    return FractionalOrder(1.0, variant, Unchecked{});
}

FractionalOrder make_order(double alpha, Variant variant)
{
    if (alpha == 1.0)
        return FractionalOrder::classical(variant);
    return FractionalOrder(alpha, variant);
}

} // namespace fracspec
