#pragma once

#include <string>
#include <string_view>

namespace fracspec {

enum class Variant { RLBridge, Caputo };

std::string_view to_string(Variant v);
// Accepts "rl-bridge" and "caputo".
Variant parse_variant(std::string_view s);

// Validated order alpha together with the problem variant.
// RLBridge: alpha in (1/2, 1). Caputo: alpha in (0, 1).
// classical() builds the alpha = 1 limit, which only the reference
// solver and the closed-form asymptotics accept.
class FractionalOrder {
public:
    FractionalOrder(double alpha, Variant variant);

    static FractionalOrder classical(Variant variant);

    double alpha() const { return alpha_; }
    Variant variant() const { return variant_; }
    bool is_classical() const { return alpha_ == 1.0; }

    bool operator==(const FractionalOrder&) const = default;

private:
    struct Unchecked {};
    FractionalOrder(double alpha, Variant variant, Unchecked)
        : alpha_(alpha), variant_(variant) {}

    double alpha_;
    Variant variant_;
};

// Like the constructor, but alpha == 1 yields the classical order.
FractionalOrder make_order(double alpha, Variant variant);

} // namespace fracspec
