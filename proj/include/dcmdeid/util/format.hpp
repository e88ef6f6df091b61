#pragma once

#include <string>

namespace dcmdeid::util {

/// Fixed-point rendering with round-half-to-even at `decimals` places.
[[nodiscard]] std::string fixed_half_even(double value, int decimals);

/// "99.93%" from a percentage value.
[[nodiscard]] std::string percent(double value_percent, int decimals = 2);

}  // namespace dcmdeid::util
