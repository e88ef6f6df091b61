#include "dcmdeid/util/format.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <cstdio>

namespace dcmdeid::util {

std::string fixed_half_even(double value, int decimals) {
    double scale = std::pow(10.0, decimals);
    // Snap values that sit a few ulps away from an exact half so that
    // 0.66665 style inputs round on their decimal meaning.
    double scaled = value * scale;
    double nearest_half = std::floor(scaled) + 0.5;
    if (std::fabs(scaled - nearest_half) < 1e-9 * std::max(1.0, std::fabs(scaled))) scaled = nearest_half;
    int previous = std::fegetround();
    std::fesetround(FE_TONEAREST);
    double rounded = std::nearbyint(scaled);
    std::fesetround(previous);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, rounded / scale);
    return buf;
}

std::string percent(double value_percent, int decimals) { return fixed_half_even(value_percent, decimals) + "%"; }

}  // namespace dcmdeid::util
