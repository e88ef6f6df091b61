#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace dcmdeid::util {

/// Seeded generator with platform-independent bounded draws.
/// std::uniform_int_distribution is implementation-defined, so draws are
/// built directly on the 64-bit engine output.
class rng {
public:
    explicit rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        if (hi < lo) throw std::invalid_argument("rng::uniform: empty range");
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());
        std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items.at(static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(items.size()) - 1)));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace dcmdeid::util
