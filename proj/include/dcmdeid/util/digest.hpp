/**
 * @file digest.hpp
 * @brief Keyed 128-bit digests (BLAKE2b via libsodium)
 */
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace dcmdeid::util {

using digest128 = std::array<std::uint8_t, 16>;
__extension__ using uint128 = unsigned __int128;

/// BLAKE2b-128 of `message`, keyed by the 64-bit seed.
[[nodiscard]] digest128 keyed_digest(std::uint64_t seed, std::string_view message);

/// Unkeyed digest of arbitrary bytes, rendered as 16 lowercase hex chars.
[[nodiscard]] std::string short_hex_digest(std::span<const std::uint8_t> bytes);

/// Big-endian interpretation of the digest as an unsigned 128-bit integer.
[[nodiscard]] uint128 to_u128(const digest128& d);

[[nodiscard]] std::string to_decimal(uint128 v);

[[nodiscard]] std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace dcmdeid::util
