#include "dcmdeid/util/digest.hpp"

#include <sodium.h>

#include <algorithm>
#include <stdexcept>

namespace dcmdeid::util {

namespace {

void ensure_sodium() {
    static const bool ready = [] { return sodium_init() >= 0; }();
    if (!ready) throw std::runtime_error("libsodium initialization failed");
}

}  // namespace

digest128 keyed_digest(std::uint64_t seed, std::string_view message) {
    ensure_sodium();
    // 16-byte key: seed little-endian followed by a fixed domain label.
    std::array<std::uint8_t, 16> key{0, 0, 0, 0, 0, 0, 0, 0, 'd', 'c', 'm', 'd', 'e', 'i', 'd', '1'};
    for (int i = 0; i < 8; ++i) key[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(seed >> (8 * i));
    digest128 out{};
    crypto_generichash(out.data(), out.size(), reinterpret_cast<const unsigned char*>(message.data()),
                       message.size(), key.data(), key.size());
    return out;
}

std::string short_hex_digest(std::span<const std::uint8_t> bytes) {
    ensure_sodium();
    std::array<std::uint8_t, 8> out{};
    crypto_generichash(out.data(), out.size(), bytes.data(), bytes.size(), nullptr, 0);
    return to_hex(out);
}

uint128 to_u128(const digest128& d) {
    uint128 v = 0;
    for (auto b : d) v = (v << 8) | b;
    return v;
}

std::string to_decimal(uint128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

}  // namespace dcmdeid::util
