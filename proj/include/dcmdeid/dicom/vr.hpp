/**
 * @file vr.hpp
 * @brief Value representations supported by the codec
 */
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace dcmdeid::dicom {

enum class vr : std::uint8_t {
    AE, AS, AT, CS, DA, DS, DT, FD, FL, IS, LO, LT, OB, OW, PN,
    SH, SL, SQ, SS, ST, TM, UI, UL, UN, US, UT,
};

inline constexpr std::array<vr, 26> all_vrs{
    vr::AE, vr::AS, vr::AT, vr::CS, vr::DA, vr::DS, vr::DT, vr::FD, vr::FL,
    vr::IS, vr::LO, vr::LT, vr::OB, vr::OW, vr::PN, vr::SH, vr::SL, vr::SQ,
    vr::SS, vr::ST, vr::TM, vr::UI, vr::UL, vr::UN, vr::US, vr::UT,
};

/// How a VR's value is held in memory.
enum class value_kind : std::uint8_t { text, integers, decimals, bytes, sequence };

[[nodiscard]] std::string_view to_code(vr v);

/// Unknown or malformed codes map to UN.
[[nodiscard]] vr vr_from_code(std::string_view code);

[[nodiscard]] value_kind kind_of(vr v);

/// Explicit-VR encoding uses 2 reserved bytes and a 32-bit length for these.
[[nodiscard]] bool has_long_length(vr v);

/// True for codes that take the long explicit header even when we do not model
/// them (UC, UR, OD, ...). Used when a foreign code is read as UN.
[[nodiscard]] bool code_has_long_length(std::string_view code);

[[nodiscard]] inline bool is_text(vr v) { return kind_of(v) == value_kind::text; }

[[nodiscard]] inline bool is_date_like(vr v) { return v == vr::DA || v == vr::DT || v == vr::TM; }

}  // namespace dcmdeid::dicom
