/**
 * @file dates.hpp
 * @brief Calendar shifting for DA/DT values
 */
#pragma once

#include "dcmdeid/dicom/vr.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace dcmdeid::deid {

inline constexpr int max_shift_days = 36500;

struct civil_date {
    int year;
    unsigned month;
    unsigned day;
};

/// Strict YYYYMMDD with a real calendar day.
[[nodiscard]] std::optional<civil_date> parse_da(std::string_view text);

[[nodiscard]] std::string format_da(const civil_date& d);

/// Shifts the date part of a DA ("YYYYMMDD") or DT ("YYYYMMDD[HHMMSS[.F]][&ZZXX]")
/// value by offset_days, keeping the time/fraction/offset suffix verbatim.
/// TM passes through. Throws unparseable_date for anything else, and
/// std::out_of_range when |offset_days| > max_shift_days.
[[nodiscard]] std::string shift_date(std::string_view value, dicom::vr vr, int offset_days);

/// Convenience for DA values.
[[nodiscard]] inline std::string shift_date(std::string_view value, int offset_days) {
    return shift_date(value, dicom::vr::DA, offset_days);
}

/// Signed day distance `to - from` for two valid DA values.
[[nodiscard]] std::optional<int> days_between(std::string_view from, std::string_view to);

}  // namespace dcmdeid::deid
