#include "dcmdeid/deid/dates.hpp"

#include "dcmdeid/deid/errors.hpp"

#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace dcmdeid::deid {

namespace chr = std::chrono;

namespace {

bool all_digits(std::string_view s) {
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

chr::sys_days to_days(const civil_date& d) {
    return chr::sys_days{chr::year{d.year} / chr::month{d.month} / chr::day{d.day}};
}

civil_date from_days(chr::sys_days days) {
    chr::year_month_day ymd{days};
    return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day())};
}

}  // namespace

std::optional<civil_date> parse_da(std::string_view text) {
    if (text.size() != 8 || !all_digits(text)) return std::nullopt;
    auto num = [&](std::size_t pos, std::size_t len) {
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i) v = v * 10 + (text[i] - '0');
        return v;
    };
    civil_date d{num(0, 4), static_cast<unsigned>(num(4, 2)), static_cast<unsigned>(num(6, 2))};
    chr::year_month_day ymd{chr::year{d.year}, chr::month{d.month}, chr::day{d.day}};
    if (!ymd.ok()) return std::nullopt;
    return d;
}

std::string format_da(const civil_date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d%02u%02u", d.year, d.month, d.day);
    return buf;
}

std::string shift_date(std::string_view value, dicom::vr vr, int offset_days) {
    if (offset_days > max_shift_days || offset_days < -max_shift_days) {
        throw std::out_of_range("date shift of " + std::to_string(offset_days) + " days exceeds limit");
    }
    if (vr == dicom::vr::TM) return std::string(value);
    if (vr != dicom::vr::DA && vr != dicom::vr::DT) {
        throw unparseable_date("VR " + std::string(dicom::to_code(vr)) + " is not a date");
    }
    std::string_view date_part = value.substr(0, std::min<std::size_t>(8, value.size()));
    auto d = parse_da(date_part);
    if (!d) throw unparseable_date("unparseable date '" + std::string(value) + "'");
    std::string_view suffix = value.substr(date_part.size());
    if (vr == dicom::vr::DA && !suffix.empty()) {
        throw unparseable_date("unparseable date '" + std::string(value) + "'");
    }
    if (vr == dicom::vr::DT) {
        for (char c : suffix) {
            bool ok = (c >= '0' && c <= '9') || c == '.' || c == '+' || c == '-';
            if (!ok) throw unparseable_date("unparseable datetime '" + std::string(value) + "'");
        }
    }
    auto shifted = from_days(to_days(*d) + chr::days{offset_days});
    if (shifted.year < 0 || shifted.year > 9999) {
        throw unparseable_date("shifted date of '" + std::string(value) + "' leaves the 4-digit year range");
    }
    return format_da(shifted) + std::string(suffix);
}

std::optional<int> days_between(std::string_view from, std::string_view to) {
    auto a = parse_da(from);
    auto b = parse_da(to);
    if (!a || !b) return std::nullopt;
    return static_cast<int>((to_days(*b) - to_days(*a)).count());
}

}  // namespace dcmdeid::deid
