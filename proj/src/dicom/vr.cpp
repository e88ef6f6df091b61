#include "dcmdeid/dicom/vr.hpp"

#include <algorithm>

namespace dcmdeid::dicom {

namespace {
constexpr std::array<std::string_view, 26> codes{
    "AE", "AS", "AT", "CS", "DA", "DS", "DT", "FD", "FL", "IS", "LO", "LT", "OB",
    "OW", "PN", "SH", "SL", "SQ", "SS", "ST", "TM", "UI", "UL", "UN", "US", "UT",
};
}  // namespace

std::string_view to_code(vr v) { return codes[static_cast<std::size_t>(v)]; }

vr vr_from_code(std::string_view code) {
    auto it = std::find(codes.begin(), codes.end(), code);
    if (it == codes.end()) return vr::UN;
    return all_vrs[static_cast<std::size_t>(it - codes.begin())];
}

value_kind kind_of(vr v) {
    switch (v) {
        case vr::AT:
        case vr::SL:
        case vr::SS:
        case vr::UL:
        case vr::US:
            return value_kind::integers;
        case vr::FD:
        case vr::FL:
            return value_kind::decimals;
        case vr::OB:
        case vr::OW:
        case vr::UN:
            return value_kind::bytes;
        case vr::SQ:
            return value_kind::sequence;
        default:
            return value_kind::text;
    }
}

bool has_long_length(vr v) {
    return v == vr::OB || v == vr::OW || v == vr::SQ || v == vr::UN || v == vr::UT;
}

bool code_has_long_length(std::string_view code) {
    static constexpr std::array<std::string_view, 13> long_codes{
        "OB", "OD", "OF", "OL", "OV", "OW", "SQ", "SV", "UC", "UN", "UR", "UT", "UV",
    };
    return std::find(long_codes.begin(), long_codes.end(), code) != long_codes.end();
}

}  // namespace dcmdeid::dicom
