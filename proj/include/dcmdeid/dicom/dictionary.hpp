/**
 * @file dictionary.hpp
 * @brief Bounded data dictionary used for implicit-VR decoding and tag names
 *
 * Covers every tag the default policy, the corpus generator and the answer
 * key reference. Anything else decodes as UN.
 */
#pragma once

#include "dcmdeid/dicom/tag.hpp"
#include "dcmdeid/dicom/vr.hpp"

#include <optional>
#include <string_view>

namespace dcmdeid::dicom {

struct dictionary_entry {
    dicom::tag tag;
    dicom::vr vr;
    std::string_view keyword;
};

[[nodiscard]] std::optional<dictionary_entry> lookup(dicom::tag t);

/// VR for implicit decoding: dictionary hit, UL for group lengths, LO for
/// private creators, UN otherwise.
[[nodiscard]] vr implicit_vr(dicom::tag t);

/// Keyword, or "Unknown"/"PrivateCreator"/"PrivateTag".
[[nodiscard]] std::string_view tag_name(dicom::tag t);

}  // namespace dcmdeid::dicom
