/**
 * @file check.hpp
 * @brief Per-entry verification of a submitted instance against the key
 */
#pragma once

#include "dcmdeid/dicom/file.hpp"
#include "dcmdeid/key/answer_key.hpp"
#include "dcmdeid/key/mapping_table.hpp"

#include <string>

namespace dcmdeid::score {

struct check_result {
    const key::answer_key_entry* entry{nullptr};
    bool check_passed{false};
    double check_score{0.0};
    std::string file_value;
    std::string note;
};

struct check_context {
    const key::mapping_table* patid_map{nullptr};
    const key::mapping_table* uid_map{nullptr};
};

/// `original` is the unmodified instance; `submitted` is null when the
/// de-identified counterpart is missing, which scores 0.
[[nodiscard]] check_result check_entry(const key::answer_key_entry& entry, const dicom::dicom_file& original,
                                       const dicom::dicom_file* submitted, const check_context& ctx);

/// True when every sample inside the box has one value.
[[nodiscard]] bool box_is_uniform(const dicom::dataset& ds, const key::pixel_box& box);

}  // namespace dcmdeid::score
