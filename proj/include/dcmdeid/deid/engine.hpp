/**
 * @file engine.hpp
 * @brief Applies a policy to one DICOM file
 */
#pragma once

#include "dcmdeid/deid/pixels.hpp"
#include "dcmdeid/deid/policy.hpp"
#include "dcmdeid/deid/scrubber.hpp"
#include "dcmdeid/deid/vault.hpp"
#include "dcmdeid/dicom/file.hpp"

#include <span>
#include <string>
#include <vector>

namespace dcmdeid::deid {

/// Audit record for one visited element.
struct applied_action {
    std::string path;
    dicom::tag tag;
    action_kind kind{action_kind::keep};
    std::string before_digest;
    std::string after_digest;  ///< empty when the element was removed
    std::string note;          ///< removed tokens, emptied-date notices
};

struct deid_result {
    dicom::dicom_file file;
    std::vector<applied_action> actions;
};

/// Walks every element (including sequence items) and applies its resolved
/// action. `scrub` is extended with identifiers harvested from this file's
/// own identity fields before free text is cleaned. Regions are matched on
/// the original SOP Instance UID. Dates are shifted by the offset derived
/// from the original Patient ID. File meta SOP class/instance UIDs are
/// rewritten to match the output dataset.
///
/// Throws policy_conflict, vault_collision, region_out_of_bounds.
[[nodiscard]] deid_result deidentify(const dicom::dicom_file& file, const deid_policy& policy,
                                     identity_vault& vault, const scrubber_config& scrub,
                                     std::span<const redaction_region> regions);

/// Audit rows as CSV: file,path,tag,action,before,after,note.
[[nodiscard]] std::string audit_csv(const std::string& file_label, const std::vector<applied_action>& actions,
                                    bool with_header);

}  // namespace dcmdeid::deid
