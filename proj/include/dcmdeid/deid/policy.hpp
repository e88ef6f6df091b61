/**
 * @file policy.hpp
 * @brief Per-tag de-identification rules and their text format
 *
 * Policy text is line based, '#' starts a comment line:
 *
 *     default.standard = keep
 *     default.private  = remove
 *     vr.DA            = shift_date
 *     (0010,0010)      = replace ANONYMOUS
 *     (0008,0020)-(0008,0023) = shift_date
 *     private.keep     = (0009,"VENDOR CREATOR",01)
 *
 * Resolution order: exact tag, first matching range, then for private tags
 * the keep-list and default.private; for standard tags the VR rule and
 * default.standard.
 */
#pragma once

#include "dcmdeid/dicom/dataset.hpp"

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dcmdeid::deid {

enum class action_kind : std::uint8_t {
    keep,
    remove,
    replace_fixed,
    empty,
    hash_uid,
    shift_date,
    map_patient_id,
    clean_text,
    redact_pixels,
};

[[nodiscard]] std::string_view to_string(action_kind k);
[[nodiscard]] std::optional<action_kind> action_kind_from_string(std::string_view s);

struct policy_action {
    action_kind kind{action_kind::keep};
    std::string argument;  ///< replacement text for replace_fixed

    bool operator==(const policy_action&) const = default;
};

struct private_keep_entry {
    std::uint16_t group{0};
    std::string creator;
    std::uint8_t offset{0};  ///< low byte of the element number

    auto operator<=>(const private_keep_entry&) const = default;
};

struct range_rule {
    dicom::tag first;
    dicom::tag last;
    policy_action action;
};

/// Throws policy_conflict when `action` cannot apply to an element of `v`.
void check_legal(const policy_action& action, dicom::tag t, dicom::vr v);

struct deid_policy {
    std::map<dicom::tag, policy_action> rules;
    std::vector<range_rule> ranges;
    std::map<dicom::vr, policy_action> vr_rules;
    std::set<private_keep_entry> private_keep_list;
    policy_action default_standard{action_kind::keep, {}};
    policy_action default_private{action_kind::remove, {}};

    /// `creator` is the value of the private creator that reserves the
    /// element's block; ignored for standard tags.
    [[nodiscard]] policy_action resolve(dicom::tag t, dicom::vr v, const std::optional<std::string>& creator) const;

    /// Keep-all policy with keep defaults for both standard and private tags.
    [[nodiscard]] static deid_policy identity();
};

[[nodiscard]] deid_policy parse_policy(std::string_view text);
[[nodiscard]] deid_policy load_policy(const std::filesystem::path& path);

/// Text of the built-in conservative policy (also shipped as config/default.policy).
[[nodiscard]] std::string_view default_policy_text();
[[nodiscard]] const deid_policy& default_policy();

}  // namespace dcmdeid::deid
