/**
 * @file answer_key.hpp
 * @brief Ground-truth action records and their CSV form
 *
 * Columns, in order: index, tag_ds, tag_name, answer_value, action,
 * action_text, category, subcategory, modality, class, patient, study,
 * series, instance, file_name, region.
 *
 * action_text holds semicolon-joined tokens. region holds
 * semicolon-joined "x0,y0,x1,y1" boxes and is set only for pixels_hidden.
 */
#pragma once

#include "dcmdeid/key/action.hpp"
#include "dcmdeid/key/errors.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dcmdeid::key {

inline constexpr std::array<std::string_view, 16> answer_key_columns{
    "index",    "tag_ds", "tag_name", "answer_value", "action", "action_text", "category", "subcategory",
    "modality", "class",  "patient",  "study",        "series", "instance",    "file_name", "region",
};

struct pixel_box {
    std::uint32_t x0{0};
    std::uint32_t y0{0};
    std::uint32_t x1{0};
    std::uint32_t y1{0};

    bool operator==(const pixel_box&) const = default;
};

struct answer_key_entry {
    std::size_t index{0};
    std::string tag_ds;  ///< "(GGGG,EEEE)"
    std::string tag_name;
    std::string answer_value;
    action_type action{action_type::tag_retained};
    std::vector<std::string> action_text;
    key::category category{key::category::dicom};
    std::string subcategory;
    std::string modality;
    std::string sop_class;
    std::string patient;
    std::string study;
    std::string series;
    std::string instance;
    std::string file_name;
    std::vector<pixel_box> region;

    bool operator==(const answer_key_entry&) const = default;
};

class answer_key {
public:
    answer_key() = default;

    /// Validates every entry and the patient/study/series/instance hierarchy,
    /// then builds the indexes. Throws bad_action, bad_subcategory, schema_error.
    explicit answer_key(std::vector<answer_key_entry> entries);

    [[nodiscard]] const std::vector<answer_key_entry>& entries() const { return entries_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] bool empty() const { return entries_.empty(); }

    /// Entry positions in key order.
    [[nodiscard]] const std::vector<std::size_t>& positions_for_instance(std::string_view instance_uid) const;
    [[nodiscard]] const std::vector<std::size_t>& positions_for_series(std::string_view series_uid) const;

    /// Instance UIDs in order of first appearance.
    [[nodiscard]] const std::vector<std::string>& instances() const { return instance_order_; }

    [[nodiscard]] const std::map<std::string, std::vector<std::size_t>, std::less<>>& by_instance() const {
        return by_instance_;
    }
    [[nodiscard]] const std::map<std::string, std::vector<std::size_t>, std::less<>>& by_series() const {
        return by_series_;
    }

private:
    std::vector<answer_key_entry> entries_;
    std::map<std::string, std::vector<std::size_t>, std::less<>> by_instance_;
    std::map<std::string, std::vector<std::size_t>, std::less<>> by_series_;
    std::vector<std::string> instance_order_;
};

/// Entries of one instance in key order; empty for unknown UIDs.
[[nodiscard]] std::vector<answer_key_entry> entries_for_instance(const answer_key& key, std::string_view instance_uid);

/// Throws bad_action when the entry breaks its action's invariants.
void validate_entry(const answer_key_entry& e);

[[nodiscard]] answer_key parse_answer_key(std::string_view csv_text);
[[nodiscard]] answer_key load_answer_key(const std::filesystem::path& path);

[[nodiscard]] std::string answer_key_csv(const answer_key& key);
void write_answer_key(const std::filesystem::path& path, const answer_key& key);

[[nodiscard]] std::string join_tokens(const std::vector<std::string>& tokens);
[[nodiscard]] std::vector<std::string> split_tokens(std::string_view cell);
[[nodiscard]] std::string format_region(const std::vector<pixel_box>& boxes);
[[nodiscard]] std::vector<pixel_box> parse_region(std::string_view cell);

}  // namespace dcmdeid::key
