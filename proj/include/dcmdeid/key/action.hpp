/**
 * @file action.hpp
 * @brief The ten scored action types and the category taxonomy
 */
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace dcmdeid::key {

/// Declaration order is the fixed row order of the Actions sheet.
enum class action_type : std::uint8_t {
    date_shifted,
    patid_consistent,
    pixels_hidden,
    pixels_retained,
    tag_retained,
    text_notnull,
    text_removed,
    text_retained,
    uid_changed,
    uid_consistent,
};

inline constexpr std::size_t action_type_count = 10;

inline constexpr std::array<action_type, action_type_count> all_action_types{
    action_type::date_shifted,  action_type::patid_consistent, action_type::pixels_hidden,
    action_type::pixels_retained, action_type::tag_retained,   action_type::text_notnull,
    action_type::text_removed,  action_type::text_retained,    action_type::uid_changed,
    action_type::uid_consistent,
};

[[nodiscard]] std::string_view to_string(action_type a);
[[nodiscard]] std::optional<action_type> action_type_from_string(std::string_view s);

/// Only these may earn fractional credit.
[[nodiscard]] constexpr bool is_fractional(action_type a) {
    return a == action_type::pixels_hidden || a == action_type::text_removed || a == action_type::text_retained;
}

[[nodiscard]] constexpr std::size_t index_of(action_type a) { return static_cast<std::size_t>(a); }

enum class category : std::uint8_t { dicom, hipaa, tcia };

[[nodiscard]] std::string_view to_string(category c);
[[nodiscard]] std::optional<category> category_from_string(std::string_view s);

struct subcategory_row {
    key::category category;
    std::string_view name;
};

inline constexpr std::size_t subcategory_count = 25;

/// Closed taxonomy in Categories-sheet order.
[[nodiscard]] const std::array<subcategory_row, subcategory_count>& subcategories();

/// Row index of a subcategory. Also accepts "TCIA-P15-BASIC-X-Z-D" and
/// "TCIA-P15-BASIC-Z-D" as spellings of the slash forms.
[[nodiscard]] std::optional<std::size_t> subcategory_index(std::string_view name);

}  // namespace dcmdeid::key
