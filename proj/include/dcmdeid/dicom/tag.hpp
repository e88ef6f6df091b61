/**
 * @file tag.hpp
 * @brief DICOM attribute tag (group, element)
 */
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace dcmdeid::dicom {

struct tag {
    std::uint16_t group{0};
    std::uint16_t element{0};

    constexpr tag() = default;
    constexpr tag(std::uint16_t g, std::uint16_t e) : group(g), element(e) {}

    constexpr auto operator<=>(const tag&) const = default;

    /// Odd groups belong to vendors.
    [[nodiscard]] constexpr bool is_private() const { return (group & 1U) != 0; }

    /// (gggg,0010)-(gggg,00FF) in an odd group reserve a private block.
    [[nodiscard]] constexpr bool is_private_creator() const {
        return is_private() && element >= 0x0010 && element <= 0x00FF;
    }

    [[nodiscard]] constexpr bool is_group_length() const { return element == 0x0000; }

    [[nodiscard]] constexpr std::uint32_t packed() const {
        return (static_cast<std::uint32_t>(group) << 16) | element;
    }

    static constexpr tag from_packed(std::uint32_t v) {
        return {static_cast<std::uint16_t>(v >> 16), static_cast<std::uint16_t>(v & 0xFFFF)};
    }

    /// Canonical "(GGGG,EEEE)", uppercase hex.
    [[nodiscard]] std::string str() const;

    /// Accepts "(gggg,eeee)", "gggg,eeee" or "ggggeeee", any hex case.
    /// Throws std::invalid_argument on malformed text.
    static tag parse(std::string_view text);
};

namespace tags {
// item encoding
inline constexpr tag item{0xFFFE, 0xE000};
inline constexpr tag item_delimitation{0xFFFE, 0xE00D};
inline constexpr tag sequence_delimitation{0xFFFE, 0xE0DD};

// file meta
inline constexpr tag meta_group_length{0x0002, 0x0000};
inline constexpr tag meta_version{0x0002, 0x0001};
inline constexpr tag media_storage_sop_class_uid{0x0002, 0x0002};
inline constexpr tag media_storage_sop_instance_uid{0x0002, 0x0003};
inline constexpr tag transfer_syntax_uid{0x0002, 0x0010};
inline constexpr tag implementation_class_uid{0x0002, 0x0012};

inline constexpr tag specific_character_set{0x0008, 0x0005};
inline constexpr tag image_type{0x0008, 0x0008};
inline constexpr tag sop_class_uid{0x0008, 0x0016};
inline constexpr tag sop_instance_uid{0x0008, 0x0018};
inline constexpr tag study_date{0x0008, 0x0020};
inline constexpr tag series_date{0x0008, 0x0021};
inline constexpr tag content_date{0x0008, 0x0023};
inline constexpr tag study_time{0x0008, 0x0030};
inline constexpr tag accession_number{0x0008, 0x0050};
inline constexpr tag modality{0x0008, 0x0060};
inline constexpr tag manufacturer{0x0008, 0x0070};
inline constexpr tag institution_name{0x0008, 0x0080};
inline constexpr tag institution_address{0x0008, 0x0081};
inline constexpr tag referring_physician_name{0x0008, 0x0090};
inline constexpr tag station_name{0x0008, 0x1010};
inline constexpr tag study_description{0x0008, 0x1030};
inline constexpr tag series_description{0x0008, 0x103E};
inline constexpr tag institutional_department_name{0x0008, 0x1040};
inline constexpr tag manufacturer_model_name{0x0008, 0x1090};
inline constexpr tag referenced_image_sequence{0x0008, 0x1140};
inline constexpr tag referenced_sop_class_uid{0x0008, 0x1150};
inline constexpr tag referenced_sop_instance_uid{0x0008, 0x1155};

inline constexpr tag patient_name{0x0010, 0x0010};
inline constexpr tag patient_id{0x0010, 0x0020};
inline constexpr tag patient_birth_date{0x0010, 0x0030};
inline constexpr tag patient_sex{0x0010, 0x0040};
inline constexpr tag other_patient_ids{0x0010, 0x1000};
inline constexpr tag other_patient_names{0x0010, 0x1001};
inline constexpr tag patient_age{0x0010, 0x1010};
inline constexpr tag patient_address{0x0010, 0x1040};
inline constexpr tag patient_telephone_numbers{0x0010, 0x2154};
inline constexpr tag additional_patient_history{0x0010, 0x21B0};

inline constexpr tag body_part_examined{0x0018, 0x0015};
inline constexpr tag device_serial_number{0x0018, 0x1000};
inline constexpr tag protocol_name{0x0018, 0x1030};

inline constexpr tag study_instance_uid{0x0020, 0x000D};
inline constexpr tag series_instance_uid{0x0020, 0x000E};
inline constexpr tag study_id{0x0020, 0x0010};
inline constexpr tag series_number{0x0020, 0x0011};
inline constexpr tag acquisition_number{0x0020, 0x0012};
inline constexpr tag instance_number{0x0020, 0x0013};
inline constexpr tag frame_of_reference_uid{0x0020, 0x0052};

inline constexpr tag samples_per_pixel{0x0028, 0x0002};
inline constexpr tag photometric_interpretation{0x0028, 0x0004};
inline constexpr tag rows{0x0028, 0x0010};
inline constexpr tag columns{0x0028, 0x0011};
inline constexpr tag bits_allocated{0x0028, 0x0100};
inline constexpr tag bits_stored{0x0028, 0x0101};
inline constexpr tag high_bit{0x0028, 0x0102};
inline constexpr tag pixel_representation{0x0028, 0x0103};

inline constexpr tag text_value{0x0040, 0xA160};
inline constexpr tag pixel_data{0x7FE0, 0x0010};
}  // namespace tags

}  // namespace dcmdeid::dicom

template <>
struct std::hash<dcmdeid::dicom::tag> {
    std::size_t operator()(const dcmdeid::dicom::tag& t) const noexcept {
        return std::hash<std::uint32_t>{}(t.packed());
    }
};
