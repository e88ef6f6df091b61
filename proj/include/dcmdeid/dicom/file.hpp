/**
 * @file file.hpp
 * @brief DICOM Part-10 file model plus parse/serialize
 *
 * Only the two uncompressed little-endian transfer syntaxes are accepted.
 * File meta (group 0002) is always explicit VR; its group length element is
 * derived on write and dropped on read.
 */
#pragma once

#include "dcmdeid/dicom/dataset.hpp"
#include "dcmdeid/dicom/errors.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace dcmdeid::dicom {

enum class transfer_syntax : std::uint8_t { explicit_vr_little_endian, implicit_vr_little_endian };

inline constexpr std::string_view explicit_vr_little_endian_uid = "1.2.840.10008.1.2.1";
inline constexpr std::string_view implicit_vr_little_endian_uid = "1.2.840.10008.1.2";

[[nodiscard]] std::string_view transfer_syntax_uid(transfer_syntax ts);

/// Throws unsupported_transfer_syntax for anything but the two supported UIDs.
[[nodiscard]] transfer_syntax transfer_syntax_from_uid(std::string_view uid);

struct dicom_file {
    std::array<std::uint8_t, 128> preamble{};
    dataset file_meta;
    dataset body;
    transfer_syntax syntax{transfer_syntax::explicit_vr_little_endian};

    bool operator==(const dicom_file&) const = default;
};

struct parse_options {
    /// Accept streams that start directly with group-0002 elements.
    bool lenient{false};
};

[[nodiscard]] dicom_file parse_file(std::span<const std::uint8_t> bytes, parse_options options = {});

/// Deterministic: ascending tags, even-length values, explicit element
/// lengths, undefined-length sequences and items with delimiters.
[[nodiscard]] byte_buffer serialize(const dicom_file& file);

[[nodiscard]] dicom_file read_file(const std::filesystem::path& path, parse_options options = {});
void write_file(const std::filesystem::path& path, const dicom_file& file);

/// Builds file meta for a dataset. SOP class/instance are copied from the body.
[[nodiscard]] dicom_file make_file(dataset body,
                                   transfer_syntax ts = transfer_syntax::explicit_vr_little_endian);

/// Keeps (0002,0002)/(0002,0003) in step with (0008,0016)/(0008,0018).
void sync_meta_with_body(dicom_file& file);

}  // namespace dcmdeid::dicom
