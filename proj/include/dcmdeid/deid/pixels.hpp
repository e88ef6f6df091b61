/**
 * @file pixels.hpp
 * @brief Rectangle redaction over flat little-endian sample arrays
 */
#pragma once

#include "dcmdeid/dicom/dataset.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dcmdeid::deid {

struct pixel_geometry {
    std::uint32_t rows{0};
    std::uint32_t columns{0};
    std::uint16_t bits_allocated{8};  ///< 8 or 16

    [[nodiscard]] std::size_t bytes_per_sample() const { return bits_allocated == 16 ? 2 : 1; }
    [[nodiscard]] std::size_t sample_count() const { return static_cast<std::size_t>(rows) * columns; }
    [[nodiscard]] std::size_t byte_size() const { return sample_count() * bytes_per_sample(); }
};

/// Reads Rows, Columns and Bits Allocated; nullopt when any is missing or
/// bits is neither 8 nor 16.
[[nodiscard]] std::optional<pixel_geometry> geometry_of(const dicom::dataset& ds);

/// Half-open box [x0,x1) x [y0,y1) on one instance.
struct redaction_region {
    std::string instance_uid;
    std::uint32_t x0{0};
    std::uint32_t y0{0};
    std::uint32_t x1{0};
    std::uint32_t y1{0};
    std::uint16_t fill{0};

    bool operator==(const redaction_region&) const = default;
};

/// Throws region_out_of_bounds unless 0 <= x0 < x1 <= columns and 0 <= y0 < y1 <= rows.
void validate_region(const redaction_region& r, const pixel_geometry& g);

[[nodiscard]] std::uint16_t sample_at(std::span<const std::uint8_t> pixels, const pixel_geometry& g,
                                      std::uint32_t x, std::uint32_t y);

/// Sets every sample inside any region to `fill`; everything else is copied
/// bit-for-bit. Throws region_out_of_bounds, std::invalid_argument when the
/// buffer is shorter than the geometry requires.
[[nodiscard]] dicom::byte_buffer redact_pixels(std::span<const std::uint8_t> pixels, const pixel_geometry& g,
                                               std::span<const redaction_region> regions, std::uint16_t fill);

/// Sidecar rows "instance_uid,x0,y0,x1,y1" with a header line.
[[nodiscard]] std::vector<redaction_region> parse_regions_csv(std::string_view text);
[[nodiscard]] std::string regions_csv(std::span<const redaction_region> regions);

}  // namespace dcmdeid::deid
