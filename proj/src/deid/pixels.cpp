#include "dcmdeid/deid/pixels.hpp"

#include "dcmdeid/deid/errors.hpp"
#include "dcmdeid/util/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace dcmdeid::deid {

std::optional<pixel_geometry> geometry_of(const dicom::dataset& ds) {
    auto rows = ds.integer(dicom::tags::rows);
    auto cols = ds.integer(dicom::tags::columns);
    auto bits = ds.integer(dicom::tags::bits_allocated);
    if (!rows || !cols || !bits) return std::nullopt;
    if (*bits != 8 && *bits != 16) return std::nullopt;
    if (*rows <= 0 || *cols <= 0) return std::nullopt;
    return pixel_geometry{static_cast<std::uint32_t>(*rows), static_cast<std::uint32_t>(*cols),
                          static_cast<std::uint16_t>(*bits)};
}

void validate_region(const redaction_region& r, const pixel_geometry& g) {
    if (!(r.x0 < r.x1 && r.x1 <= g.columns && r.y0 < r.y1 && r.y1 <= g.rows)) {
        throw region_out_of_bounds("region [" + std::to_string(r.x0) + "," + std::to_string(r.x1) + ")x[" +
                                   std::to_string(r.y0) + "," + std::to_string(r.y1) + ") outside " +
                                   std::to_string(g.columns) + "x" + std::to_string(g.rows) + " image");
    }
}

std::uint16_t sample_at(std::span<const std::uint8_t> pixels, const pixel_geometry& g, std::uint32_t x,
                        std::uint32_t y) {
    std::size_t idx = (static_cast<std::size_t>(y) * g.columns + x) * g.bytes_per_sample();
    if (g.bits_allocated == 16) return static_cast<std::uint16_t>(pixels[idx] | (pixels[idx + 1] << 8));
    return pixels[idx];
}

dicom::byte_buffer redact_pixels(std::span<const std::uint8_t> pixels, const pixel_geometry& g,
                                 std::span<const redaction_region> regions, std::uint16_t fill) {
    if (pixels.size() < g.byte_size()) {
        throw std::invalid_argument("pixel buffer of " + std::to_string(pixels.size()) + " bytes, geometry needs " +
                                    std::to_string(g.byte_size()));
    }
    for (const auto& r : regions) validate_region(r, g);
    dicom::byte_buffer out(pixels.begin(), pixels.end());
    const auto bps = g.bytes_per_sample();
    for (const auto& r : regions) {
        for (auto y = r.y0; y < r.y1; ++y) {
            for (auto x = r.x0; x < r.x1; ++x) {
                std::size_t idx = (static_cast<std::size_t>(y) * g.columns + x) * bps;
                out[idx] = static_cast<std::uint8_t>(fill & 0xFF);
                if (bps == 2) out[idx + 1] = static_cast<std::uint8_t>(fill >> 8);
            }
        }
    }
    return out;
}

namespace {

std::uint32_t to_u32(const std::string& s, const char* what) {
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
        throw std::runtime_error(std::string("regions: bad ") + what + " '" + s + "'");
    }
    return v;
}

}  // namespace

std::vector<redaction_region> parse_regions_csv(std::string_view text) {
    auto rows = util::parse_csv(text);
    std::vector<redaction_region> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (i == 0 && !r.empty() && r[0] == "instance_uid") continue;
        if (r.size() != 5) throw std::runtime_error("regions: expected 5 columns on row " + std::to_string(i + 1));
        out.push_back({r[0], to_u32(r[1], "x0"), to_u32(r[2], "y0"), to_u32(r[3], "x1"), to_u32(r[4], "y1"), 0});
    }
    return out;
}

std::string regions_csv(std::span<const redaction_region> regions) {
    std::string out = "instance_uid,x0,y0,x1,y1\n";
    for (const auto& r : regions) {
        out += util::csv_line({r.instance_uid, std::to_string(r.x0), std::to_string(r.y0), std::to_string(r.x1),
                               std::to_string(r.y1)});
        out += '\n';
    }
    return out;
}

}  // namespace dcmdeid::deid
