#pragma once

#include "dcmdeid/key/errors.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace dcmdeid::key {

enum class mapping_kind { patient_id, uid };

/// original -> replacement; injective, and no original doubles as a replacement.
class mapping_table {
public:
    explicit mapping_table(mapping_kind kind) : kind_(kind) {}

    /// Throws duplicate_original, non_injective.
    void add(std::string original, std::string replacement);

    [[nodiscard]] std::optional<std::string> find(std::string_view original) const;
    [[nodiscard]] std::size_t size() const { return forward_.size(); }
    [[nodiscard]] mapping_kind kind() const { return kind_; }
    [[nodiscard]] const std::map<std::string, std::string, std::less<>>& forward() const { return forward_; }

private:
    mapping_kind kind_;
    std::map<std::string, std::string, std::less<>> forward_;
    std::map<std::string, std::string, std::less<>> reverse_;
};

/// Header "original,replacement" required. Throws schema_error,
/// duplicate_original, non_injective.
[[nodiscard]] mapping_table parse_mapping(std::string_view csv_text, mapping_kind kind);
[[nodiscard]] mapping_table load_mapping(const std::filesystem::path& path, mapping_kind kind);

}  // namespace dcmdeid::key
