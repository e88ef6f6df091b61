/**
 * @file vault.hpp
 * @brief Consistent replacement tables for patient IDs, UIDs and date offsets
 *
 * Every replacement is a keyed digest of (seed, original), so two vaults with
 * the same seed agree regardless of the order in which originals arrive.
 * Tables are guarded for concurrent use: readers share, writers serialize.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>

namespace dcmdeid::deid {

inline constexpr std::string_view default_uid_root = "2.25";
inline constexpr std::size_t max_uid_length = 64;
inline constexpr int min_date_offset = -3650;
inline constexpr int max_date_offset = -1;

using mapping = std::map<std::string, std::string, std::less<>>;

[[nodiscard]] bool is_valid_uid(std::string_view uid);

class identity_vault {
public:
    explicit identity_vault(std::uint64_t seed, std::string uid_root = std::string(default_uid_root));

    identity_vault(const identity_vault& other);
    identity_vault& operator=(const identity_vault&) = delete;

    /// Same input, same output. Throws invalid_uid, vault_collision.
    std::string remap_uid(std::string_view uid);

    /// Throws std::invalid_argument on an empty ID, vault_collision.
    std::string map_patient_id(std::string_view patient_id);

    /// Uniform in [-3650, -1]; cached per patient.
    int derive_offset(std::string_view patient_id);

    [[nodiscard]] mapping uid_table() const;
    [[nodiscard]] mapping patient_id_table() const;
    [[nodiscard]] std::map<std::string, int, std::less<>> date_offsets() const;

    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] const std::string& uid_root() const { return uid_root_; }

private:
    struct table {
        mapping forward;
        std::set<std::string, std::less<>> replacements;
    };

    std::string get_or_insert(table& t, std::string_view original, const std::string& candidate, const char* what);

    std::uint64_t seed_;
    std::string uid_root_;
    mutable std::shared_mutex mu_;
    table uids_;
    table patient_ids_;
    std::map<std::string, int, std::less<>> offsets_;
};

/// "original,replacement" header, one row per mapping, sorted by original.
[[nodiscard]] std::string mapping_csv(const mapping& m);

struct mapping_files {
    std::filesystem::path patient_ids;
    std::filesystem::path uids;
};

/// Writes patid.csv and uid.csv into `dir`.
mapping_files export_mappings(const identity_vault& vault, const std::filesystem::path& dir);

}  // namespace dcmdeid::deid
