#include "dcmdeid/deid/vault.hpp"

#include "dcmdeid/deid/errors.hpp"
#include "dcmdeid/util/csv.hpp"
#include "dcmdeid/util/digest.hpp"

#include <cctype>
#include <mutex>
#include <stdexcept>

namespace dcmdeid::deid {

bool is_valid_uid(std::string_view uid) {
    if (uid.empty() || uid.size() > max_uid_length) return false;
    if (uid.front() == '.' || uid.back() == '.') return false;
    char prev = '.';
    for (char c : uid) {
        if (c == '.') {
            if (prev == '.') return false;
        } else if (c < '0' || c > '9') {
            return false;
        }
        prev = c;
    }
    return true;
}

identity_vault::identity_vault(std::uint64_t seed, std::string uid_root)
    : seed_(seed), uid_root_(std::move(uid_root)) {
    if (!is_valid_uid(uid_root_) || uid_root_.size() > max_uid_length - 2) {
        throw invalid_uid("bad UID root '" + uid_root_ + "'");
    }
}

identity_vault::identity_vault(const identity_vault& other) : seed_(other.seed_), uid_root_(other.uid_root_) {
    std::shared_lock lock(other.mu_);
    uids_ = other.uids_;
    patient_ids_ = other.patient_ids_;
    offsets_ = other.offsets_;
}

std::string identity_vault::get_or_insert(table& t, std::string_view original, const std::string& candidate,
                                          const char* what) {
    std::unique_lock lock(mu_);
    if (auto it = t.forward.find(original); it != t.forward.end()) return it->second;
    if (t.replacements.count(candidate) != 0) {
        throw vault_collision(std::string(what) + " replacement '" + candidate + "' already assigned");
    }
    if (t.replacements.count(original) != 0 || t.forward.count(candidate) != 0 || candidate == original) {
        throw vault_collision(std::string(what) + " '" + std::string(original) +
                              "' overlaps an existing original/replacement");
    }
    t.forward.emplace(std::string(original), candidate);
    t.replacements.insert(candidate);
    return candidate;
}

std::string identity_vault::remap_uid(std::string_view uid) {
    if (uid.empty()) throw invalid_uid("empty UID");
    for (char c : uid) {
        if ((c < '0' || c > '9') && c != '.') throw invalid_uid("illegal character in UID '" + std::string(uid) + "'");
    }
    {
        std::shared_lock lock(mu_);
        if (auto it = uids_.forward.find(uid); it != uids_.forward.end()) return it->second;
    }
    auto digest = util::keyed_digest(seed_, "uid:" + std::string(uid));
    std::string candidate = uid_root_ + "." + util::to_decimal(util::to_u128(digest));
    if (candidate.size() > max_uid_length) candidate.resize(max_uid_length);
    while (candidate.back() == '.') candidate.pop_back();
    return get_or_insert(uids_, uid, candidate, "UID");
}

std::string identity_vault::map_patient_id(std::string_view patient_id) {
    if (patient_id.empty()) throw std::invalid_argument("empty patient ID");
    {
        std::shared_lock lock(mu_);
        if (auto it = patient_ids_.forward.find(patient_id); it != patient_ids_.forward.end()) return it->second;
    }
    auto digest = util::keyed_digest(seed_, "patid:" + std::string(patient_id));
    std::string hex = util::to_hex(std::span<const std::uint8_t>(digest.data(), 6));
    for (auto& c : hex) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return get_or_insert(patient_ids_, patient_id, "ANON" + hex, "patient ID");
}

int identity_vault::derive_offset(std::string_view patient_id) {
    if (patient_id.empty()) throw std::invalid_argument("empty patient ID");
    {
        std::shared_lock lock(mu_);
        if (auto it = offsets_.find(patient_id); it != offsets_.end()) return it->second;
    }
    auto digest = util::keyed_digest(seed_, "offset:" + std::string(patient_id));
    constexpr auto span = static_cast<unsigned>(max_date_offset - min_date_offset + 1);
    int offset = max_date_offset - static_cast<int>(util::to_u128(digest) % span);
    std::unique_lock lock(mu_);
    return offsets_.emplace(std::string(patient_id), offset).first->second;
}

mapping identity_vault::uid_table() const {
    std::shared_lock lock(mu_);
    return uids_.forward;
}

mapping identity_vault::patient_id_table() const {
    std::shared_lock lock(mu_);
    return patient_ids_.forward;
}

std::map<std::string, int, std::less<>> identity_vault::date_offsets() const {
    std::shared_lock lock(mu_);
    return offsets_;
}

std::string mapping_csv(const mapping& m) {
    std::string out = "original,replacement\n";
    for (const auto& [orig, repl] : m) {
        out += util::csv_line({orig, repl});
        out += '\n';
    }
    return out;
}

mapping_files export_mappings(const identity_vault& vault, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    mapping_files files{dir / "patid.csv", dir / "uid.csv"};
    util::write_text(files.patient_ids, mapping_csv(vault.patient_id_table()));
    util::write_text(files.uids, mapping_csv(vault.uid_table()));
    return files;
}

}  // namespace dcmdeid::deid
