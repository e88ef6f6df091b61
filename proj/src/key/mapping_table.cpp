#include "dcmdeid/key/mapping_table.hpp"

#include "dcmdeid/util/csv.hpp"

namespace dcmdeid::key {

void mapping_table::add(std::string original, std::string replacement) {
    if (forward_.count(original) != 0) throw duplicate_original("duplicate original '" + original + "'");
    if (auto it = reverse_.find(replacement); it != reverse_.end()) {
        throw non_injective("originals '" + it->second + "' and '" + original + "' share replacement '" +
                            replacement + "'");
    }
    if (forward_.count(replacement) != 0 || reverse_.count(original) != 0 || original == replacement) {
        throw non_injective("'" + (original == replacement ? original : replacement) +
                            "' is used both as an original and as a replacement");
    }
    reverse_.emplace(replacement, original);
    forward_.emplace(std::move(original), std::move(replacement));
}

std::optional<std::string> mapping_table::find(std::string_view original) const {
    auto it = forward_.find(original);
    if (it == forward_.end()) return std::nullopt;
    return it->second;
}

mapping_table parse_mapping(std::string_view csv_text, mapping_kind kind) {
    auto rows = util::parse_csv(csv_text);
    if (rows.empty() || rows[0] != util::csv_row{"original", "replacement"}) {
        throw schema_error("mapping file must start with header 'original,replacement'");
    }
    mapping_table table(kind);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 2) {
            throw schema_error("mapping row " + std::to_string(r) + " needs exactly two cells");
        }
        if (rows[r][0].empty() || rows[r][1].empty()) {
            throw schema_error("mapping row " + std::to_string(r) + " has an empty cell");
        }
        table.add(rows[r][0], rows[r][1]);
    }
    return table;
}

mapping_table load_mapping(const std::filesystem::path& path, mapping_kind kind) {
    return parse_mapping(util::read_text(path), kind);
}

}  // namespace dcmdeid::key
