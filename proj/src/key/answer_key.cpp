#include "dcmdeid/key/answer_key.hpp"

#include "dcmdeid/util/csv.hpp"

#include <charconv>

namespace dcmdeid::key {

namespace {

const std::vector<std::size_t> no_positions;

std::uint32_t parse_u32(std::string_view s, std::string_view cell) {
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
        throw schema_error("bad region cell '" + std::string(cell) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto p = s.find(sep, start);
        out.push_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
        if (p == std::string_view::npos) break;
        start = p + 1;
    }
    return out;
}

void check_same(std::map<std::string, std::string, std::less<>>& parent_of, const std::string& child,
                const std::string& parent, const char* child_kind, const char* parent_kind) {
    auto [it, inserted] = parent_of.emplace(child, parent);
    if (!inserted && it->second != parent) {
        throw schema_error(std::string(child_kind) + " '" + child + "' appears under two " + parent_kind + "s ('" +
                           it->second + "', '" + parent + "')");
    }
}

}  // namespace

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ';';
        out += tokens[i];
    }
    return out;
}

std::vector<std::string> split_tokens(std::string_view cell) {
    std::vector<std::string> out;
    if (cell.empty()) return out;
    for (auto part : split(cell, ';')) {
        if (!part.empty()) out.emplace_back(part);
    }
    return out;
}

std::string format_region(const std::vector<pixel_box>& boxes) {
    std::string out;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        if (i) out += ';';
        const auto& b = boxes[i];
        out += std::to_string(b.x0) + "," + std::to_string(b.y0) + "," + std::to_string(b.x1) + "," +
               std::to_string(b.y1);
    }
    return out;
}

std::vector<pixel_box> parse_region(std::string_view cell) {
    std::vector<pixel_box> out;
    if (cell.empty()) return out;
    for (auto box : split(cell, ';')) {
        auto f = split(box, ',');
        if (f.size() != 4) throw schema_error("region box needs x0,y0,x1,y1: '" + std::string(cell) + "'");
        pixel_box b{parse_u32(f[0], cell), parse_u32(f[1], cell), parse_u32(f[2], cell), parse_u32(f[3], cell)};
        if (b.x0 >= b.x1 || b.y0 >= b.y1) throw schema_error("empty region box '" + std::string(box) + "'");
        out.push_back(b);
    }
    return out;
}

void validate_entry(const answer_key_entry& e) {
    bool needs_tokens = e.action == action_type::text_removed || e.action == action_type::text_retained ||
                        e.action == action_type::pixels_hidden;
    if (needs_tokens && e.action_text.empty()) {
        throw bad_action("entry " + std::to_string(e.index) + ": " + std::string(to_string(e.action)) +
                         " requires action_text tokens");
    }
    if ((e.action == action_type::pixels_hidden) != !e.region.empty()) {
        throw bad_action("entry " + std::to_string(e.index) + ": region must be present exactly for pixels_hidden");
    }
    auto sub = subcategory_index(e.subcategory);
    if (!sub) throw bad_subcategory("entry " + std::to_string(e.index) + ": unknown subcategory '" + e.subcategory + "'");
    if (subcategories()[*sub].category != e.category) {
        throw bad_subcategory("entry " + std::to_string(e.index) + ": subcategory '" + e.subcategory +
                              "' does not belong to category '" + std::string(to_string(e.category)) + "'");
    }
    if (e.instance.empty() || e.series.empty()) {
        throw schema_error("entry " + std::to_string(e.index) + ": instance and series are required");
    }
}

answer_key::answer_key(std::vector<answer_key_entry> entries) : entries_(std::move(entries)) {
    std::map<std::string, std::string, std::less<>> series_of_instance;
    std::map<std::string, std::string, std::less<>> study_of_series;
    std::map<std::string, std::string, std::less<>> patient_of_study;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        auto& e = entries_[i];
        validate_entry(e);
        if (auto sub = subcategory_index(e.subcategory)) e.subcategory = std::string(subcategories()[*sub].name);
        check_same(series_of_instance, e.instance, e.series, "instance", "series");
        check_same(study_of_series, e.series, e.study, "series", "study");
        check_same(patient_of_study, e.study, e.patient, "study", "patient");
        auto [it, fresh] = by_instance_.try_emplace(e.instance);
        if (fresh) instance_order_.push_back(e.instance);
        it->second.push_back(i);
        by_series_[e.series].push_back(i);
    }
}

const std::vector<std::size_t>& answer_key::positions_for_instance(std::string_view instance_uid) const {
    auto it = by_instance_.find(instance_uid);
    return it == by_instance_.end() ? no_positions : it->second;
}

const std::vector<std::size_t>& answer_key::positions_for_series(std::string_view series_uid) const {
    auto it = by_series_.find(series_uid);
    return it == by_series_.end() ? no_positions : it->second;
}

std::vector<answer_key_entry> entries_for_instance(const answer_key& key, std::string_view instance_uid) {
    std::vector<answer_key_entry> out;
    for (auto pos : key.positions_for_instance(instance_uid)) out.push_back(key.entries()[pos]);
    return out;
}

answer_key parse_answer_key(std::string_view csv_text) {
    auto rows = util::parse_csv(csv_text);
    if (rows.empty()) throw schema_error("answer key has no header row");
    const auto& header = rows.front();
    for (std::size_t c = 0; c < answer_key_columns.size(); ++c) {
        if (c >= header.size() || header[c] != answer_key_columns[c]) {
            throw schema_error("answer key column " + std::to_string(c + 1) + " must be '" +
                               std::string(answer_key_columns[c]) + "'");
        }
    }
    if (header.size() != answer_key_columns.size()) throw schema_error("answer key has extra columns");

    std::vector<answer_key_entry> entries;
    entries.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != answer_key_columns.size()) {
            throw schema_error("answer key row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                               " cells, expected " + std::to_string(answer_key_columns.size()));
        }
        answer_key_entry e;
        try {
            e.index = std::stoul(row[0]);
        } catch (const std::logic_error&) {
            throw schema_error("answer key row " + std::to_string(r) + ": bad index '" + row[0] + "'");
        }
        e.tag_ds = row[1];
        e.tag_name = row[2];
        e.answer_value = row[3];
        auto action = action_type_from_string(row[4]);
        if (!action) throw bad_action("answer key row " + std::to_string(r) + ": unknown action '" + row[4] + "'");
        e.action = *action;
        e.action_text = split_tokens(row[5]);
        auto cat = category_from_string(row[6]);
        if (!cat) throw schema_error("answer key row " + std::to_string(r) + ": unknown category '" + row[6] + "'");
        e.category = *cat;
        e.subcategory = row[7];
        e.modality = row[8];
        e.sop_class = row[9];
        e.patient = row[10];
        e.study = row[11];
        e.series = row[12];
        e.instance = row[13];
        e.file_name = row[14];
        e.region = parse_region(row[15]);
        entries.push_back(std::move(e));
    }
    return answer_key(std::move(entries));
}

answer_key load_answer_key(const std::filesystem::path& path) { return parse_answer_key(util::read_text(path)); }

std::string answer_key_csv(const answer_key& key) {
    std::string out = util::csv_line({answer_key_columns.begin(), answer_key_columns.end()}) + "\n";
    for (const auto& e : key.entries()) {
        out += util::csv_line({std::to_string(e.index), e.tag_ds, e.tag_name, e.answer_value,
                               std::string(to_string(e.action)), join_tokens(e.action_text),
                               std::string(to_string(e.category)), e.subcategory, e.modality, e.sop_class, e.patient,
                               e.study, e.series, e.instance, e.file_name, format_region(e.region)});
        out += '\n';
    }
    return out;
}

void write_answer_key(const std::filesystem::path& path, const answer_key& key) {
    util::write_text(path, answer_key_csv(key));
}

}  // namespace dcmdeid::key
