#include "dcmdeid/report/reports.hpp"

#include "dcmdeid/util/csv.hpp"
#include "dcmdeid/util/format.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace dcmdeid::report {

namespace {

std::string csv_line(const util::csv_row& row) { return util::csv_line(row) + "\n"; }

std::string num(std::size_t n) { return std::to_string(n); }

}  // namespace

std::string scoring_csv(const score::score_summary& s) {
    auto t = s.overall();
    std::string out = csv_line({"Category", "Errors", "Pass", "Total", "Score"});
    out += csv_line({"All", num(t.errors), num(t.pass), num(t.total), util::percent(score::overall_accuracy(s))});
    return out;
}

std::string actions_csv(const score::score_summary& s) {
    std::string out = csv_line({"", "Action Type", "Errors", "Pass", "Total"});
    for (std::size_t i = 0; i < key::action_type_count; ++i) {
        const auto& a = s.per_action[i];
        out += csv_line({num(i + 1), std::string(key::to_string(key::all_action_types[i])), num(a.errors),
                         num(a.pass), num(a.total)});
    }
    auto t = s.overall();
    out += csv_line({"Total", "", num(t.errors), num(t.pass), num(t.total)});
    return out;
}

std::string categories_csv(const score::score_summary& s) {
    std::string out = csv_line({"", "", "Subcategory", "Fail", "Pass", "Total"});
    score::category_tally sum;
    const auto& rows = key::subcategories();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& c = s.per_category[i];
        out += csv_line({num(i + 1), std::string(key::to_string(rows[i].category)), std::string(rows[i].name),
                         num(c.fail), num(c.pass), num(c.total)});
        sum.fail += c.fail;
        sum.pass += c.pass;
        sum.total += c.total;
    }
    out += csv_line({"Total", "", "", num(sum.fail), num(sum.pass), num(sum.total)});
    return out;
}

std::string discrepancy_csv(std::vector<score::check_result> failed) {
    auto order = [](const score::check_result& r) {
        const auto& e = *r.entry;
        return std::tie(e.patient, e.study, e.series, e.instance, e.tag_ds, e.action);
    };
    std::stable_sort(failed.begin(), failed.end(),
                     [&](const auto& a, const auto& b) { return order(a) < order(b); });
    std::string out = csv_line({"index", "check_passed", "check_score", "tag_ds", "tag_name", "file_value",
                                "answer_value", "action", "action_text", "category", "subcategory", "modality",
                                "class", "patient", "study", "series", "instance", "file_name"});
    for (std::size_t i = 0; i < failed.size(); ++i) {
        const auto& r = failed[i];
        const auto& e = *r.entry;
        out += csv_line({num(i), r.check_passed ? "1" : "0", util::fixed_half_even(r.check_score, 4),
                         e.tag_ds, e.tag_name, r.file_value, e.answer_value, std::string(key::to_string(e.action)),
                         key::join_tokens(e.action_text), std::string(key::to_string(e.category)), e.subcategory,
                         e.modality, e.sop_class, e.patient, e.study, e.series, e.instance, e.file_name});
    }
    return out;
}

void write_scoring_report(const score::score_summary& s, const std::filesystem::path& path) {
    util::write_text(path, scoring_csv(s));
}

void write_action_report(const score::score_summary& s, const std::filesystem::path& path) {
    util::write_text(path, actions_csv(s));
}

void write_category_report(const score::score_summary& s, const std::filesystem::path& path) {
    util::write_text(path, categories_csv(s));
}

void write_discrepancy_report(const std::vector<score::check_result>& failed, const std::filesystem::path& path) {
    util::write_text(path, discrepancy_csv(failed));
}

std::string summary_json(const score::score_summary& s) {
    nlohmann::ordered_json j;
    j["mode"] = std::string(score::to_string(s.mode));
    auto& actions = j["actions"];
    actions = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < key::action_type_count; ++i) {
        const auto& a = s.per_action[i];
        actions.push_back({{"action", key::to_string(key::all_action_types[i])},
                           {"errors", a.errors},
                           {"pass", a.pass},
                           {"total", a.total},
                           {"score_sum", a.score_sum}});
    }
    auto& cats = j["subcategories"];
    cats = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < key::subcategory_count; ++i) {
        const auto& c = s.per_category[i];
        cats.push_back({{"subcategory", key::subcategories()[i].name},
                        {"fail", c.fail},
                        {"pass", c.pass},
                        {"total", c.total}});
    }
    j["overall_accuracy"] = score::overall_accuracy(s);
    j["normalized_accuracy"] = score::normalized_accuracy(s);
    return j.dump(2) + "\n";
}

score::score_summary parse_summary_json(std::string_view text) {
    score::score_summary s;
    try {
        auto j = nlohmann::json::parse(text);
        auto mode = j.at("mode").get<std::string>();
        if (mode == "series") {
            s.mode = score::aggregation_mode::series_based;
        } else if (mode == "instance") {
            s.mode = score::aggregation_mode::instance_based;
        } else {
            throw std::runtime_error("unknown mode '" + mode + "'");
        }
        for (const auto& a : j.at("actions")) {
            auto type = key::action_type_from_string(a.at("action").get<std::string>());
            if (!type) throw std::runtime_error("unknown action in summary");
            auto& t = s.per_action[key::index_of(*type)];
            t.errors = a.at("errors").get<std::size_t>();
            t.pass = a.at("pass").get<std::size_t>();
            t.total = a.at("total").get<std::size_t>();
            t.score_sum = a.at("score_sum").get<double>();
        }
        for (const auto& c : j.at("subcategories")) {
            auto idx = key::subcategory_index(c.at("subcategory").get<std::string>());
            if (!idx) throw std::runtime_error("unknown subcategory in summary");
            auto& t = s.per_category[*idx];
            t.fail = c.at("fail").get<std::size_t>();
            t.pass = c.at("pass").get<std::size_t>();
            t.total = c.at("total").get<std::size_t>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("bad summary json: ") + e.what());
    }
    return s;
}

void write_run(const score::score_outcome& outcome, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_scoring_report(outcome.summary, dir / scoring_file);
    write_action_report(outcome.summary, dir / actions_file);
    write_category_report(outcome.summary, dir / categories_file);
    write_discrepancy_report(outcome.failed, dir / discrepancy_file);
    util::write_text(dir / summary_file, summary_json(outcome.summary));
}

void rewrite_sheets(const std::filesystem::path& dir) {
    auto s = parse_summary_json(util::read_text(dir / summary_file));
    write_scoring_report(s, dir / scoring_file);
    write_action_report(s, dir / actions_file);
    write_category_report(s, dir / categories_file);
}

}  // namespace dcmdeid::report
