/**
 * @file reports.hpp
 * @brief CSV sheets for a scoring run and the JSON form of a summary
 */
#pragma once

#include "dcmdeid/score/scorer.hpp"
#include "dcmdeid/score/summary.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace dcmdeid::report {

inline constexpr std::string_view scoring_file = "scoring.csv";
inline constexpr std::string_view actions_file = "actions.csv";
inline constexpr std::string_view categories_file = "categories.csv";
inline constexpr std::string_view discrepancy_file = "discrepancy.csv";
inline constexpr std::string_view summary_file = "summary.json";

/// Category,Errors,Pass,Total,Score with a single "All" row.
[[nodiscard]] std::string scoring_csv(const score::score_summary& s);

/// One row per action type in fixed order, then a Total row.
[[nodiscard]] std::string actions_csv(const score::score_summary& s);

/// One row per subcategory in fixed order, then a Total row.
[[nodiscard]] std::string categories_csv(const score::score_summary& s);

/// Failed checks sorted by patient, study, series, instance, tag, action.
[[nodiscard]] std::string discrepancy_csv(std::vector<score::check_result> failed);

void write_scoring_report(const score::score_summary& s, const std::filesystem::path& path);
void write_action_report(const score::score_summary& s, const std::filesystem::path& path);
void write_category_report(const score::score_summary& s, const std::filesystem::path& path);
void write_discrepancy_report(const std::vector<score::check_result>& failed, const std::filesystem::path& path);

[[nodiscard]] std::string summary_json(const score::score_summary& s);
[[nodiscard]] score::score_summary parse_summary_json(std::string_view text);

/// Writes the four sheets plus summary.json into `dir`.
void write_run(const score::score_outcome& outcome, const std::filesystem::path& dir);

/// Rewrites the three summary sheets from `dir`/summary.json.
void rewrite_sheets(const std::filesystem::path& dir);

}  // namespace dcmdeid::report
