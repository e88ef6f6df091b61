/**
 * @file summary.hpp
 * @brief Aggregated counts and the accuracy formulas over them
 */
#pragma once

#include "dcmdeid/key/action.hpp"

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace dcmdeid::score {

enum class aggregation_mode { series_based, instance_based };

[[nodiscard]] std::string_view to_string(aggregation_mode m);

/// An entry with 0 < score < 1 counts as an error; its credit lives in score_sum.
struct action_tally {
    std::size_t errors{0};
    std::size_t pass{0};
    std::size_t total{0};
    double score_sum{0.0};

    bool operator==(const action_tally&) const = default;
};

struct category_tally {
    std::size_t fail{0};
    std::size_t pass{0};
    std::size_t total{0};

    bool operator==(const category_tally&) const = default;
};

struct score_summary {
    aggregation_mode mode{aggregation_mode::series_based};
    std::array<action_tally, key::action_type_count> per_action{};
    std::array<category_tally, key::subcategory_count> per_category{};

    /// One scored unit (an entry, or a series group).
    void record(key::action_type action, std::size_t subcategory, double score);

    /// Associative, commutative; modes must match.
    void merge(const score_summary& other);

    /// Sum over actions.
    [[nodiscard]] action_tally overall() const;

    [[nodiscard]] const action_tally& of(key::action_type a) const { return per_action[key::index_of(a)]; }

    bool operator==(const score_summary&) const = default;
};

/// Builds a summary from per-action error and total counts, every error
/// being a full error (score 0). Category rows stay empty.
[[nodiscard]] score_summary summary_from_counts(const std::array<std::size_t, key::action_type_count>& errors,
                                                const std::array<std::size_t, key::action_type_count>& totals,
                                                aggregation_mode mode = aggregation_mode::series_based);

/// 100 * sum of scores / number of scored units. 0 when nothing was scored.
[[nodiscard]] double overall_accuracy(const score_summary& s);

/// 100 * mean over action types with total > 0 of score_sum / total.
[[nodiscard]] double normalized_accuracy(const score_summary& s);

class bad_weights : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using action_weights = std::array<double, key::action_type_count>;

[[nodiscard]] action_weights uniform_weights();

/// 100 * sum of weight * score_sum / total. Weights must be nonnegative and
/// sum to 1 within 1e-9; types with total 0 contribute nothing.
[[nodiscard]] double weighted_accuracy(const score_summary& s, const action_weights& weights);

/// CSV "action,weight" with header; omitted actions weigh 0.
[[nodiscard]] action_weights parse_weights(std::string_view csv_text);
[[nodiscard]] action_weights load_weights(const std::filesystem::path& path);

}  // namespace dcmdeid::score
