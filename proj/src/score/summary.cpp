#include "dcmdeid/score/summary.hpp"

#include "dcmdeid/util/csv.hpp"

#include <cmath>

namespace dcmdeid::score {

std::string_view to_string(aggregation_mode m) {
    return m == aggregation_mode::series_based ? "series" : "instance";
}

void score_summary::record(key::action_type action, std::size_t subcategory, double score) {
    auto& a = per_action[key::index_of(action)];
    bool passed = score >= 1.0;
    ++a.total;
    a.score_sum += score;
    (passed ? a.pass : a.errors) += 1;
    if (subcategory < per_category.size()) {
        auto& c = per_category[subcategory];
        ++c.total;
        (passed ? c.pass : c.fail) += 1;
    }
}

void score_summary::merge(const score_summary& other) {
    if (other.mode != mode) throw std::invalid_argument("cannot merge summaries of different modes");
    for (std::size_t i = 0; i < per_action.size(); ++i) {
        per_action[i].errors += other.per_action[i].errors;
        per_action[i].pass += other.per_action[i].pass;
        per_action[i].total += other.per_action[i].total;
        per_action[i].score_sum += other.per_action[i].score_sum;
    }
    for (std::size_t i = 0; i < per_category.size(); ++i) {
        per_category[i].fail += other.per_category[i].fail;
        per_category[i].pass += other.per_category[i].pass;
        per_category[i].total += other.per_category[i].total;
    }
}

action_tally score_summary::overall() const {
    action_tally t;
    for (const auto& a : per_action) {
        t.errors += a.errors;
        t.pass += a.pass;
        t.total += a.total;
        t.score_sum += a.score_sum;
    }
    return t;
}

score_summary summary_from_counts(const std::array<std::size_t, key::action_type_count>& errors,
                                  const std::array<std::size_t, key::action_type_count>& totals,
                                  aggregation_mode mode) {
    score_summary s;
    s.mode = mode;
    for (std::size_t i = 0; i < totals.size(); ++i) {
        if (errors[i] > totals[i]) throw std::invalid_argument("more errors than actions");
        s.per_action[i] = {errors[i], totals[i] - errors[i], totals[i], static_cast<double>(totals[i] - errors[i])};
    }
    return s;
}

double overall_accuracy(const score_summary& s) {
    auto t = s.overall();
    if (t.total == 0) return 0.0;
    return 100.0 * t.score_sum / static_cast<double>(t.total);
}

double normalized_accuracy(const score_summary& s) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& a : s.per_action) {
        if (a.total == 0) continue;
        sum += a.score_sum / static_cast<double>(a.total);
        ++n;
    }
    return n == 0 ? 0.0 : 100.0 * sum / static_cast<double>(n);
}

action_weights uniform_weights() {
    action_weights w;
    w.fill(1.0 / static_cast<double>(key::action_type_count));
    return w;
}

double weighted_accuracy(const score_summary& s, const action_weights& weights) {
    double total_weight = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw bad_weights("weights must be finite and nonnegative");
        total_weight += w;
    }
    if (std::fabs(total_weight - 1.0) > 1e-9) {
        throw bad_weights("weights sum to " + std::to_string(total_weight) + ", expected 1");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const auto& a = s.per_action[i];
        if (a.total == 0) continue;
        acc += weights[i] * a.score_sum / static_cast<double>(a.total);
    }
    return 100.0 * acc;
}

action_weights parse_weights(std::string_view csv_text) {
    action_weights w{};
    auto rows = util::parse_csv(csv_text);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (r == 0 && !row.empty() && row[0] == "action") continue;
        if (row.size() != 2) throw bad_weights("weights row " + std::to_string(r + 1) + " needs action,weight");
        auto a = key::action_type_from_string(row[0]);
        if (!a) throw bad_weights("unknown action '" + row[0] + "' in weights");
        try {
            std::size_t used = 0;
            w[key::index_of(*a)] = std::stod(row[1], &used);
            if (used != row[1].size()) throw std::invalid_argument(row[1]);
        } catch (const std::logic_error&) {
            throw bad_weights("bad weight '" + row[1] + "'");
        }
    }
    return w;
}

action_weights load_weights(const std::filesystem::path& path) { return parse_weights(util::read_text(path)); }

}  // namespace dcmdeid::score
