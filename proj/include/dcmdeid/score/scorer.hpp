/**
 * @file scorer.hpp
 * @brief Scores a de-identified corpus against an answer key
 */
#pragma once

#include "dcmdeid/dicom/file.hpp"
#include "dcmdeid/key/answer_key.hpp"
#include "dcmdeid/key/mapping_table.hpp"
#include "dcmdeid/score/check.hpp"
#include "dcmdeid/score/summary.hpp"

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcmdeid::score {

/// The key names an instance the original corpus does not contain.
class key_corpus_mismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct indexed_file {
    std::filesystem::path path;
    dicom::dicom_file file;
};

/// Files keyed by SOP Instance UID.
struct corpus_index {
    std::map<std::string, indexed_file, std::less<>> by_instance;

    [[nodiscard]] const dicom::dicom_file* find(std::string_view sop_uid) const;
};

/// Parses every *.dcm below `root`. Files without a SOP Instance UID are
/// skipped; a repeated UID throws dicom::malformed_element.
[[nodiscard]] corpus_index index_corpus(const std::filesystem::path& root, dicom::parse_options options = {},
                                        unsigned jobs = 1);

struct score_options {
    aggregation_mode mode{aggregation_mode::series_based};
    /// Also require a single shift per patient for date_shifted.
    bool strict_dates{false};
    unsigned jobs{1};
};

struct score_outcome {
    score_summary summary;
    /// One per entry (instance mode) or per series group (series mode).
    std::vector<check_result> results;
    /// The failing subset of `results`, same order.
    std::vector<check_result> failed;
};

/// Throws key_corpus_mismatch when a keyed instance is absent from `originals`.
/// The key must outlive the outcome.
[[nodiscard]] score_outcome score_corpus(const key::answer_key& key, const corpus_index& originals,
                                         const corpus_index& submission, const key::mapping_table& patid_map,
                                         const key::mapping_table& uid_map, const score_options& options = {});

/// Per-entry results in key order, before any series grouping.
[[nodiscard]] std::vector<check_result> check_all(const key::answer_key& key, const corpus_index& originals,
                                                  const corpus_index& submission, const key::mapping_table& patid_map,
                                                  const key::mapping_table& uid_map, const score_options& options = {});

/// Folds per-entry results into series groups keyed by
/// (series, tag_ds, action, answer_value); a group scores its worst instance.
[[nodiscard]] score_outcome aggregate(const std::vector<check_result>& per_entry, aggregation_mode mode);

}  // namespace dcmdeid::score
