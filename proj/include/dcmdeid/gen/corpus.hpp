/**
 * @file corpus.hpp
 * @brief Seeded synthetic corpus with planted identifiers and its answer key
 *
 * Layout under the output directory:
 *   <patient id>/<study uid>/<series uid>/<sop instance uid>.dcm
 *   key.csv, regions.csv, truth_patid.csv, truth_uid.csv
 */
#pragma once

#include "dcmdeid/deid/pixels.hpp"
#include "dcmdeid/deid/vault.hpp"
#include "dcmdeid/dicom/file.hpp"
#include "dcmdeid/key/answer_key.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcmdeid::gen {

class spec_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct count_range {
    unsigned lo{1};
    unsigned hi{1};
};

struct modality_share {
    std::string modality;  ///< CR, MR, CT, PET, DX, SR, MG, US
    double share{0.0};
};

/// Patient shares proportional to 33/79/60/44/32/31/37/36.
[[nodiscard]] std::vector<modality_share> default_modality_mix();

struct corpus_spec {
    std::size_t n_patients{20};
    std::vector<modality_share> modality_mix{default_modality_mix()};
    count_range studies_per_patient{1, 2};
    count_range series_per_study{1, 2};
    count_range instances_per_series{3, 10};
    /// Fraction of US and CR instances that carry burned-in text.
    double burnin_fraction{0.5};
    std::uint64_t seed{1};
};

/// Throws spec_error.
void validate(const corpus_spec& spec);

struct synthetic_identity {
    std::string first;
    std::string last;
    std::string name;  ///< LAST^FIRST
    std::string patient_id;
    std::string birth_date;  ///< DA
    std::string sex;
    std::string phone;
    std::string ssn;
    std::string address;
};

struct corpus_file {
    std::filesystem::path relative_path;
    dicom::dicom_file file;
};

struct corpus {
    std::vector<corpus_file> files;
    key::answer_key key;
    std::vector<deid::redaction_region> regions;
    /// What a vault seeded like the generator produces for this corpus.
    deid::mapping truth_patient_ids;
    deid::mapping truth_uids;
};

/// Deterministic in the corpus_spec alone.
[[nodiscard]] corpus build_corpus(const corpus_spec& spec);

struct corpus_paths {
    std::filesystem::path root;
    std::filesystem::path key;
    std::filesystem::path regions;
    std::filesystem::path truth_patient_ids;
    std::filesystem::path truth_uids;
};

[[nodiscard]] corpus_paths layout(const std::filesystem::path& root);

corpus_paths write_corpus(const corpus& c, const std::filesystem::path& out);

/// build_corpus + write_corpus.
corpus_paths generate(const corpus_spec& spec, const std::filesystem::path& out);

struct validation_report {
    std::vector<std::string> mismatches;
    [[nodiscard]] bool ok() const { return mismatches.empty(); }
};

class validation_failure : public std::runtime_error {
public:
    explicit validation_failure(validation_report report);
    [[nodiscard]] const validation_report& report() const { return report_; }

private:
    validation_report report_;
};

/// Compares every key entry's answer_value with the value in its file.
[[nodiscard]] validation_report self_validate(const std::filesystem::path& corpus_dir, const key::answer_key& key);
[[nodiscard]] validation_report self_validate(const corpus& c);

/// Throws validation_failure when self_validate finds mismatches.
void require_valid(const std::filesystem::path& corpus_dir, const key::answer_key& key);

}  // namespace dcmdeid::gen
