#pragma once

#include "dcmdeid/deid/policy.hpp"
#include "dcmdeid/dicom/file.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dcmdeid::cli {

enum exit_code : int {
    ok = 0,
    other_error = 1,
    usage_error = 2,
    data_error = 3,
    scoring_config_error = 4,
};

struct deid_request {
    std::filesystem::path in;
    std::filesystem::path out;
    deid::deid_policy policy;
    std::uint64_t seed{0};
    /// Redaction sidecar; none when unset.
    std::optional<std::filesystem::path> regions;
    dicom::parse_options parse;
    unsigned jobs{1};
};

struct deid_summary {
    std::size_t files{0};
    std::filesystem::path patient_ids;
    std::filesystem::path uids;
    std::filesystem::path audit;
};

/// De-identifies every *.dcm below `in` into
/// out/<patient id>/<study uid>/<series uid>/<sop uid>.dcm and writes
/// patid.csv, uid.csv and audit.csv next to them.
deid_summary deid_corpus(const deid_request& request);

/// argv without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace dcmdeid::cli
