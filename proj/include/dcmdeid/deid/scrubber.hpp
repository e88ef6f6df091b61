/**
 * @file scrubber.hpp
 * @brief Token-level PHI scrubbing for free-text values
 *
 * A value is split on a delimiter set (whitespace plus ",", ";", "/" by
 * default; "^" is not a delimiter, so person-name tokens stay whole). A token
 * is removed when it matches one of the named patterns or equals, ignoring
 * case, a known identifier of the same patient.
 */
#pragma once

#include "dcmdeid/dicom/dataset.hpp"

#include <memory>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dcmdeid::deid {

inline constexpr std::string_view default_extra_delimiters = ",;/";

struct token_pattern {
    std::string name;
    std::regex matcher;
};

/// date-like, ssn-like, phone-like and id-like matchers.
[[nodiscard]] std::vector<token_pattern> default_patterns();

struct scrubber_config {
    std::vector<token_pattern> patterns = default_patterns();
    /// Upper-cased exact tokens; never empty strings.
    std::set<std::string> known_identifiers;
    /// Extra delimiters on top of ASCII whitespace.
    std::string extra_delimiters{default_extra_delimiters};

    /// Adds an identifier (upper-cased). Empty tokens are ignored.
    void add_identifier(std::string_view token);
};

/// Splits on whitespace plus `extra_delimiters`; empty tokens are dropped.
[[nodiscard]] std::vector<std::string> tokenize(std::string_view value,
                                                std::string_view extra_delimiters = default_extra_delimiters);

/// True when `token` appears as a whole token of `value`. Case-sensitive.
[[nodiscard]] bool contains_token(std::string_view value, std::string_view token,
                                  std::string_view extra_delimiters = default_extra_delimiters);

struct scrub_result {
    std::string cleaned;
    std::vector<std::string> removed;
};

[[nodiscard]] scrub_result scrub_text(std::string_view value, const scrubber_config& config);

/// Name of the first pattern matching the token, or empty.
[[nodiscard]] std::string matching_pattern(std::string_view token, const scrubber_config& config);

/// Identity fields of one patient's dataset (names with their "^" parts, IDs,
/// birth date, accession, phone numbers) as identifiers for `config`.
void harvest_identifiers(const dicom::dataset& ds, scrubber_config& config);

}  // namespace dcmdeid::deid
