#include "dcmdeid/deid/scrubber.hpp"

#include <algorithm>
#include <cctype>

namespace dcmdeid::deid {

namespace {

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

bool is_delimiter(char c, std::string_view extra) {
    return std::isspace(static_cast<unsigned char>(c)) != 0 || extra.find(c) != std::string_view::npos;
}

}  // namespace

std::vector<token_pattern> default_patterns() {
    auto make = [](const char* name, const char* re) {
        return token_pattern{name, std::regex(re, std::regex::ECMAScript | std::regex::optimize)};
    };
    return {
        make("ssn", R"(\d{3}-\d{2}-\d{4})"),
        make("phone", R"(\(?\d{3}\)?[-.]?\d{3}[-.]\d{4})"),
        make("date", R"((19|20)\d{6}|\d{4}[-.]\d{1,2}[-.]\d{1,2}|\d{1,2}[-.]\d{1,2}[-.]\d{2,4})"),
        make("id", R"(\d{6,}|(?=[A-Za-z0-9]*\d)(?=[A-Za-z0-9]*[A-Za-z])[A-Za-z0-9]{6,})"),
    };
}

void scrubber_config::add_identifier(std::string_view token) {
    if (!token.empty()) known_identifiers.insert(upper(token));
}

std::vector<std::string> tokenize(std::string_view value, std::string_view extra_delimiters) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < value.size()) {
        while (i < value.size() && is_delimiter(value[i], extra_delimiters)) ++i;
        std::size_t start = i;
        while (i < value.size() && !is_delimiter(value[i], extra_delimiters)) ++i;
        if (i > start) out.emplace_back(value.substr(start, i - start));
    }
    return out;
}

bool contains_token(std::string_view value, std::string_view token, std::string_view extra_delimiters) {
    auto toks = tokenize(value, extra_delimiters);
    return std::find(toks.begin(), toks.end(), token) != toks.end();
}

std::string matching_pattern(std::string_view token, const scrubber_config& config) {
    std::string t(token);
    for (const auto& p : config.patterns) {
        if (std::regex_match(t, p.matcher)) return p.name;
    }
    return {};
}

scrub_result scrub_text(std::string_view value, const scrubber_config& config) {
    scrub_result result;
    for (auto& tok : tokenize(value, config.extra_delimiters)) {
        bool phi = config.known_identifiers.count(upper(tok)) != 0 || !matching_pattern(tok, config).empty();
        if (phi) {
            result.removed.push_back(std::move(tok));
        } else {
            if (!result.cleaned.empty()) result.cleaned += ' ';
            result.cleaned += tok;
        }
    }
    return result;
}

void harvest_identifiers(const dicom::dataset& ds, scrubber_config& config) {
    using namespace dicom::tags;
    for (auto t : {patient_name, other_patient_names, referring_physician_name}) {
        auto v = ds.text(t);
        if (!v) continue;
        for (auto& name : tokenize(*v, "\\")) {
            config.add_identifier(name);
            std::size_t start = 0;
            while (start <= name.size()) {
                auto caret = name.find('^', start);
                auto part = name.substr(start, caret == std::string::npos ? std::string::npos : caret - start);
                if (part.size() >= 2) config.add_identifier(part);
                if (caret == std::string::npos) break;
                start = caret + 1;
            }
        }
    }
    for (auto t : {patient_id, other_patient_ids, patient_birth_date, accession_number, patient_telephone_numbers}) {
        auto v = ds.text(t);
        if (!v) continue;
        for (auto& tok : tokenize(*v, "\\")) config.add_identifier(tok);
    }
}

}  // namespace dcmdeid::deid
