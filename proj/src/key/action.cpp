#include "dcmdeid/key/action.hpp"

namespace dcmdeid::key {

namespace {

constexpr std::array<std::string_view, action_type_count> action_names{
    "date_shifted", "patid_consistent", "pixels_hidden", "pixels_retained", "tag_retained",
    "text_notnull", "text_removed",     "text_retained", "uid_changed",     "uid_consistent",
};

constexpr std::array<subcategory_row, subcategory_count> taxonomy{{
    {category::dicom, "DICOM-IOD-1"},
    {category::dicom, "DICOM-IOD-2"},
    {category::dicom, "DICOM-P15-BASIC-C"},
    {category::dicom, "DICOM-P15-BASIC-U"},
    {category::hipaa, "HIPAA-A"},
    {category::hipaa, "HIPAA-B"},
    {category::hipaa, "HIPAA-C"},
    {category::hipaa, "HIPAA-D"},
    {category::hipaa, "HIPAA-G"},
    {category::hipaa, "HIPAA-H"},
    {category::hipaa, "HIPAA-R"},
    {category::tcia, "TCIA-P15-BASIC-D"},
    {category::tcia, "TCIA-P15-BASIC-X"},
    {category::tcia, "TCIA-P15-BASIC-X/Z/D"},
    {category::tcia, "TCIA-P15-BASIC-Z"},
    {category::tcia, "TCIA-P15-BASIC-Z/D"},
    {category::tcia, "TCIA-P15-DESC-C"},
    {category::tcia, "TCIA-P15-DEV-C"},
    {category::tcia, "TCIA-P15-DEV-K"},
    {category::tcia, "TCIA-P15-MOD-C"},
    {category::tcia, "TCIA-P15-PAT-K"},
    {category::tcia, "TCIA-P15-PIX-K"},
    {category::tcia, "TCIA-PTKB-K"},
    {category::tcia, "TCIA-PTKB-X"},
    {category::tcia, "TCIA-REV"},
}};

}  // namespace

std::string_view to_string(action_type a) { return action_names[index_of(a)]; }

std::optional<action_type> action_type_from_string(std::string_view s) {
    // Keys in the wild sometimes wrap the action in angle brackets.
    if (s.size() >= 2 && s.front() == '<' && s.back() == '>') s = s.substr(1, s.size() - 2);
    for (std::size_t i = 0; i < action_names.size(); ++i) {
        if (action_names[i] == s) return all_action_types[i];
    }
    return std::nullopt;
}

std::string_view to_string(category c) {
    switch (c) {
        case category::dicom: return "dicom";
        case category::hipaa: return "hipaa";
        case category::tcia: return "tcia";
    }
    return "";
}

std::optional<category> category_from_string(std::string_view s) {
    if (s == "dicom") return category::dicom;
    if (s == "hipaa") return category::hipaa;
    if (s == "tcia") return category::tcia;
    return std::nullopt;
}

const std::array<subcategory_row, subcategory_count>& subcategories() { return taxonomy; }

std::optional<std::size_t> subcategory_index(std::string_view name) {
    if (name == "TCIA-P15-BASIC-X-Z-D") name = "TCIA-P15-BASIC-X/Z/D";
    if (name == "TCIA-P15-BASIC-Z-D") name = "TCIA-P15-BASIC-Z/D";
    for (std::size_t i = 0; i < taxonomy.size(); ++i) {
        if (taxonomy[i].name == name) return i;
    }
    return std::nullopt;
}

}  // namespace dcmdeid::key
