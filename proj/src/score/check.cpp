#include "dcmdeid/score/check.hpp"

#include "dcmdeid/deid/dates.hpp"
#include "dcmdeid/deid/pixels.hpp"
#include "dcmdeid/deid/scrubber.hpp"

#include <algorithm>
#include <set>

namespace dcmdeid::score {

namespace {

using key::action_type;

double token_fraction(const std::vector<std::string>& expected, const std::string& value, bool want_present) {
    if (expected.empty()) return 1.0;
    auto tokens = deid::tokenize(value);
    std::set<std::string, std::less<>> present(tokens.begin(), tokens.end());
    std::size_t good = 0;
    for (const auto& t : expected) {
        if ((present.count(t) != 0) == want_present) ++good;
    }
    return static_cast<double>(good) / static_cast<double>(expected.size());
}

bool is_shifted_date(const dicom::data_element& e, const std::string& value, const std::string& original) {
    if (value.empty() || value == original) return false;
    std::string_view v = value;
    if (e.vr == dicom::vr::DT) {
        if (v.size() < 8) return false;
        auto rest = v.substr(8);
        if (!std::all_of(rest.begin(), rest.end(), [](char c) { return (c >= '0' && c <= '9') || c == '.' || c == '+' || c == '-'; })) {
            return false;
        }
        v = v.substr(0, 8);
    }
    return deid::parse_da(v).has_value();
}

const dicom::byte_buffer* pixel_bytes(const dicom::dicom_file& f) {
    const auto* e = f.body.find(dicom::tags::pixel_data);
    return e == nullptr ? nullptr : e->as_bytes();
}

}  // namespace

bool box_is_uniform(const dicom::dataset& ds, const key::pixel_box& box) {
    auto g = deid::geometry_of(ds);
    const auto* e = ds.find(dicom::tags::pixel_data);
    if (!g || e == nullptr || e->as_bytes() == nullptr) return false;
    const auto& px = *e->as_bytes();
    if (px.size() < g->byte_size()) return false;
    if (box.x0 >= box.x1 || box.y0 >= box.y1 || box.x1 > g->columns || box.y1 > g->rows) return false;
    auto first = deid::sample_at(px, *g, box.x0, box.y0);
    for (auto y = box.y0; y < box.y1; ++y) {
        for (auto x = box.x0; x < box.x1; ++x) {
            if (deid::sample_at(px, *g, x, y) != first) return false;
        }
    }
    return true;
}

check_result check_entry(const key::answer_key_entry& entry, const dicom::dicom_file& original,
                         const dicom::dicom_file* submitted, const check_context& ctx) {
    check_result r;
    r.entry = &entry;
    if (submitted == nullptr) {
        r.note = "submitted instance missing";
        return r;
    }

    dicom::tag t{};
    try {
        t = dicom::tag::parse(entry.tag_ds);
    } catch (const std::invalid_argument&) {
        r.note = "unparseable tag";
        return r;
    }
    const auto* elem = submitted->body.find(t);
    if (elem != nullptr) r.file_value = elem->display();

    double score = 0.0;
    switch (entry.action) {
        case action_type::date_shifted:
            score = elem != nullptr && is_shifted_date(*elem, r.file_value, entry.answer_value) ? 1.0 : 0.0;
            break;
        case action_type::patid_consistent: {
            const auto& orig = entry.answer_value.empty() ? entry.patient : entry.answer_value;
            auto expected = ctx.patid_map != nullptr ? ctx.patid_map->find(orig) : std::nullopt;
            if (!expected) r.note = "patient id not in mapping";
            score = elem != nullptr && expected && r.file_value == *expected ? 1.0 : 0.0;
            break;
        }
        case action_type::pixels_hidden: {
            if (entry.region.empty()) {
                score = 1.0;
                break;
            }
            std::size_t hidden = 0;
            for (const auto& box : entry.region) {
                if (box_is_uniform(submitted->body, box)) ++hidden;
            }
            score = static_cast<double>(hidden) / static_cast<double>(entry.region.size());
            break;
        }
        case action_type::pixels_retained: {
            const auto* a = pixel_bytes(original);
            const auto* b = pixel_bytes(*submitted);
            score = a != nullptr && b != nullptr && *a == *b ? 1.0 : 0.0;
            break;
        }
        case action_type::tag_retained:
            score = elem != nullptr ? 1.0 : 0.0;
            break;
        case action_type::text_notnull:
            score = elem != nullptr && !elem->is_empty() ? 1.0 : 0.0;
            break;
        case action_type::text_removed:
            score = token_fraction(entry.action_text, r.file_value, false);
            break;
        case action_type::text_retained:
            score = elem != nullptr ? token_fraction(entry.action_text, r.file_value, true) : 0.0;
            break;
        case action_type::uid_changed:
            score = !r.file_value.empty() && r.file_value != entry.answer_value ? 1.0 : 0.0;
            break;
        case action_type::uid_consistent: {
            auto expected = ctx.uid_map != nullptr ? ctx.uid_map->find(entry.answer_value) : std::nullopt;
            if (!expected) r.note = "uid not in mapping";
            score = expected && r.file_value == *expected ? 1.0 : 0.0;
            break;
        }
    }
    r.check_score = score;
    r.check_passed = score >= 1.0;
    return r;
}

}  // namespace dcmdeid::score
