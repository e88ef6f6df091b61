#include "dcmdeid/dicom/dataset.hpp"

#include <sstream>

namespace dcmdeid::dicom {

data_element::data_element(dicom::tag t, dicom::vr v, element_value val)
    : tag(t), vr(v), value(std::move(val)) {}

data_element data_element::text(dicom::tag t, dicom::vr v, std::string s) {
    return {t, v, std::move(s)};
}

data_element data_element::integers(dicom::tag t, dicom::vr v, std::vector<std::int64_t> vals) {
    return {t, v, std::move(vals)};
}

data_element data_element::bytes(dicom::tag t, dicom::vr v, byte_buffer b) {
    return {t, v, std::move(b)};
}

data_element data_element::sequence(dicom::tag t, std::vector<dataset> items) {
    return {t, vr::SQ, std::move(items)};
}

data_element data_element::empty(dicom::tag t, dicom::vr v) {
    switch (kind_of(v)) {
        case value_kind::text: return {t, v, std::string{}};
        case value_kind::integers: return {t, v, std::vector<std::int64_t>{}};
        case value_kind::decimals: return {t, v, std::vector<double>{}};
        case value_kind::bytes: return {t, v, byte_buffer{}};
        case value_kind::sequence: return {t, v, std::vector<dataset>{}};
    }
    return {t, v, std::string{}};
}

bool data_element::is_empty() const {
    return std::visit([](const auto& v) { return v.empty(); }, value);
}

std::string data_element::display() const {
    std::ostringstream out;
    std::visit(
        [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
                out << v;
            } else if constexpr (std::is_same_v<T, byte_buffer>) {
                out << '<' << v.size() << " bytes>";
            } else if constexpr (std::is_same_v<T, std::vector<dataset>>) {
                out << '<' << v.size() << " items>";
            } else {
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) out << '\\';
                    out << v[i];
                }
            }
        },
        value);
    return out.str();
}

bool data_element::operator==(const data_element& other) const {
    return tag == other.tag && vr == other.vr && value == other.value;
}

const data_element* dataset::find(dicom::tag t) const {
    auto it = elements_.find(t);
    return it == elements_.end() ? nullptr : &it->second;
}

data_element* dataset::find(dicom::tag t) {
    auto it = elements_.find(t);
    return it == elements_.end() ? nullptr : &it->second;
}

void dataset::set(data_element e) {
    auto t = e.tag;
    elements_.insert_or_assign(t, std::move(e));
}

bool dataset::erase(dicom::tag t) { return elements_.erase(t) != 0; }

std::optional<std::string> dataset::text(dicom::tag t) const {
    const auto* e = find(t);
    if (e == nullptr) return std::nullopt;
    if (const auto* s = e->as_text()) return *s;
    return std::nullopt;
}

std::optional<std::int64_t> dataset::integer(dicom::tag t) const {
    const auto* e = find(t);
    if (e == nullptr) return std::nullopt;
    if (const auto* v = e->as_integers(); v != nullptr && !v->empty()) return v->front();
    if (const auto* s = e->as_text(); s != nullptr && !s->empty()) {
        try {
            return std::stoll(*s);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

const data_element* get_element(const dataset& ds, dicom::tag t) { return ds.find(t); }

std::string to_string(const element_path& path) {
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += '.';
        out += path[i].tag.str();
        if (path[i].item) out += '[' + std::to_string(*path[i].item) + ']';
    }
    return out;
}

namespace {

void walk_impl(const dataset& ds, element_path& prefix, const visitor& visit) {
    for (const auto& [t, e] : ds) {
        prefix.push_back({t, std::nullopt});
        visit(prefix, e);
        if (const auto* items = e.as_sequence()) {
            for (std::size_t i = 0; i < items->size(); ++i) {
                prefix.back().item = i;
                walk_impl((*items)[i], prefix, visit);
            }
            prefix.back().item.reset();
        }
        prefix.pop_back();
    }
}

}  // namespace

void walk(const dataset& ds, const visitor& visit) {
    element_path prefix;
    walk_impl(ds, prefix, visit);
}

std::vector<visit_record> walk(const dataset& ds) {
    std::vector<visit_record> out;
    walk(ds, [&out](const element_path& p, const data_element& e) { out.push_back({p, &e}); });
    return out;
}

}  // namespace dcmdeid::dicom
