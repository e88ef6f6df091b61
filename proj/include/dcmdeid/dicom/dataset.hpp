/**
 * @file dataset.hpp
 * @brief In-memory DICOM object tree: data elements, datasets, traversal
 */
#pragma once

#include "dcmdeid/dicom/tag.hpp"
#include "dcmdeid/dicom/vr.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dcmdeid::dicom {

class dataset;

using byte_buffer = std::vector<std::uint8_t>;

/// Values are held in the representation matching the VR's value_kind.
/// Text keeps backslash-separated multiplicity inside one string and drops
/// trailing padding.
using element_value = std::variant<std::string, std::vector<std::int64_t>, std::vector<double>,
                                   byte_buffer, std::vector<dataset>>;

struct data_element {
    dicom::tag tag;
    dicom::vr vr{vr::UN};
    element_value value;

    data_element() = default;
    data_element(dicom::tag t, dicom::vr v, element_value val);

    static data_element text(dicom::tag t, dicom::vr v, std::string s);
    static data_element integers(dicom::tag t, dicom::vr v, std::vector<std::int64_t> vals);
    static data_element bytes(dicom::tag t, dicom::vr v, byte_buffer b);
    static data_element sequence(dicom::tag t, std::vector<dataset> items);
    /// Zero-length value of the VR's natural kind.
    static data_element empty(dicom::tag t, dicom::vr v);

    [[nodiscard]] bool is_empty() const;

    [[nodiscard]] const std::string* as_text() const { return std::get_if<std::string>(&value); }
    [[nodiscard]] const std::vector<std::int64_t>* as_integers() const {
        return std::get_if<std::vector<std::int64_t>>(&value);
    }
    [[nodiscard]] const std::vector<double>* as_decimals() const {
        return std::get_if<std::vector<double>>(&value);
    }
    [[nodiscard]] const byte_buffer* as_bytes() const { return std::get_if<byte_buffer>(&value); }
    [[nodiscard]] const std::vector<dataset>* as_sequence() const {
        return std::get_if<std::vector<dataset>>(&value);
    }
    [[nodiscard]] std::vector<dataset>* as_sequence() { return std::get_if<std::vector<dataset>>(&value); }

    /// Human-readable rendering used for reports: text as-is, numbers
    /// backslash-joined, binary as "<N bytes>", sequences as "<N items>".
    [[nodiscard]] std::string display() const;

    bool operator==(const data_element& other) const;
};

/// Elements of one nesting level, kept in ascending tag order.
class dataset {
public:
    using container = std::map<dicom::tag, data_element>;
    using const_iterator = container::const_iterator;

    [[nodiscard]] const data_element* find(dicom::tag t) const;
    [[nodiscard]] data_element* find(dicom::tag t);
    [[nodiscard]] bool contains(dicom::tag t) const { return elements_.count(t) != 0; }

    /// Inserts or replaces the element with the same tag.
    void set(data_element e);
    bool erase(dicom::tag t);

    /// Text value, if the element exists and is textual.
    [[nodiscard]] std::optional<std::string> text(dicom::tag t) const;
    /// First integer value, if the element exists and is numeric.
    [[nodiscard]] std::optional<std::int64_t> integer(dicom::tag t) const;

    [[nodiscard]] std::size_t size() const { return elements_.size(); }
    [[nodiscard]] bool empty() const { return elements_.empty(); }
    [[nodiscard]] const_iterator begin() const { return elements_.begin(); }
    [[nodiscard]] const_iterator end() const { return elements_.end(); }
    [[nodiscard]] const container& elements() const { return elements_; }
    [[nodiscard]] container& elements() { return elements_; }

    bool operator==(const dataset& other) const { return elements_ == other.elements_; }

private:
    container elements_;
};

/// Top-level lookup only; never descends into sequence items.
[[nodiscard]] const data_element* get_element(const dataset& ds, dicom::tag t);

struct path_step {
    dicom::tag tag;
    std::optional<std::size_t> item;  ///< set when the step enters a sequence item

    bool operator==(const path_step&) const = default;
};

/// Ancestors of a visited element: sequence tag + item index per level,
/// followed by the element's own tag.
using element_path = std::vector<path_step>;

/// "(0008,1140)[0].(0008,1155)"
[[nodiscard]] std::string to_string(const element_path& path);

using visitor = std::function<void(const element_path&, const data_element&)>;

/// Depth-first, tag-ordered traversal. A sequence element is visited before
/// the elements of its items.
void walk(const dataset& ds, const visitor& visit);

struct visit_record {
    element_path path;
    const data_element* element;
};

[[nodiscard]] std::vector<visit_record> walk(const dataset& ds);

}  // namespace dcmdeid::dicom
