#include "dcmdeid/deid/engine.hpp"

#include "dcmdeid/deid/dates.hpp"
#include "dcmdeid/deid/errors.hpp"
#include "dcmdeid/util/csv.hpp"
#include "dcmdeid/util/digest.hpp"

namespace dcmdeid::deid {

namespace {

constexpr std::string_view unknown_patient = "UNKNOWN-PATIENT";

std::string value_digest(const dicom::data_element& e) {
    if (const auto* b = e.as_bytes()) return util::short_hex_digest(*b);
    auto text = e.display();
    return util::short_hex_digest(
        std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::vector<std::string> split_values(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        auto bs = s.find('\\', start);
        out.push_back(s.substr(start, bs == std::string::npos ? std::string::npos : bs - start));
        if (bs == std::string::npos) break;
        start = bs + 1;
    }
    return out;
}

std::string join_values(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += '\\';
        out += parts[i];
    }
    return out;
}

class engine {
public:
    engine(const deid_policy& policy, identity_vault& vault, scrubber_config scrub,
           std::vector<redaction_region> regions, std::string patient_id, const dicom::dataset& top)
        : policy_(policy),
          vault_(vault),
          scrub_(std::move(scrub)),
          regions_(std::move(regions)),
          patient_id_(std::move(patient_id)),
          top_(top) {}

    dicom::dataset run(const dicom::dataset& in) {
        dicom::element_path path;
        return process(in, path);
    }

    std::vector<applied_action> take_actions() { return std::move(actions_); }

private:
    dicom::dataset process(const dicom::dataset& in, dicom::element_path& path) {
        dicom::dataset out;
        for (const auto& [t, e] : in) {
            std::optional<std::string> creator;
            if (t.is_private()) {
                if (t.is_private_creator()) {
                    creator = e.as_text() ? std::optional<std::string>(*e.as_text()) : std::nullopt;
                } else if (t.element >= 0x1000) {
                    creator = in.text({t.group, static_cast<std::uint16_t>(t.element >> 8)});
                }
            }
            auto action = policy_.resolve(t, e.vr, creator);
            check_legal(action, t, e.vr);

            path.push_back({t, std::nullopt});
            applied_action record{dicom::to_string(path), t, action.kind, value_digest(e), {}, {}};
            std::optional<dicom::data_element> result = apply(action, e, path, record.note);
            path.pop_back();

            if (result) {
                record.after_digest = value_digest(*result);
                out.set(std::move(*result));
            }
            actions_.push_back(std::move(record));
        }
        return out;
    }

    std::optional<dicom::data_element> apply(const policy_action& action, const dicom::data_element& e,
                                             dicom::element_path& path, std::string& note) {
        switch (action.kind) {
            case action_kind::keep: {
                if (const auto* items = e.as_sequence()) {
                    std::vector<dicom::dataset> out_items;
                    for (std::size_t i = 0; i < items->size(); ++i) {
                        path.back().item = i;
                        out_items.push_back(process((*items)[i], path));
                    }
                    path.back().item.reset();
                    return dicom::data_element::sequence(e.tag, std::move(out_items));
                }
                return e;
            }
            case action_kind::remove:
                return std::nullopt;
            case action_kind::empty:
                return dicom::data_element::empty(e.tag, e.vr);
            case action_kind::replace_fixed:
                return dicom::data_element::text(e.tag, e.vr, action.argument);
            case action_kind::hash_uid: {
                const auto& text = *e.as_text();
                if (text.empty()) return e;
                auto parts = split_values(text);
                for (auto& p : parts) p = vault_.remap_uid(p);
                return dicom::data_element::text(e.tag, e.vr, join_values(parts));
            }
            case action_kind::shift_date: {
                const auto& text = *e.as_text();
                if (text.empty() || e.vr == dicom::vr::TM) return e;
                int offset = vault_.derive_offset(patient_id_);
                auto parts = split_values(text);
                try {
                    for (auto& p : parts) p = shift_date(p, e.vr, offset);
                } catch (const unparseable_date&) {
                    note = "unparseable date emptied";
                    return dicom::data_element::empty(e.tag, e.vr);
                }
                return dicom::data_element::text(e.tag, e.vr, join_values(parts));
            }
            case action_kind::map_patient_id: {
                const auto& text = *e.as_text();
                if (text.empty()) return e;
                return dicom::data_element::text(e.tag, e.vr, vault_.map_patient_id(text));
            }
            case action_kind::clean_text: {
                auto r = scrub_text(*e.as_text(), scrub_);
                for (std::size_t i = 0; i < r.removed.size(); ++i) {
                    if (i) note += ';';
                    note += r.removed[i];
                }
                return dicom::data_element::text(e.tag, e.vr, std::move(r.cleaned));
            }
            case action_kind::redact_pixels: {
                if (regions_.empty()) return e;
                auto geometry = geometry_of(top_);
                if (!geometry) throw region_out_of_bounds("redaction regions given but image geometry is missing");
                const auto& bytes = *e.as_bytes();
                auto out = redact_pixels(bytes, *geometry, regions_, regions_.front().fill);
                note = std::to_string(regions_.size()) + " region(s) filled";
                return dicom::data_element::bytes(e.tag, e.vr, std::move(out));
            }
        }
        return e;
    }

    const deid_policy& policy_;
    identity_vault& vault_;
    scrubber_config scrub_;
    std::vector<redaction_region> regions_;
    std::string patient_id_;
    const dicom::dataset& top_;
    std::vector<applied_action> actions_;
};

}  // namespace

deid_result deidentify(const dicom::dicom_file& file, const deid_policy& policy, identity_vault& vault,
                       const scrubber_config& scrub, std::span<const redaction_region> regions) {
    auto sop = file.body.text(dicom::tags::sop_instance_uid).value_or("");
    std::vector<redaction_region> mine;
    for (const auto& r : regions) {
        if (!sop.empty() && r.instance_uid == sop) mine.push_back(r);
    }
    auto patient = file.body.text(dicom::tags::patient_id).value_or("");
    if (patient.empty()) patient = std::string(unknown_patient);

    scrubber_config local = scrub;
    harvest_identifiers(file.body, local);

    engine eng(policy, vault, std::move(local), std::move(mine), patient, file.body);
    deid_result result;
    result.file.preamble = file.preamble;
    result.file.syntax = file.syntax;
    result.file.file_meta = file.file_meta;
    result.file.body = eng.run(file.body);
    dicom::sync_meta_with_body(result.file);
    result.actions = eng.take_actions();
    return result;
}

std::string audit_csv(const std::string& file_label, const std::vector<applied_action>& actions, bool with_header) {
    std::string out;
    if (with_header) out += "file,path,tag,action,before,after,note\n";
    for (const auto& a : actions) {
        out += util::csv_line({file_label, a.path, a.tag.str(), std::string(to_string(a.kind)), a.before_digest,
                               a.after_digest, a.note});
        out += '\n';
    }
    return out;
}

}  // namespace dcmdeid::deid
