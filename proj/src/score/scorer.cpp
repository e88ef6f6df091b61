#include "dcmdeid/score/scorer.hpp"

#include "dcmdeid/deid/dates.hpp"
#include "dcmdeid/dicom/errors.hpp"
#include "dcmdeid/util/files.hpp"
#include "dcmdeid/util/parallel.hpp"

#include <tuple>

namespace dcmdeid::score {

const dicom::dicom_file* corpus_index::find(std::string_view sop_uid) const {
    auto it = by_instance.find(sop_uid);
    return it == by_instance.end() ? nullptr : &it->second.file;
}

corpus_index index_corpus(const std::filesystem::path& root, dicom::parse_options options, unsigned jobs) {
    auto paths = util::list_dicom_files(root);
    std::vector<dicom::dicom_file> files(paths.size());
    util::parallel_for(paths.size(), jobs, [&](std::size_t i) { files[i] = dicom::read_file(paths[i], options); });

    corpus_index idx;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        auto uid = files[i].body.text(dicom::tags::sop_instance_uid).value_or("");
        if (uid.empty()) continue;
        auto [it, inserted] = idx.by_instance.try_emplace(uid, indexed_file{paths[i], std::move(files[i])});
        if (!inserted) {
            throw dicom::malformed_element("SOP Instance UID " + uid + " appears in both " + it->second.path.string() +
                                           " and " + paths[i].string());
        }
    }
    return idx;
}

namespace {

void enforce_single_shift(const key::answer_key& key, std::vector<check_result>& results) {
    std::map<std::string, int, std::less<>> reference;
    for (std::size_t i = 0; i < results.size(); ++i) {
        auto& r = results[i];
        const auto& e = key.entries()[i];
        if (e.action != key::action_type::date_shifted || !r.check_passed) continue;
        auto shift = deid::days_between(e.answer_value.substr(0, 8), std::string_view(r.file_value).substr(0, 8));
        if (!shift) continue;
        auto [it, first] = reference.try_emplace(e.patient, *shift);
        if (!first && it->second != *shift) {
            r.check_passed = false;
            r.check_score = 0.0;
            r.note = "shift differs from other dates of this patient";
        }
    }
}

}  // namespace

std::vector<check_result> check_all(const key::answer_key& key, const corpus_index& originals,
                                    const corpus_index& submission, const key::mapping_table& patid_map,
                                    const key::mapping_table& uid_map, const score_options& options) {
    const auto& instances = key.instances();
    for (const auto& uid : instances) {
        if (originals.find(uid) == nullptr) {
            throw key_corpus_mismatch("answer key instance " + uid + " is not in the original corpus");
        }
    }

    std::vector<check_result> results(key.size());
    check_context ctx{&patid_map, &uid_map};
    util::parallel_for(instances.size(), options.jobs, [&](std::size_t i) {
        const auto& uid = instances[i];
        const auto* original = originals.find(uid);
        const dicom::dicom_file* submitted = nullptr;
        if (auto mapped = uid_map.find(uid)) submitted = submission.find(*mapped);
        if (submitted == nullptr) submitted = submission.find(uid);
        for (auto pos : key.positions_for_instance(uid)) {
            results[pos] = check_entry(key.entries()[pos], *original, submitted, ctx);
        }
    });
    if (options.strict_dates) enforce_single_shift(key, results);
    return results;
}

score_outcome aggregate(const std::vector<check_result>& per_entry, aggregation_mode mode) {
    score_outcome out;
    out.summary.mode = mode;
    auto record = [&](const check_result& r) {
        const auto& e = *r.entry;
        out.summary.record(e.action, key::subcategory_index(e.subcategory).value_or(key::subcategory_count),
                           r.check_score);
        out.results.push_back(r);
        if (!r.check_passed) out.failed.push_back(r);
    };

    if (mode == aggregation_mode::instance_based) {
        for (const auto& r : per_entry) record(r);
        return out;
    }

    using group_key = std::tuple<std::string_view, std::string_view, key::action_type, std::string_view>;
    std::map<group_key, std::size_t> slot;
    std::vector<const check_result*> worst;
    for (const auto& r : per_entry) {
        const auto& e = *r.entry;
        group_key k{e.series, e.tag_ds, e.action, e.answer_value};
        auto [it, fresh] = slot.try_emplace(k, worst.size());
        if (fresh) {
            worst.push_back(&r);
        } else if (r.check_score < worst[it->second]->check_score) {
            worst[it->second] = &r;
        }
    }
    for (const auto* r : worst) record(*r);
    return out;
}

score_outcome score_corpus(const key::answer_key& key, const corpus_index& originals, const corpus_index& submission,
                           const key::mapping_table& patid_map, const key::mapping_table& uid_map,
                           const score_options& options) {
    return aggregate(check_all(key, originals, submission, patid_map, uid_map, options), options.mode);
}

}  // namespace dcmdeid::score
