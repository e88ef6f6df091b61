#include "dcmdeid/score/scorer.hpp"
#include "dcmdeid/util/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace dcmdeid;
using namespace dcmdeid::score;
using dicom::data_element;
using dicom::dataset;
using dicom::vr;
using key::action_type;
namespace tags = dicom::tags;

namespace {

key::answer_key_entry make_entry(action_type a, std::string tag_ds, std::string answer_value,
                                 std::vector<std::string> tokens = {}) {
    key::answer_key_entry e;
    e.tag_ds = std::move(tag_ds);
    e.action = a;
    e.answer_value = std::move(answer_value);
    e.action_text = std::move(tokens);
    e.category = key::category::hipaa;
    e.subcategory = "HIPAA-A";
    e.patient = "P1";
    e.study = "1.1";
    e.series = "1.1.1";
    e.instance = "1.1.1.1";
    return e;
}

dicom::dicom_file file_with(std::initializer_list<data_element> elements) {
    dataset ds;
    ds.set(data_element::text(tags::sop_class_uid, vr::UI, "1.2.840.10008.5.1.4.1.1.2"));
    for (const auto& e : elements) ds.set(e);
    return dicom::make_file(ds);
}

dataset image(std::uint32_t n, std::uint8_t value) {
    dataset ds;
    ds.set(data_element::text(tags::sop_class_uid, vr::UI, "1.2.840.10008.5.1.4.1.1.7"));
    ds.set(data_element::integers(tags::rows, vr::US, {n}));
    ds.set(data_element::integers(tags::columns, vr::US, {n}));
    ds.set(data_element::integers(tags::bits_allocated, vr::US, {8}));
    dicom::byte_buffer px(static_cast<std::size_t>(n) * n);
    for (std::size_t i = 0; i < px.size(); ++i) px[i] = static_cast<std::uint8_t>(value + i % 7);
    ds.set(data_element::bytes(tags::pixel_data, vr::OB, px));
    return ds;
}

void fill_box(dataset& ds, const key::pixel_box& b, std::uint8_t v, std::uint32_t n) {
    auto px = *ds.find(tags::pixel_data)->as_bytes();
    for (auto y = b.y0; y < b.y1; ++y)
        for (auto x = b.x0; x < b.x1; ++x) px[y * n + x] = v;
    ds.set(data_element::bytes(tags::pixel_data, vr::OB, px));
}

check_context no_maps() { return {}; }

std::array<std::size_t, 10> t05_errors{1, 0, 0, 34, 0, 68, 103, 310, 1, 1};
std::array<std::size_t, 10> table_totals{2306, 429, 15, 29471, 121690, 85323, 5816, 254949, 40633, 40633};

}  // namespace

TEST_CASE("text_retained partial credit") {
    auto e = make_entry(action_type::text_retained, "(0008,1030)", "BREAST^ROUTINE for MASS for 311-25-3722",
                        {"BREAST^ROUTINE", "for", "MASS"});
    auto orig = file_with({data_element::text(tags::study_description, vr::LO, e.answer_value)});
    auto sub = file_with({data_element::text(tags::study_description, vr::LO, "BREAST^ROUTINE for 311-25-3722")});
    auto r = check_entry(e, orig, &sub, no_maps());
    CHECK(r.check_score == doctest::Approx(2.0 / 3.0));
    CHECK_FALSE(r.check_passed);
    CHECK(r.file_value == "BREAST^ROUTINE for 311-25-3722");

    auto rm = make_entry(action_type::text_removed, "(0008,1030)", e.answer_value, {"311-25-3722"});
    CHECK(check_entry(rm, orig, &sub, no_maps()).check_score == 0.0);
    auto cleaned = file_with({data_element::text(tags::study_description, vr::LO, "BREAST^ROUTINE for MASS for")});
    CHECK(check_entry(rm, orig, &cleaned, no_maps()).check_passed);
    CHECK(check_entry(e, orig, &cleaned, no_maps()).check_passed);
    // containment is whole-token
    auto glued = file_with({data_element::text(tags::study_description, vr::LO, "MASSIVE 311-25-37220")});
    CHECK(check_entry(rm, orig, &glued, no_maps()).check_passed);
    auto lower = file_with({data_element::text(tags::study_description, vr::LO, "breast^routine FOR mass")});
    CHECK(check_entry(e, orig, &lower, no_maps()).check_score == 0.0);
}

TEST_CASE("date_shifted") {
    auto e = make_entry(action_type::date_shifted, "(0008,0020)", "20000301");
    auto orig = file_with({data_element::text(tags::study_date, vr::DA, "20000301")});
    auto same = file_with({data_element::text(tags::study_date, vr::DA, "20000301")});
    CHECK(check_entry(e, orig, &same, no_maps()).check_score == 0.0);
    auto moved = file_with({data_element::text(tags::study_date, vr::DA, "19991120")});
    CHECK(check_entry(e, orig, &moved, no_maps()).check_passed);
    auto garbage = file_with({data_element::text(tags::study_date, vr::DA, "2000-03-01")});
    CHECK_FALSE(check_entry(e, orig, &garbage, no_maps()).check_passed);
    auto blank = file_with({data_element::text(tags::study_date, vr::DA, "")});
    CHECK_FALSE(check_entry(e, orig, &blank, no_maps()).check_passed);
    auto gone = file_with({});
    CHECK_FALSE(check_entry(e, orig, &gone, no_maps()).check_passed);
}

TEST_CASE("pixels_hidden scores the hidden share of boxes") {
    const std::uint32_t n = 32;
    auto e = make_entry(action_type::pixels_hidden, "(7FE0,0010)", "", {"JOHN"});
    e.region = {{0, 0, 8, 4}, {10, 20, 30, 28}};
    auto orig_ds = image(n, 10);
    auto orig = dicom::make_file(orig_ds);

    auto half = orig_ds;
    fill_box(half, e.region[0], 0, n);
    auto half_file = dicom::make_file(half);
    auto r = check_entry(e, orig, &half_file, no_maps());
    CHECK(r.check_score == 0.5);
    CHECK_FALSE(r.check_passed);

    auto both = half;
    fill_box(both, e.region[1], 255, n);
    auto both_file = dicom::make_file(both);
    CHECK(check_entry(e, orig, &both_file, no_maps()).check_passed);
    CHECK(check_entry(e, orig, &orig, no_maps()).check_score == 0.0);

    auto retained = make_entry(action_type::pixels_retained, "(7FE0,0010)", "");
    CHECK(check_entry(retained, orig, &orig, no_maps()).check_passed);
    CHECK_FALSE(check_entry(retained, orig, &half_file, no_maps()).check_passed);
}

TEST_CASE("binary header actions") {
    key::mapping_table patid(key::mapping_kind::patient_id);
    patid.add("P1", "ANON000000000001");
    key::mapping_table uids(key::mapping_kind::uid);
    uids.add("1.2.3", "2.25.99");
    check_context ctx{&patid, &uids};
    auto orig = file_with({data_element::text(tags::patient_id, vr::LO, "P1"),
                           data_element::text(tags::study_instance_uid, vr::UI, "1.2.3")});

    auto good = file_with({data_element::text(tags::patient_id, vr::LO, "ANON000000000001"),
                           data_element::text(tags::study_instance_uid, vr::UI, "2.25.99"),
                           data_element::text(tags::modality, vr::CS, "CT"),
                           data_element::empty(tags::accession_number, vr::SH)});
    auto bad = file_with({data_element::text(tags::patient_id, vr::LO, "P1"),
                          data_element::text(tags::study_instance_uid, vr::UI, "2.25.98")});

    auto pid = make_entry(action_type::patid_consistent, "(0010,0020)", "P1");
    CHECK(check_entry(pid, orig, &good, ctx).check_passed);
    CHECK_FALSE(check_entry(pid, orig, &bad, ctx).check_passed);

    auto changed = make_entry(action_type::uid_changed, "(0020,000D)", "1.2.3");
    CHECK(check_entry(changed, orig, &good, ctx).check_passed);
    CHECK(check_entry(changed, orig, &bad, ctx).check_passed);
    CHECK_FALSE(check_entry(changed, orig, &orig, ctx).check_passed);

    auto consistent = make_entry(action_type::uid_consistent, "(0020,000D)", "1.2.3");
    CHECK(check_entry(consistent, orig, &good, ctx).check_passed);
    CHECK_FALSE(check_entry(consistent, orig, &bad, ctx).check_passed);

    auto retained = make_entry(action_type::tag_retained, "(0008,0060)", "CT");
    CHECK(check_entry(retained, orig, &good, ctx).check_passed);
    CHECK_FALSE(check_entry(retained, orig, &bad, ctx).check_passed);

    auto notnull = make_entry(action_type::text_notnull, "(0008,0050)", "ACC1");
    CHECK_FALSE(check_entry(notnull, orig, &good, ctx).check_passed);
    auto filled = file_with({data_element::text(tags::accession_number, vr::SH, "X")});
    CHECK(check_entry(notnull, orig, &filled, ctx).check_passed);

    for (auto a : key::all_action_types) {
        auto e = make_entry(a, "(0010,0020)", "P1", {"P1"});
        if (a == action_type::pixels_hidden) e.region = {{0, 0, 1, 1}};
        auto r = check_entry(e, orig, nullptr, ctx);
        CHECK(r.check_score == 0.0);
        CHECK(r.note == "submitted instance missing");
    }
}

TEST_CASE("accuracy formulas") {
    SUBCASE("T-02 overall") {
        auto s = summary_from_counts({3, 0, 11, 7, 0, 74, 142, 196, 0, 0}, table_totals);
        CHECK(s.overall().total == 581265);
        CHECK(s.overall().errors == 433);
        CHECK(overall_accuracy(s) == doctest::Approx(100.0 * (581265 - 433) / 581265));
    }
    SUBCASE("T-05 normalized") {
        auto s = summary_from_counts(t05_errors, table_totals);
        double oracle = 0;
        for (std::size_t i = 0; i < 10; ++i) oracle += 1.0 - static_cast<double>(t05_errors[i]) / table_totals[i];
        oracle *= 10.0;
        CHECK(normalized_accuracy(s) == doctest::Approx(oracle));
        CHECK(std::abs(normalized_accuracy(s) - 99.79) <= 0.05);
        CHECK(weighted_accuracy(s, uniform_weights()) == doctest::Approx(normalized_accuracy(s)));
    }
    SUBCASE("one type fully failed") {
        std::array<std::size_t, 10> errors{};
        errors[4] = table_totals[4];
        auto s = summary_from_counts(errors, table_totals);
        CHECK(normalized_accuracy(s) == doctest::Approx(90.0));
        CHECK(normalized_accuracy(summary_from_counts({}, table_totals)) == doctest::Approx(100.0));
    }
    SUBCASE("weights") {
        score_summary s;
        s.record(action_type::tag_retained, 0, 1.0);
        s.record(action_type::text_removed, 0, 0.5);
        action_weights w{};
        w[key::index_of(action_type::tag_retained)] = 0.5;
        w[key::index_of(action_type::text_removed)] = 0.5;
        CHECK(weighted_accuracy(s, w) == doctest::Approx(75.0));
        action_weights one{};
        one[key::index_of(action_type::tag_retained)] = 1.0;
        CHECK(weighted_accuracy(s, one) == doctest::Approx(100.0));
        action_weights neg = w;
        neg[0] = -0.1;
        neg[key::index_of(action_type::tag_retained)] = 0.6;
        CHECK_THROWS_AS((void)weighted_accuracy(s, neg), bad_weights);
        action_weights short_sum{};
        short_sum[0] = 0.9;
        CHECK_THROWS_AS((void)weighted_accuracy(s, short_sum), bad_weights);
        action_weights nan_w{};
        nan_w[0] = std::nan("");
        CHECK_THROWS_AS((void)weighted_accuracy(s, nan_w), bad_weights);
    }
    SUBCASE("weights file") {
        auto w = parse_weights("action,weight\ntag_retained,0.25\ntext_removed,0.75\n");
        CHECK(w[key::index_of(action_type::tag_retained)] == 0.25);
        CHECK(w[key::index_of(action_type::text_removed)] == 0.75);
        CHECK(w[0] == 0.0);
        CHECK_THROWS_AS((void)parse_weights("action,weight\nnot_an_action,1\n"), bad_weights);
    }
    SUBCASE("empty summary") {
        score_summary s;
        CHECK(overall_accuracy(s) == 0.0);
        CHECK(normalized_accuracy(s) == 0.0);
    }
}

TEST_CASE("summary merge is associative and commutative") {
    util::rng r(31);
    auto random_summary = [&] {
        score_summary s;
        for (int i = 0; i < 50; ++i) {
            auto a = key::all_action_types[static_cast<std::size_t>(r.uniform(0, 9))];
            double score = key::is_fractional(a) ? static_cast<double>(r.uniform(0, 4)) / 4.0
                                                 : static_cast<double>(r.uniform(0, 1));
            s.record(a, static_cast<std::size_t>(r.uniform(0, 24)), score);
        }
        return s;
    };
    for (int k = 0; k < 20; ++k) {
        auto a = random_summary();
        auto b = random_summary();
        auto c = random_summary();
        auto ab = a;
        ab.merge(b);
        auto ba = b;
        ba.merge(a);
        CHECK(ab == ba);
        auto ab_c = ab;
        ab_c.merge(c);
        auto bc = b;
        bc.merge(c);
        auto a_bc = a;
        a_bc.merge(bc);
        for (std::size_t i = 0; i < 10; ++i) {
            CHECK(ab_c.per_action[i].total == a_bc.per_action[i].total);
            CHECK(ab_c.per_action[i].errors == a_bc.per_action[i].errors);
            CHECK(ab_c.per_action[i].score_sum == doctest::Approx(a_bc.per_action[i].score_sum));
        }
        CHECK(ab_c.per_category == a_bc.per_category);
    }
    score_summary inst;
    inst.mode = aggregation_mode::instance_based;
    score_summary ser;
    CHECK_THROWS((void)ser.merge(inst));
}

TEST_CASE("series aggregation takes the worst instance of each group") {
    util::rng r(77);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<key::answer_key_entry> entries;
        for (int i = 0; i < 200; ++i) {
            auto a = key::all_action_types[static_cast<std::size_t>(r.uniform(0, 9))];
            auto e = make_entry(a, r.pick(std::vector<std::string>{"(0010,0010)", "(0008,1030)"}),
                                r.pick(std::vector<std::string>{"x", "y"}), {"t"});
            e.series = "s" + std::to_string(r.uniform(0, 5));
            e.instance = e.series + "." + std::to_string(r.uniform(0, 4));
            e.subcategory = std::string(key::subcategories()[static_cast<std::size_t>(r.uniform(0, 24))].name);
            entries.push_back(e);
        }
        std::vector<check_result> per_entry;
        for (const auto& e : entries) {
            check_result c;
            c.entry = &e;
            c.check_score = key::is_fractional(e.action) ? static_cast<double>(r.uniform(0, 3)) / 3.0
                                                         : static_cast<double>(r.uniform(0, 1));
            if (r.chance(0.6)) c.check_score = 1.0;
            c.check_passed = c.check_score >= 1.0;
            per_entry.push_back(c);
        }

        // Oracle: group minimum via an independent map.
        std::map<std::string, double> group_min;
        for (const auto& c : per_entry) {
            auto k = c.entry->series + "|" + c.entry->tag_ds + "|" + std::string(key::to_string(c.entry->action)) +
                     "|" + c.entry->answer_value;
            auto it = group_min.find(k);
            if (it == group_min.end() || c.check_score < it->second) group_min[k] = c.check_score;
        }
        double oracle_sum = 0;
        std::size_t oracle_errors = 0;
        for (const auto& [k, v] : group_min) {
            oracle_sum += v;
            oracle_errors += v < 1.0;
        }

        auto series = aggregate(per_entry, aggregation_mode::series_based);
        auto instance = aggregate(per_entry, aggregation_mode::instance_based);
        REQUIRE(series.results.size() == group_min.size());
        REQUIRE(instance.results.size() == per_entry.size());
        CHECK(series.summary.overall().errors == oracle_errors);
        CHECK(series.summary.overall().score_sum == doctest::Approx(oracle_sum));
        CHECK(series.failed.size() == oracle_errors);

        for (auto a : key::all_action_types) {
            const auto& s = series.summary.of(a);
            const auto& i = instance.summary.of(a);
            CHECK(s.errors <= i.errors);
            CHECK(s.pass + s.errors == s.total);
            CHECK(i.pass + i.errors == i.total);
        }
        for (const auto& c : instance.summary.per_category) CHECK(c.pass + c.fail == c.total);

        double recomputed = 0;
        std::size_t units = 0;
        for (const auto& t : instance.summary.per_action) {
            recomputed += t.score_sum;
            units += t.total;
        }
        CHECK(std::abs(overall_accuracy(instance.summary) - 100.0 * recomputed / units) < 1e-9);
        for (const auto& c : instance.results) {
            CHECK(c.check_score >= 0.0);
            CHECK(c.check_score <= 1.0);
            if (!key::is_fractional(c.entry->action)) CHECK((c.check_score == 0.0 || c.check_score == 1.0));
        }

        auto again = aggregate(per_entry, aggregation_mode::series_based);
        REQUIRE(again.failed.size() == series.failed.size());
        for (std::size_t i = 0; i < again.failed.size(); ++i) CHECK(again.failed[i].entry == series.failed[i].entry);
        CHECK(again.summary == series.summary);
    }
}

TEST_CASE("scoring a small corpus") {
    key::mapping_table patid(key::mapping_kind::patient_id);
    patid.add("P1", "ANONAAAAAAAAAAAA");
    key::mapping_table uids(key::mapping_kind::uid);
    corpus_index originals;
    corpus_index submission;
    std::vector<key::answer_key_entry> entries;
    for (int i = 0; i < 3; ++i) {
        auto uid = "1.9." + std::to_string(i);
        auto anon = "2.25.1" + std::to_string(i);
        uids.add(uid, anon);
        originals.by_instance[uid] = {"o" + std::to_string(i) + ".dcm",
                                      file_with({data_element::text(tags::sop_instance_uid, vr::UI, uid),
                                                 data_element::text(tags::patient_id, vr::LO, "P1"),
                                                 data_element::text(tags::study_date, vr::DA, "20230415")})};
        submission.by_instance[anon] = {"s" + std::to_string(i) + ".dcm",
                                        file_with({data_element::text(tags::sop_instance_uid, vr::UI, anon),
                                                   data_element::text(tags::patient_id, vr::LO, "ANONAAAAAAAAAAAA"),
                                                   data_element::text(tags::study_date, vr::DA,
                                                                      i == 2 ? "20230415" : "20230101")})};
        auto pe = make_entry(action_type::patid_consistent, "(0010,0020)", "P1");
        pe.instance = uid;
        auto de = make_entry(action_type::date_shifted, "(0008,0020)", "20230415");
        de.instance = uid;
        auto ue = make_entry(action_type::uid_consistent, "(0008,0018)", uid);
        ue.instance = uid;
        entries.insert(entries.end(), {pe, de, ue});
    }
    key::answer_key k(entries);

    score_options inst;
    inst.mode = aggregation_mode::instance_based;
    auto by_instance = score_corpus(k, originals, submission, patid, uids, inst);
    CHECK(by_instance.results.size() == 9);
    CHECK(by_instance.failed.size() == 1);
    CHECK(overall_accuracy(by_instance.summary) == doctest::Approx(800.0 / 9.0));

    auto by_series = score_corpus(k, originals, submission, patid, uids, {});
    // patid and date group across the series; each uid answer_value is its own group
    CHECK(by_series.results.size() == 1 + 1 + 3);
    CHECK(by_series.failed.size() == 1);
    CHECK(by_series.summary.of(action_type::date_shifted).errors == 1);

    score_options parallel = inst;
    parallel.jobs = 4;
    auto again = score_corpus(k, originals, submission, patid, uids, parallel);
    CHECK(again.summary == by_instance.summary);

    score_options strict = inst;
    strict.strict_dates = true;
    auto strict_run = score_corpus(k, originals, submission, patid, uids, strict);
    CHECK(strict_run.summary.of(action_type::date_shifted).errors == 1);

    auto missing = submission;
    missing.by_instance.erase("2.25.11");
    auto partial = score_corpus(k, originals, missing, patid, uids, inst);
    CHECK(partial.failed.size() == 1 + 3);

    auto short_orig = originals;
    short_orig.by_instance.erase("1.9.0");
    CHECK_THROWS_AS((void)score_corpus(k, short_orig, submission, patid, uids, inst), key_corpus_mismatch);

    key::answer_key empty;
    auto none = score_corpus(empty, originals, submission, patid, uids, inst);
    CHECK(none.results.empty());
    CHECK(overall_accuracy(none.summary) == 0.0);
}

TEST_CASE("strict dates rejects two different shifts for one patient") {
    key::mapping_table patid(key::mapping_kind::patient_id);
    key::mapping_table uids(key::mapping_kind::uid);
    corpus_index originals;
    corpus_index submission;
    std::vector<key::answer_key_entry> entries;
    const char* shifted[] = {"20230101", "20221201"};
    for (int i = 0; i < 2; ++i) {
        auto uid = "1.8." + std::to_string(i);
        originals.by_instance[uid] = {"o.dcm", file_with({data_element::text(tags::sop_instance_uid, vr::UI, uid),
                                                          data_element::text(tags::study_date, vr::DA, "20230415")})};
        submission.by_instance[uid] = {"s.dcm", file_with({data_element::text(tags::sop_instance_uid, vr::UI, uid),
                                                           data_element::text(tags::study_date, vr::DA, shifted[i])})};
        auto de = make_entry(action_type::date_shifted, "(0008,0020)", "20230415");
        de.instance = uid;
        de.series = "1.8.s" + std::to_string(i);
        entries.push_back(de);
    }
    key::answer_key k(entries);
    score_options lax;
    lax.mode = aggregation_mode::instance_based;
    CHECK(score_corpus(k, originals, submission, patid, uids, lax).failed.empty());
    auto strict = lax;
    strict.strict_dates = true;
    auto out = score_corpus(k, originals, submission, patid, uids, strict);
    REQUIRE(out.failed.size() == 1);
    CHECK(out.failed[0].entry->instance == "1.8.1");
}
