#include "dcmdeid/deid/dates.hpp"
#include "dcmdeid/deid/engine.hpp"
#include "dcmdeid/deid/errors.hpp"
#include "dcmdeid/key/mapping_table.hpp"
#include "dcmdeid/util/csv.hpp"
#include "dcmdeid/util/digest.hpp"
#include "dcmdeid/util/rng.hpp"

#include "../support/temp_dir.hpp"

#include <doctest.h>

#include <set>
#include <thread>

using namespace dcmdeid;
using namespace dcmdeid::deid;
using dicom::data_element;
using dicom::dataset;
using dicom::tag;
using dicom::vr;
namespace tags = dicom::tags;

namespace {

// Calendar oracle: walks one day at a time with its own month table.
struct ymd {
    int y;
    int m;
    int d;
};

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int month_days(int y, int m) {
    static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && leap(y) ? 29 : days[m - 1];
}

ymd step(ymd v, int offset) {
    while (offset > 0) {
        if (++v.d > month_days(v.y, v.m)) {
            v.d = 1;
            if (++v.m > 12) {
                v.m = 1;
                ++v.y;
            }
        }
        --offset;
    }
    while (offset < 0) {
        if (--v.d < 1) {
            if (--v.m < 1) {
                v.m = 12;
                --v.y;
            }
            v.d = month_days(v.y, v.m);
        }
        ++offset;
    }
    return v;
}

std::string text_of(ymd v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%04d%02d%02d", v.y, v.m, v.d);
    return buf;
}

bool valid_uid_shape(const std::string& uid) {
    if (uid.empty() || uid.size() > 64) return false;
    for (char c : uid) {
        if ((c < '0' || c > '9') && c != '.') return false;
    }
    return uid.front() != '.' && uid.back() != '.';
}

dataset patient_dataset(const std::string& patient_id, const std::string& study_uid, const std::string& sop_uid) {
    dataset ds;
    ds.set(data_element::text(tags::sop_class_uid, vr::UI, "1.2.840.10008.5.1.4.1.1.2"));
    ds.set(data_element::text(tags::sop_instance_uid, vr::UI, sop_uid));
    ds.set(data_element::text(tags::study_date, vr::DA, "20230415"));
    ds.set(data_element::text(tags::content_date, vr::DA, "20230416"));
    ds.set(data_element::text(tags::patient_name, vr::PN, "DOE^JANE"));
    ds.set(data_element::text(tags::patient_id, vr::LO, patient_id));
    ds.set(data_element::text(tags::patient_birth_date, vr::DA, "19610312"));
    ds.set(data_element::text(tags::study_description, vr::LO, "BREAST^ROUTINE for MASS for 311-25-3722"));
    ds.set(data_element::text(tags::study_instance_uid, vr::UI, study_uid));
    return ds;
}

std::uint16_t sample(const dicom::byte_buffer& px, std::size_t i) { return px[i]; }

}  // namespace

TEST_CASE("date shifting matches a day-stepping oracle") {
    CHECK(shift_date("20230415", -100) == "20230105");
    CHECK(shift_date("20000301", 0) == "20000301");
    CHECK(shift_date("20240229", 365) == "20250228");
    CHECK(text_of(step({2024, 2, 29}, 365)) == "20250228");
    CHECK(text_of(step({2023, 4, 15}, -100)) == "20230105");

    util::rng r(99);
    for (int i = 0; i < 2000; ++i) {
        ymd start{static_cast<int>(r.uniform(1900, 2099)), static_cast<int>(r.uniform(1, 12)), 1};
        start.d = static_cast<int>(r.uniform(1, month_days(start.y, start.m)));
        int offset = static_cast<int>(r.uniform(-4000, 4000));
        REQUIRE(shift_date(text_of(start), offset) == text_of(step(start, offset)));
    }
}

TEST_CASE("date value forms") {
    CHECK(shift_date("20230415123000.5+0100", vr::DT, -1) == "20230414123000.5+0100");
    CHECK(shift_date("101500", vr::TM, -30) == "101500");
    CHECK_THROWS_AS((void)shift_date("2023-04-15", 3), unparseable_date);
    CHECK_THROWS_AS((void)shift_date("20230230", 3), unparseable_date);
    CHECK_THROWS_AS((void)shift_date("20230415", 36501), std::out_of_range);
    CHECK(days_between("20230101", "20230201") == 31);
    CHECK_FALSE(days_between("x", "20230201").has_value());
}

TEST_CASE("scrub_text examples") {
    scrubber_config cfg;
    auto r = scrub_text("BREAST^ROUTINE for MASS for 311-25-3722", cfg);
    CHECK(r.cleaned == "BREAST^ROUTINE for MASS for");
    CHECK(r.removed == std::vector<std::string>{"311-25-3722"});
    CHECK(matching_pattern("311-25-3722", cfg) == "ssn");

    auto empty = scrub_text("", cfg);
    CHECK(empty.cleaned.empty());
    CHECK(empty.removed.empty());

    scrubber_config known;
    known.add_identifier("DOE^JANE");
    auto seen = scrub_text("seen by DOE^JANE on 20230415", known);
    CHECK(seen.cleaned == "seen by on");
    CHECK(seen.removed == std::vector<std::string>{"DOE^JANE", "20230415"});

    auto lower = scrub_text("seen by doe^jane", known);
    CHECK(lower.removed == std::vector<std::string>{"doe^jane"});
}

TEST_CASE("scrub patterns") {
    scrubber_config cfg;
    CHECK(matching_pattern("555-123-4567", cfg) == "phone");
    CHECK(matching_pattern("(555)123-4567", cfg) == "phone");
    CHECK(matching_pattern("1961-03-12", cfg) == "date");
    CHECK(matching_pattern("03/12/1961", cfg).empty());  // '/' splits it first
    CHECK(matching_pattern("ACC12345678", cfg) == "id");
    CHECK(matching_pattern("1234567", cfg) == "id");
    CHECK(matching_pattern("ROUTINE", cfg).empty());
    CHECK(matching_pattern("T2-FLAIR", cfg).empty());
    CHECK(matching_pattern("T1", cfg).empty());
    CHECK(tokenize("a,b;c/d  e\tf") == std::vector<std::string>{"a", "b", "c", "d", "e", "f"});
    CHECK(tokenize("DOE^JANE") == std::vector<std::string>{"DOE^JANE"});
}

TEST_CASE("scrub soundness and conservatism on random text") {
    util::rng r(5);
    std::vector<std::string> pool{"for", "MASS", "311-25-3722", "DOE^JANE", "20230415", "scan", "555-201-0000",
                                  "ACC9876543", "left", "knee", "x", "doe^jane"};
    scrubber_config cfg;
    cfg.add_identifier("DOE^JANE");
    for (int i = 0; i < 500; ++i) {
        std::string text;
        auto n = r.uniform(0, 10);
        for (std::int64_t k = 0; k < n; ++k) {
            text += r.pick(pool);
            text += r.pick(std::vector<std::string>{" ", ",", "; ", "/", "  "});
        }
        auto res = scrub_text(text, cfg);
        auto input = tokenize(text);
        for (const auto& removed : res.removed) REQUIRE_FALSE(contains_token(res.cleaned, removed));
        for (const auto& kept : tokenize(res.cleaned)) {
            REQUIRE(std::find(input.begin(), input.end(), kept) != input.end());
        }
        REQUIRE(tokenize(res.cleaned).size() + res.removed.size() == input.size());
    }
}

TEST_CASE("identifier harvesting") {
    dataset ds;
    ds.set(data_element::text(tags::patient_name, vr::PN, "ZORVAN^ALDREN^Q"));
    ds.set(data_element::text(tags::patient_id, vr::LO, "PID1234567"));
    ds.set(data_element::text(tags::other_patient_ids, vr::LO, "311-25-3722\\OTHER9"));
    scrubber_config cfg;
    harvest_identifiers(ds, cfg);
    std::set<std::string> expected{"ZORVAN^ALDREN^Q", "ZORVAN", "ALDREN", "PID1234567", "311-25-3722", "OTHER9"};
    CHECK(cfg.known_identifiers == expected);
}

TEST_CASE("uid remapping") {
    identity_vault v(42);
    auto a = v.remap_uid("1.2.840.113619.2.55.3");
    CHECK(a == v.remap_uid("1.2.840.113619.2.55.3"));
    CHECK(valid_uid_shape(a));
    CHECK(a.rfind("2.25.", 0) == 0);
    CHECK(a != "1.2.840.113619.2.55.3");
    CHECK(identity_vault(42).remap_uid("1.2.840.113619.2.55.3") == a);
    CHECK(identity_vault(43).remap_uid("1.2.840.113619.2.55.3") != a);
    CHECK_THROWS_AS((void)v.remap_uid(""), invalid_uid);
    CHECK_THROWS_AS((void)v.remap_uid("1.2.a"), invalid_uid);

    identity_vault rooted(42, "1.2.826.0.1.3680043.10.1401.7");
    auto long_root = rooted.remap_uid("1.2.3");
    CHECK(valid_uid_shape(long_root));
    CHECK(long_root.rfind("1.2.826.0.1.3680043.10.1401.7.", 0) == 0);
}

TEST_CASE("uid remapping is injective over 10^5 inputs") {
    identity_vault v(7);
    util::rng r(11);
    std::set<std::string> inputs;
    std::set<std::string> outputs;
    while (inputs.size() < 100000) {
        auto uid = "1.2.840." + std::to_string(r.uniform(1, 99999)) + "." + std::to_string(r.next() >> 8);
        if (!inputs.insert(uid).second) continue;
        auto out = v.remap_uid(uid);
        REQUIRE(valid_uid_shape(out));
        outputs.insert(out);
    }
    CHECK(outputs.size() == inputs.size());
}

TEST_CASE("date offsets") {
    identity_vault v(3);
    CHECK(v.derive_offset("P1") == v.derive_offset("P1"));
    util::rng r(8);
    std::set<int> seen;
    for (int i = 0; i < 10000; ++i) {
        int off = v.derive_offset("ID" + std::to_string(r.next()));
        REQUIRE(off >= -3650);
        REQUIRE(off <= -1);
        seen.insert(off);
    }
    CHECK(seen.size() > 2000);

    // Independent derivation: -1 - (digest mod 3650) for two fixed IDs.
    auto oracle = [](std::uint64_t seed, const std::string& id) {
        auto d = util::keyed_digest(seed, "offset:" + id);
        return -1 - static_cast<int>(util::to_u128(d) % 3650);
    };
    identity_vault w(3);
    CHECK(w.derive_offset("PID0000001") == oracle(3, "PID0000001"));
    CHECK(w.derive_offset("PID0000002") == oracle(3, "PID0000002"));
    CHECK(oracle(3, "PID0000001") != oracle(3, "PID0000002"));
    CHECK_THROWS_AS((void)w.derive_offset(""), std::invalid_argument);
}

TEST_CASE("patient id mapping") {
    identity_vault v(1);
    auto a = v.map_patient_id("P001");
    CHECK(a.size() == 16);
    CHECK(a.rfind("ANON", 0) == 0);
    CHECK(v.map_patient_id("P001") == a);
    CHECK(v.map_patient_id("P002") != a);
    CHECK_THROWS_AS((void)v.map_patient_id(""), std::invalid_argument);
}

TEST_CASE("vault is safe under concurrent use") {
    identity_vault shared(9);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&shared] {
            for (int i = 0; i < 2000; ++i) {
                (void)shared.remap_uid("1.2.3." + std::to_string(i));
                (void)shared.map_patient_id("P" + std::to_string(i % 300));
                (void)shared.derive_offset("P" + std::to_string(i % 300));
            }
        });
    }
    for (auto& t : threads) t.join();
    identity_vault serial(9);
    for (int i = 0; i < 2000; ++i) {
        (void)serial.remap_uid("1.2.3." + std::to_string(i));
        (void)serial.map_patient_id("P" + std::to_string(i % 300));
        (void)serial.derive_offset("P" + std::to_string(i % 300));
    }
    CHECK(shared.uid_table() == serial.uid_table());
    CHECK(shared.patient_id_table() == serial.patient_id_table());
    CHECK(shared.date_offsets() == serial.date_offsets());
}

TEST_CASE("mapping export") {
    testsupport::temp_dir dir;
    SUBCASE("empty vault writes headers only") {
        identity_vault v(1);
        auto files = export_mappings(v, dir.path());
        CHECK(util::read_text(files.patient_ids) == "original,replacement\n");
        CHECK(util::read_text(files.uids) == "original,replacement\n");
    }
    SUBCASE("three patients and nine uids") {
        identity_vault v(1);
        for (int p = 0; p < 3; ++p) (void)v.map_patient_id("P00" + std::to_string(p));
        for (int u = 0; u < 9; ++u) (void)v.remap_uid("1.2.3." + std::to_string(u));
        auto files = export_mappings(v, dir.path());
        CHECK(util::read_csv(files.patient_ids).size() == 1 + 3);
        CHECK(util::read_csv(files.uids).size() == 1 + 9);
        auto patid = key::load_mapping(files.patient_ids, key::mapping_kind::patient_id);
        auto uids = key::load_mapping(files.uids, key::mapping_kind::uid);
        CHECK(patid.forward() == v.patient_id_table());
        CHECK(uids.forward() == v.uid_table());
    }
}

TEST_CASE("pixel redaction") {
    pixel_geometry g{100, 100, 8};
    dicom::byte_buffer px(g.byte_size());
    util::rng r(4);
    for (auto& b : px) b = static_cast<std::uint8_t>(r.uniform(1, 255));

    SUBCASE("no regions is the identity") {
        CHECK(redact_pixels(px, g, {}, 0) == px);
    }
    SUBCASE("one 10x10 box changes exactly 100 samples, nothing outside") {
        std::vector<redaction_region> regions{{"1.2", 20, 30, 30, 40, 0}};
        auto out = redact_pixels(px, g, regions, 0);
        std::size_t changed = 0;
        for (std::size_t i = 0; i < px.size(); ++i) {
            std::uint32_t x = static_cast<std::uint32_t>(i % 100);
            std::uint32_t y = static_cast<std::uint32_t>(i / 100);
            bool inside = x >= 20 && x < 30 && y >= 30 && y < 40;
            if (out[i] != px[i]) ++changed;
            if (!inside) REQUIRE(out[i] == px[i]);
            if (inside) REQUIRE(sample(out, i) == 0);
        }
        CHECK(changed == 100);
    }
    SUBCASE("overlapping boxes fill the union and are idempotent") {
        std::vector<redaction_region> regions{{"1.2", 0, 0, 10, 10, 0}, {"1.2", 5, 5, 15, 15, 0}};
        auto once = redact_pixels(px, g, regions, 0);
        std::size_t changed = 0;
        for (std::size_t i = 0; i < px.size(); ++i) changed += once[i] != px[i];
        CHECK(changed == 100 + 100 - 25);
        CHECK(redact_pixels(once, g, regions, 0) == once);
    }
    SUBCASE("16-bit samples") {
        pixel_geometry g16{4, 4, 16};
        dicom::byte_buffer p16(g16.byte_size(), 0xAB);
        std::vector<redaction_region> regions{{"1.2", 1, 1, 3, 3, 0x0102}};
        auto out = redact_pixels(p16, g16, regions, 0x0102);
        CHECK(sample_at(out, g16, 1, 1) == 0x0102);
        CHECK(sample_at(out, g16, 0, 0) == 0xABAB);
    }
    SUBCASE("bounds") {
        CHECK_THROWS_AS((void)redact_pixels(px, g, std::vector<redaction_region>{{"1.2", 90, 0, 101, 5, 0}}, 0),
                        region_out_of_bounds);
        CHECK_THROWS_AS((void)redact_pixels(px, g, std::vector<redaction_region>{{"1.2", 5, 5, 5, 6, 0}}, 0),
                        region_out_of_bounds);
    }
}

TEST_CASE("region sidecar round trip") {
    std::vector<redaction_region> regions{{"1.2.3", 1, 2, 3, 4, 0}, {"1.2.4", 0, 0, 8, 8, 0}};
    auto text = regions_csv(regions);
    CHECK(text.rfind("instance_uid,x0,y0,x1,y1\n", 0) == 0);
    CHECK(parse_regions_csv(text) == regions);
}

TEST_CASE("policy parsing and resolution") {
    auto p = parse_policy(R"(# comment
default.standard = keep
default.private = remove
vr.DA = shift_date
(0010,0010) = replace ANONYMOUS PERSON
(0008,0020)-(0008,0023) = empty
private.keep = (0009,"SYNTH KEEP",01)
)");
    CHECK(p.resolve(tags::patient_name, vr::PN, std::nullopt) ==
          policy_action{action_kind::replace_fixed, "ANONYMOUS PERSON"});
    CHECK(p.resolve(tags::study_date, vr::DA, std::nullopt).kind == action_kind::empty);
    CHECK(p.resolve(tags::patient_birth_date, vr::DA, std::nullopt).kind == action_kind::shift_date);
    CHECK(p.resolve(tags::modality, vr::CS, std::nullopt).kind == action_kind::keep);
    CHECK(p.resolve(tag(0x0009, 0x0010), vr::LO, "SYNTH KEEP").kind == action_kind::keep);
    CHECK(p.resolve(tag(0x0009, 0x1001), vr::LO, "SYNTH KEEP").kind == action_kind::keep);
    CHECK(p.resolve(tag(0x0009, 0x1002), vr::LO, "SYNTH KEEP").kind == action_kind::remove);
    CHECK(p.resolve(tag(0x0009, 0x1001), vr::LO, "OTHER").kind == action_kind::remove);
    CHECK(p.resolve(tag(0x0011, 0x1001), vr::LO, std::nullopt).kind == action_kind::remove);

    CHECK_THROWS_AS((void)parse_policy("(0010,0010) = explode"), policy_syntax_error);
    CHECK_THROWS_AS((void)parse_policy("(0010,0010) = keep\n(0010,0010) = remove"), policy_syntax_error);
    CHECK_THROWS_AS((void)parse_policy("(0010,0010) keep"), policy_syntax_error);
    CHECK_THROWS_AS((void)parse_policy("(0010,0010) = replace"), policy_syntax_error);
    CHECK_THROWS_AS((void)parse_policy("vr.PN = hash_uid"), policy_conflict);
    CHECK_THROWS_AS((void)parse_policy("private.keep = (0008,\"X\",01)"), policy_syntax_error);
}

TEST_CASE("action legality") {
    CHECK_NOTHROW(check_legal({action_kind::hash_uid, {}}, tags::study_instance_uid, vr::UI));
    CHECK_THROWS_AS(check_legal({action_kind::hash_uid, {}}, tags::patient_name, vr::PN), policy_conflict);
    CHECK_THROWS_AS(check_legal({action_kind::shift_date, {}}, tags::patient_name, vr::PN), policy_conflict);
    CHECK_NOTHROW(check_legal({action_kind::shift_date, {}}, tags::study_time, vr::TM));
    CHECK_THROWS_AS(check_legal({action_kind::clean_text, {}}, tags::rows, vr::US), policy_conflict);
    CHECK_THROWS_AS(check_legal({action_kind::redact_pixels, {}}, tags::patient_name, vr::PN), policy_conflict);
}

TEST_CASE("shipped policy file equals the built-in policy") {
    auto file_text = util::read_text(std::filesystem::path(DCMDEID_SOURCE_DIR) / "config" / "default.policy");
    CHECK(file_text == default_policy_text());
    const auto& p = default_policy();
    CHECK(p.default_private.kind == action_kind::remove);
    CHECK(p.resolve(tags::sop_class_uid, vr::UI, std::nullopt).kind == action_kind::keep);
    CHECK(p.resolve(tags::sop_instance_uid, vr::UI, std::nullopt).kind == action_kind::hash_uid);
    CHECK(p.resolve(tags::patient_id, vr::LO, std::nullopt).kind == action_kind::map_patient_id);
}

TEST_CASE("deidentify with the identity policy leaves the body alone") {
    auto f = dicom::make_file(patient_dataset("P1", "1.2.3.1", "1.2.3.2"));
    identity_vault v(1);
    auto r = deidentify(f, deid_policy::identity(), v, {}, {});
    CHECK(r.file.body == f.body);
    CHECK(r.file.file_meta.text(tags::media_storage_sop_instance_uid) == "1.2.3.2");
    CHECK(r.actions.size() == f.body.size());
}

TEST_CASE("deidentify with a fixed replacement") {
    auto f = dicom::make_file(patient_dataset("P1", "1.2.3.1", "1.2.3.2"));
    auto p = parse_policy("(0010,0010) = replace PATIENT");
    identity_vault v(1);
    auto r = deidentify(f, p, v, {}, {});
    CHECK(r.file.body.text(tags::patient_name) == "PATIENT");
}

TEST_CASE("deidentify with the default policy") {
    auto original = patient_dataset("PID0000001", "1.2.3.1", "1.2.3.2");
    dataset item;
    item.set(data_element::text(tags::referenced_sop_class_uid, vr::UI, "1.2.840.10008.5.1.4.1.1.2"));
    item.set(data_element::text(tags::referenced_sop_instance_uid, vr::UI, "1.2.3.3"));
    original.set(data_element::sequence(tags::referenced_image_sequence, {item}));
    original.set(data_element::text(tag(0x0009, 0x0010), vr::LO, "SYNTH KEEP"));
    original.set(data_element::text(tag(0x0009, 0x1001), vr::LO, "PHANTOM"));
    original.set(data_element::text(tag(0x0009, 0x1005), vr::LO, "DROP ME"));
    original.set(data_element::text(tag(0x0011, 0x0010), vr::LO, "SYNTH PHI"));
    original.set(data_element::text(tag(0x0011, 0x1001), vr::LO, "DOE^JANE"));
    original.set(data_element::text(tags::series_date, vr::DA, "not a date"));
    auto f = dicom::make_file(original);

    identity_vault v(77);
    auto r = deidentify(f, default_policy(), v, {}, {});
    const auto& out = r.file.body;
    int offset = identity_vault(77).derive_offset("PID0000001");

    CHECK(out.text(tags::patient_name) == "ANONYMOUS");
    CHECK(out.text(tags::patient_id) == identity_vault(77).map_patient_id("PID0000001"));
    CHECK(out.text(tags::study_date) == shift_date("20230415", offset));
    CHECK(out.text(tags::content_date) == shift_date("20230416", offset));
    CHECK(out.text(tags::patient_birth_date) == shift_date("19610312", offset));
    CHECK(out.text(tags::series_date) == "");
    CHECK(out.text(tags::study_description) == "BREAST^ROUTINE for MASS for");
    CHECK(out.text(tags::sop_class_uid) == "1.2.840.10008.5.1.4.1.1.2");
    CHECK(out.text(tags::sop_instance_uid) == v.remap_uid("1.2.3.2"));
    CHECK(r.file.file_meta.text(tags::media_storage_sop_instance_uid) == v.remap_uid("1.2.3.2"));
    const auto* seq = out.find(tags::referenced_image_sequence);
    REQUIRE(seq != nullptr);
    REQUIRE(seq->as_sequence()->size() == 1);
    CHECK(seq->as_sequence()->front().text(tags::referenced_sop_instance_uid) == v.remap_uid("1.2.3.3"));
    CHECK(seq->as_sequence()->front().text(tags::referenced_sop_class_uid) == "1.2.840.10008.5.1.4.1.1.2");
    CHECK(out.text(tag(0x0009, 0x0010)) == "SYNTH KEEP");
    CHECK(out.text(tag(0x0009, 0x1001)) == "PHANTOM");
    CHECK_FALSE(out.contains(tag(0x0009, 0x1005)));
    CHECK_FALSE(out.contains(tag(0x0011, 0x0010)));
    CHECK_FALSE(out.contains(tag(0x0011, 0x1001)));

    bool noted = false;
    for (const auto& a : r.actions) {
        if (a.tag == tags::study_description) CHECK(a.note == "311-25-3722");
        if (a.tag == tags::series_date) noted = a.note == "unparseable date emptied";
    }
    CHECK(noted);
}

TEST_CASE("uid integrity and date coherence across files") {
    identity_vault v(5);
    auto a = deidentify(dicom::make_file(patient_dataset("P9", "1.2.9.1", "1.2.9.2")), default_policy(), v, {}, {});
    auto b = deidentify(dicom::make_file(patient_dataset("P9", "1.2.9.1", "1.2.9.3")), default_policy(), v, {}, {});
    CHECK(a.file.body.text(tags::study_instance_uid) == b.file.body.text(tags::study_instance_uid));
    CHECK(a.file.body.text(tags::sop_instance_uid) != b.file.body.text(tags::sop_instance_uid));
    auto da = days_between("20230415", *a.file.body.text(tags::study_date));
    auto db = days_between("19610312", *b.file.body.text(tags::patient_birth_date));
    REQUIRE(da.has_value());
    CHECK(da == db);
    CHECK(*da < 0);
}

TEST_CASE("deidentify is deterministic in the seed") {
    auto f = dicom::make_file(patient_dataset("P1", "1.2.3.1", "1.2.3.2"));
    identity_vault v1(12);
    identity_vault v2(12);
    auto a = deidentify(f, default_policy(), v1, {}, {});
    auto b = deidentify(f, default_policy(), v2, {}, {});
    CHECK(dicom::serialize(a.file) == dicom::serialize(b.file));
}

TEST_CASE("pixel redaction through the engine") {
    auto ds = patient_dataset("P1", "1.2.3.1", "1.2.3.2");
    ds.set(data_element::integers(tags::rows, vr::US, {8}));
    ds.set(data_element::integers(tags::columns, vr::US, {8}));
    ds.set(data_element::integers(tags::bits_allocated, vr::US, {8}));
    ds.set(data_element::bytes(tags::pixel_data, vr::OB, dicom::byte_buffer(64, 7)));
    auto f = dicom::make_file(ds);
    identity_vault v(1);
    std::vector<redaction_region> regions{{"1.2.3.2", 0, 0, 2, 2, 0}, {"9.9.9", 0, 0, 8, 8, 0}};
    auto r = deidentify(f, default_policy(), v, {}, regions);
    const auto& px = *r.file.body.find(tags::pixel_data)->as_bytes();
    CHECK(std::count(px.begin(), px.end(), 0) == 4);

    std::vector<redaction_region> bad{{"1.2.3.2", 0, 0, 9, 2, 0}};
    identity_vault v2(1);
    CHECK_THROWS_AS((void)deidentify(f, default_policy(), v2, {}, bad), region_out_of_bounds);
}

TEST_CASE("illegal action for a value raises a conflict") {
    auto f = dicom::make_file(patient_dataset("P1", "1.2.3.1", "1.2.3.2"));
    auto p = parse_policy("(0010,0010) = hash_uid");
    identity_vault v(1);
    CHECK_THROWS_AS((void)deidentify(f, p, v, {}, {}), policy_conflict);
}
