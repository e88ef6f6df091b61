#include "dcmdeid/gen/corpus.hpp"

#include "dcmdeid/deid/dates.hpp"
#include "dcmdeid/deid/scrubber.hpp"
#include "dcmdeid/dicom/dictionary.hpp"
#include "dcmdeid/util/csv.hpp"
#include "dcmdeid/util/rng.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <chrono>
#include <cmath>
#include <map>
#include <set>

namespace dcmdeid::gen {

namespace {

namespace tags = dicom::tags;
using dicom::data_element;
using dicom::dataset;
using dicom::tag;
using dicom::vr;
using key::action_type;

constexpr std::string_view original_uid_root = "1.2.826.0.1.3680043.10.1401.9";

constexpr tag keep_creator{0x0009, 0x0010};
constexpr tag keep_value{0x0009, 0x1001};
constexpr tag phi_creator{0x0011, 0x0010};
constexpr tag phi_value{0x0011, 0x1001};

// Invented names; none of these may appear among the filler words below.
const std::vector<std::string> first_names{
    "Aldren", "Brisa", "Corvek", "Dessaly", "Elrik", "Faylin", "Gorvath", "Hestra",
    "Ivolen", "Jarisse", "Kestrin", "Lorvani", "Mirelle", "Norvik", "Orlessa", "Pellan",
};
const std::vector<std::string> last_names{
    "Zorvan", "Keltris", "Marovec", "Taskell", "Brennik", "Voldran", "Quesset", "Harvelle",
    "Ostrayne", "Dremmel", "Yarrowick", "Fennistar", "Galvorin", "Ulmstead", "Ravensolt", "Cindrath",
};
const std::vector<std::string> streets{"Quarry", "Birchfold", "Larkmoor", "Saltmere", "Thornwick", "Ebbing"};
const std::vector<std::string> towns{"Tolvik", "Ashvane", "Corrindale", "Westmarrow", "Pellford", "Drumlow"};

const std::vector<std::string> body_parts{"CHEST", "BREAST", "HEAD", "ABDOMEN", "PELVIS", "SPINE", "KNEE"};
const std::vector<std::string> findings{"MASS", "NODULE", "PAIN", "TRAUMA", "SCREENING", "STAGING"};
const std::vector<std::string> complaints{
    "reports chest pain", "reports mild cough", "reports back pain after fall", "reports headache and nausea",
    "reports swelling of left knee",
};
const std::vector<std::string> series_descriptions{
    "AX T1 POST", "SAG T2", "COR REFORMAT", "AXIAL SOFT TISSUE", "LOCALIZER", "PA VIEW", "LATERAL VIEW",
};
const std::vector<std::string> sr_findings{
    "Findings small nodule noted", "Findings no acute abnormality", "Findings stable appearance since prior",
};
const std::vector<std::string> keep_values{"CALIBRATION PHANTOM A", "CALIBRATION PHANTOM B", "WATER REFERENCE"};

struct modality_info {
    std::string_view name;
    std::string_view code;
    std::string_view sop_class;
    std::string_view image_type;
    std::string_view protocol;
    bool has_pixels;
};

const std::vector<modality_info> modalities{
    {"CR", "CR", "1.2.840.10008.5.1.4.1.1.1", "ORIGINAL\\PRIMARY", "CHEST PA ROUTINE", true},
    {"MR", "MR", "1.2.840.10008.5.1.4.1.1.4", "ORIGINAL\\PRIMARY\\M\\ND", "BRAIN AXIAL FLAIR", true},
    {"CT", "CT", "1.2.840.10008.5.1.4.1.1.2", "ORIGINAL\\PRIMARY\\AXIAL", "ROUTINE CHEST WITH CONTRAST", true},
    {"PET", "PT", "1.2.840.10008.5.1.4.1.1.128", "ORIGINAL\\PRIMARY", "WHOLE BODY STATIC", true},
    {"DX", "DX", "1.2.840.10008.5.1.4.1.1.1.1", "ORIGINAL\\PRIMARY", "HAND TWO VIEWS", true},
    {"SR", "SR", "1.2.840.10008.5.1.4.1.1.88.11", "", "REPORT", false},
    {"MG", "MG", "1.2.840.10008.5.1.4.1.1.1.2", "ORIGINAL\\PRIMARY", "SCREENING BILATERAL", true},
    {"US", "US", "1.2.840.10008.5.1.4.1.1.6.1", "ORIGINAL\\PRIMARY", "ABDOMEN COMPLETE", true},
};

const modality_info& info_for(std::string_view name) {
    for (const auto& m : modalities) {
        if (m.name == name) return m;
    }
    throw spec_error("unknown modality '" + std::string(name) + "'");
}

std::string zero_pad(std::int64_t v, int width) {
    auto s = std::to_string(v);
    return std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(s.size()))), '0') + s;
}

std::string da_from_days(std::int64_t days_since_epoch) {
    std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{days_since_epoch}}};
    return zero_pad(static_cast<int>(ymd.year()), 4) + zero_pad(static_cast<unsigned>(ymd.month()), 2) +
           zero_pad(static_cast<unsigned>(ymd.day()), 2);
}

std::int64_t days_of(int y, unsigned m, unsigned d) {
    return std::chrono::sys_days{std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}}
        .time_since_epoch()
        .count();
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

/// Unique tokens in first-occurrence order.
std::vector<std::string> unique_tokens(const std::vector<std::string>& tokens) {
    std::vector<std::string> out;
    for (const auto& t : tokens) {
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
    return out;
}

std::vector<std::string> words(std::string_view text) { return unique_tokens(deid::tokenize(text)); }

/// Largest-remainder apportionment of n patients over the mix.
std::vector<std::string> apportion(const std::vector<modality_share>& mix, std::size_t n) {
    std::vector<std::size_t> counts(mix.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t used = 0;
    for (std::size_t i = 0; i < mix.size(); ++i) {
        double exact = mix[i].share * static_cast<double>(n);
        counts[i] = static_cast<std::size_t>(std::floor(exact));
        used += counts[i];
        remainders.emplace_back(exact - std::floor(exact), i);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t k = 0; used < n; ++k, ++used) ++counts[remainders[k % remainders.size()].second];
    std::vector<std::string> out;
    for (std::size_t i = 0; i < mix.size(); ++i) out.insert(out.end(), counts[i], mix[i].modality);
    return out;
}

class builder {
public:
    explicit builder(const corpus_spec& spec) : spec_(spec), rng_(spec.seed), vault_(spec.seed) {
        uid_stem_ = std::string(original_uid_root) + "." + std::to_string(rng_.uniform(1, 999999999));
    }

    corpus run() {
        auto assigned = apportion(spec_.modality_mix, spec_.n_patients);
        for (std::size_t i = assigned.size(); i > 1; --i) {
            auto j = static_cast<std::size_t>(rng_.uniform(0, static_cast<std::int64_t>(i) - 1));
            std::swap(assigned[i - 1], assigned[j]);
        }
        for (const auto& m : assigned) patient(info_for(m));

        corpus c;
        c.files = std::move(files_);
        c.key = key::answer_key(std::move(entries_));
        c.regions = std::move(regions_);
        c.truth_patient_ids = vault_.patient_id_table();
        c.truth_uids = vault_.uid_table();
        return c;
    }

private:
    std::string unique(std::set<std::string>& used, const std::string& prefix, int digits) {
        std::int64_t hi = 1;
        for (int i = 0; i < digits; ++i) hi *= 10;
        for (;;) {
            auto s = prefix + zero_pad(rng_.uniform(hi / 10, hi - 1), digits);
            if (used.insert(s).second) return s;
        }
    }

    std::string new_uid() {
        auto uid = uid_stem_ + "." + std::to_string(++uid_counter_);
        (void)vault_.remap_uid(uid);
        return uid;
    }

    std::int64_t draw(count_range r) { return rng_.uniform(r.lo, r.hi); }

    synthetic_identity identity() {
        synthetic_identity id;
        id.first = rng_.pick(first_names);
        id.last = rng_.pick(last_names);
        id.name = upper(id.last) + "^" + upper(id.first);
        id.patient_id = unique(used_ids_, "PID", 7);
        id.birth_date = da_from_days(rng_.uniform(days_of(1940, 1, 1), days_of(2000, 12, 31)));
        id.sex = rng_.pick(std::vector<std::string>{"M", "F", "O"});
        id.phone = "555-" + zero_pad(rng_.uniform(200, 999), 3) + "-" + zero_pad(rng_.uniform(0, 9999), 4);
        id.ssn = zero_pad(rng_.uniform(100, 899), 3) + "-" + zero_pad(rng_.uniform(10, 99), 2) + "-" +
                 zero_pad(rng_.uniform(1000, 9999), 4);
        id.address = std::to_string(rng_.uniform(1, 999)) + " " + rng_.pick(streets) + " Lane " + rng_.pick(towns);
        (void)vault_.map_patient_id(id.patient_id);
        return id;
    }

    void patient(const modality_info& m) {
        auto id = identity();
        auto studies = draw(spec_.studies_per_patient);
        for (std::int64_t s = 0; s < studies; ++s) study(m, id);
    }

    struct study_context {
        std::string uid;
        std::string date;
        std::string accession;
        std::string study_id;
        std::string description;
        std::string referring;
        std::string institution;
        std::string institution_address;
        std::string department;
        std::string history;
        std::string history_date;
        std::string age;
    };

    void study(const modality_info& m, const synthetic_identity& id) {
        study_context st;
        st.uid = new_uid();
        auto day = rng_.uniform(days_of(2005, 1, 1), days_of(2022, 12, 31));
        st.date = da_from_days(day);
        st.accession = unique(used_ids_, "ACC", 8);
        st.study_id = unique(used_ids_, "ST", 5);
        auto part = rng_.pick(body_parts);
        st.description = part + "^ROUTINE for " + rng_.pick(findings) + " for " + id.ssn;
        st.referring = upper(rng_.pick(last_names)) + "^" + upper(rng_.pick(first_names));
        auto town = rng_.pick(towns);
        st.institution = town + " General Hospital";
        st.institution_address = std::to_string(rng_.uniform(1, 99)) + " " + rng_.pick(streets) + " Road " + town;
        st.department = "Imaging Wing " + std::to_string(rng_.uniform(1, 9));
        auto birth = deid::parse_da(id.birth_date);
        st.history_date = zero_pad(birth->year, 4) + "-" + zero_pad(birth->month, 2) + "-" + zero_pad(birth->day, 2);
        st.history = "Patient " + id.first + " " + id.last + " born " + st.history_date + " " + rng_.pick(complaints) +
                     " call " + id.phone;
        int age = std::stoi(st.date.substr(0, 4)) - birth->year;
        st.age = zero_pad(age, 3) + "Y";

        auto series_count = draw(spec_.series_per_study);
        for (std::int64_t s = 0; s < series_count; ++s) series(m, id, st, s + 1);
    }

    struct series_context {
        std::string uid;
        std::string frame_uid;
        std::string description;
        std::vector<std::string> description_phi;
        std::string protocol;
        std::string body_part;
        std::string station;
        std::string device_serial;
        std::string manufacturer;
        std::string model;
        std::string keep_value;
        std::string sr_text;
        std::uint32_t size{64};
        std::uint16_t bits{8};
        std::int64_t number{1};
    };

    void series(const modality_info& m, const synthetic_identity& id, const study_context& st, std::int64_t number) {
        series_context se;
        se.uid = new_uid();
        if (m.has_pixels) se.frame_uid = new_uid();
        se.number = number;
        se.description = rng_.pick(series_descriptions);
        if (rng_.chance(0.3)) {
            se.description += " " + upper(id.last);
            se.description_phi = {upper(id.last)};
        }
        se.protocol = std::string(m.protocol);
        se.body_part = rng_.pick(body_parts);
        se.station = std::string(m.code) + "STATION" + zero_pad(rng_.uniform(1, 99), 2);
        se.device_serial = unique(used_ids_, "DSN", 6);
        se.manufacturer = rng_.pick(std::vector<std::string>{"SYNTHEX MEDICAL", "ORBIMAGE SYSTEMS", "NORTHRAY"});
        se.model = rng_.pick(std::vector<std::string>{"IMAGER 3000", "VISTA PRO", "MODEL X"});
        se.keep_value = rng_.pick(keep_values);
        se.sr_text = rng_.pick(sr_findings) + " for " + id.first + " " + id.last;
        se.size = static_cast<std::uint32_t>(rng_.pick(std::vector<std::int64_t>{64, 128, 256}));
        se.bits = rng_.chance(0.5) ? 8 : 16;

        auto count = draw(spec_.instances_per_series);
        std::vector<std::string> sops;
        for (std::int64_t i = 0; i < count; ++i) sops.push_back(new_uid());
        for (std::int64_t i = 0; i < count; ++i) {
            auto next = sops[static_cast<std::size_t>((i + 1) % count)];
            instance(m, id, st, se, sops[static_cast<std::size_t>(i)], i + 1, count > 1 ? next : std::string{});
        }
    }

    bool next_burned(const modality_info& m) {
        if (m.name != "US" && m.name != "CR") return false;
        auto before = static_cast<std::int64_t>(std::floor(static_cast<double>(burn_counter_) * spec_.burnin_fraction));
        ++burn_counter_;
        auto after = static_cast<std::int64_t>(std::floor(static_cast<double>(burn_counter_) * spec_.burnin_fraction));
        return after > before;
    }

    void instance(const modality_info& m, const synthetic_identity& id, const study_context& st,
                  const series_context& se, const std::string& sop, std::int64_t number, const std::string& ref) {
        auto text = [](tag t, vr v, std::string s) { return data_element::text(t, v, std::move(s)); };
        dataset ds;
        ds.set(text(tags::specific_character_set, vr::CS, "ISO_IR 100"));
        if (!m.image_type.empty()) ds.set(text(tags::image_type, vr::CS, std::string(m.image_type)));
        ds.set(text(tags::sop_class_uid, vr::UI, std::string(m.sop_class)));
        ds.set(text(tags::sop_instance_uid, vr::UI, sop));
        ds.set(text(tags::study_date, vr::DA, st.date));
        ds.set(text(tags::series_date, vr::DA, st.date));
        ds.set(text(tags::content_date, vr::DA, st.date));
        ds.set(text(tags::study_time, vr::TM, "101500"));
        ds.set(text(tags::accession_number, vr::SH, st.accession));
        ds.set(text(tags::modality, vr::CS, std::string(m.code)));
        ds.set(text(tags::manufacturer, vr::LO, se.manufacturer));
        ds.set(text(tags::institution_name, vr::LO, st.institution));
        ds.set(text(tags::institution_address, vr::ST, st.institution_address));
        ds.set(text(tags::referring_physician_name, vr::PN, st.referring));
        ds.set(text(tags::station_name, vr::SH, se.station));
        ds.set(text(tags::study_description, vr::LO, st.description));
        ds.set(text(tags::series_description, vr::LO, se.description));
        ds.set(text(tags::institutional_department_name, vr::LO, st.department));
        ds.set(text(tags::manufacturer_model_name, vr::LO, se.model));
        if (!ref.empty()) {
            dataset item;
            item.set(text(tags::referenced_sop_class_uid, vr::UI, std::string(m.sop_class)));
            item.set(text(tags::referenced_sop_instance_uid, vr::UI, ref));
            ds.set(data_element::sequence(tags::referenced_image_sequence, {std::move(item)}));
        }
        ds.set(text(keep_creator, vr::LO, "SYNTH KEEP"));
        ds.set(text(keep_value, vr::LO, se.keep_value));
        ds.set(text(tags::patient_name, vr::PN, id.name));
        ds.set(text(tags::patient_id, vr::LO, id.patient_id));
        ds.set(text(tags::patient_birth_date, vr::DA, id.birth_date));
        ds.set(text(tags::patient_sex, vr::CS, id.sex));
        ds.set(text(tags::other_patient_ids, vr::LO, id.ssn));
        ds.set(text(tags::patient_age, vr::AS, st.age));
        ds.set(text(tags::patient_address, vr::LO, id.address));
        ds.set(text(tags::patient_telephone_numbers, vr::SH, id.phone));
        ds.set(text(tags::additional_patient_history, vr::LT, st.history));
        ds.set(text(phi_creator, vr::LO, "SYNTH PHI"));
        ds.set(text(phi_value, vr::LO, id.name));
        ds.set(text(tags::body_part_examined, vr::CS, se.body_part));
        ds.set(text(tags::device_serial_number, vr::LO, se.device_serial));
        ds.set(text(tags::protocol_name, vr::LO, se.protocol));
        ds.set(text(tags::study_instance_uid, vr::UI, st.uid));
        ds.set(text(tags::series_instance_uid, vr::UI, se.uid));
        ds.set(text(tags::study_id, vr::SH, st.study_id));
        ds.set(text(tags::series_number, vr::IS, std::to_string(se.number)));
        ds.set(text(tags::acquisition_number, vr::IS, "1"));
        ds.set(text(tags::instance_number, vr::IS, std::to_string(number)));
        if (!se.frame_uid.empty()) ds.set(text(tags::frame_of_reference_uid, vr::UI, se.frame_uid));
        if (!m.has_pixels) ds.set(text(tags::text_value, vr::UT, se.sr_text));

        std::vector<key::pixel_box> boxes;
        bool burned = false;
        if (m.has_pixels) {
            burned = next_burned(m);
            boxes = add_pixels(ds, se, sop, burned);
        }

        auto rel = std::filesystem::path(id.patient_id) / st.uid / se.uid / (sop + ".dcm");
        auto file = dicom::make_file(std::move(ds));

        current_ = {};
        current_.modality = std::string(m.name);
        current_.sop_class = std::string(m.sop_class);
        current_.patient = id.patient_id;
        current_.study = st.uid;
        current_.series = se.uid;
        current_.instance = sop;
        current_.file_name = rel.generic_string();
        const auto& body = file.body;

        if (!m.image_type.empty()) add(body, tags::image_type, action_type::text_notnull, "DICOM-IOD-1");
        add(body, tags::modality, action_type::text_notnull, "DICOM-IOD-1");
        add(body, tags::acquisition_number, action_type::tag_retained, "DICOM-IOD-2");
        add(body, tags::referring_physician_name, action_type::tag_retained, "DICOM-IOD-2");
        if (!se.description_phi.empty()) {
            add(body, tags::series_description, action_type::text_removed, "DICOM-P15-BASIC-C", se.description_phi);
        }
        add(body, tags::series_description, action_type::text_retained, "DICOM-P15-BASIC-C",
            without(words(se.description), se.description_phi));
        add(body, tags::study_instance_uid, action_type::uid_consistent, "DICOM-P15-BASIC-U");
        add(body, tags::series_instance_uid, action_type::uid_consistent, "DICOM-P15-BASIC-U");
        add(body, tags::sop_instance_uid, action_type::uid_consistent, "DICOM-P15-BASIC-U");
        if (!se.frame_uid.empty()) add(body, tags::frame_of_reference_uid, action_type::uid_changed, "DICOM-P15-BASIC-U");
        add(body, tags::patient_name, action_type::text_removed, "HIPAA-A", words(id.name));
        add(body, tags::institution_address, action_type::text_removed, "HIPAA-B", words(st.institution_address));
        add(body, tags::patient_address, action_type::text_removed, "HIPAA-B", words(id.address));
        add(body, tags::patient_birth_date, action_type::date_shifted, "HIPAA-C");
        add(body, tags::study_date, action_type::date_shifted, "HIPAA-C");
        add(body, tags::patient_telephone_numbers, action_type::text_removed, "HIPAA-D", words(id.phone));
        add(body, tags::other_patient_ids, action_type::text_removed, "HIPAA-G", words(id.ssn));
        add(body, tags::patient_id, action_type::patid_consistent, "HIPAA-H");
        add(body, tags::accession_number, action_type::text_removed, "HIPAA-R", words(st.accession));
        add(body, tags::institution_name, action_type::text_removed, "TCIA-P15-BASIC-D", words(st.institution));
        add(body, tags::institutional_department_name, action_type::text_removed, "TCIA-P15-BASIC-X",
            words(st.department));
        add(body, tags::station_name, action_type::text_removed, "TCIA-P15-BASIC-X/Z/D", words(se.station));
        add(body, tags::study_id, action_type::text_removed, "TCIA-P15-BASIC-Z", words(st.study_id));
        add(body, tags::referring_physician_name, action_type::text_removed, "TCIA-P15-BASIC-Z", words(st.referring));
        add(body, tags::series_date, action_type::date_shifted, "TCIA-P15-BASIC-Z/D");
        add(body, tags::content_date, action_type::date_shifted, "TCIA-P15-BASIC-Z/D");
        add(body, tags::study_description, action_type::text_removed, "TCIA-P15-DESC-C", words(id.ssn));
        add(body, tags::study_description, action_type::text_retained, "TCIA-P15-DESC-C",
            without(words(st.description), words(id.ssn)));
        add(body, tags::device_serial_number, action_type::text_removed, "TCIA-P15-DEV-C", words(se.device_serial));
        add(body, tags::manufacturer, action_type::text_retained, "TCIA-P15-DEV-K", words(se.manufacturer));
        add(body, tags::manufacturer_model_name, action_type::text_retained, "TCIA-P15-DEV-K", words(se.model));
        add(body, tags::protocol_name, action_type::text_retained, "TCIA-P15-MOD-C", words(se.protocol));
        add(body, tags::body_part_examined, action_type::tag_retained, "TCIA-P15-MOD-C");
        add(body, tags::patient_sex, action_type::tag_retained, "TCIA-P15-PAT-K");
        add(body, tags::patient_age, action_type::text_retained, "TCIA-P15-PAT-K", words(st.age));
        if (m.has_pixels) {
            if (burned) {
                add(body, tags::pixel_data, action_type::pixels_hidden, "HIPAA-A",
                    {upper(id.last), upper(id.first), id.patient_id}, boxes);
            } else {
                add(body, tags::pixel_data, action_type::pixels_retained, "TCIA-P15-PIX-K");
            }
        }
        add(body, keep_value, action_type::tag_retained, "TCIA-PTKB-K");
        add(body, keep_value, action_type::text_retained, "TCIA-PTKB-K", words(se.keep_value));
        add(body, phi_value, action_type::text_removed, "TCIA-PTKB-X", words(id.name));
        std::vector<std::string> history_phi{id.first, id.last, st.history_date, id.phone};
        add(body, tags::additional_patient_history, action_type::text_removed, "TCIA-REV", history_phi);
        add(body, tags::additional_patient_history, action_type::text_retained, "TCIA-REV",
            without(words(st.history), history_phi));
        if (!m.has_pixels) {
            std::vector<std::string> sr_phi{id.first, id.last};
            add(body, tags::text_value, action_type::text_removed, "TCIA-REV", sr_phi);
            add(body, tags::text_value, action_type::text_retained, "TCIA-REV", without(words(se.sr_text), sr_phi));
        }

        files_.push_back({rel, std::move(file)});
    }

    static std::vector<std::string> without(std::vector<std::string> tokens, const std::vector<std::string>& drop) {
        std::erase_if(tokens, [&](const std::string& t) { return std::find(drop.begin(), drop.end(), t) != drop.end(); });
        return tokens;
    }

    std::vector<key::pixel_box> add_pixels(dataset& ds, const series_context& se, const std::string& sop, bool burned) {
        auto n = se.size;
        std::uint16_t max_value = se.bits == 16 ? 4095 : 255;
        ds.set(data_element::integers(tags::samples_per_pixel, vr::US, {1}));
        ds.set(data_element::text(tags::photometric_interpretation, vr::CS, "MONOCHROME2"));
        ds.set(data_element::integers(tags::rows, vr::US, {n}));
        ds.set(data_element::integers(tags::columns, vr::US, {n}));
        ds.set(data_element::integers(tags::bits_allocated, vr::US, {se.bits}));
        ds.set(data_element::integers(tags::bits_stored, vr::US, {se.bits == 16 ? 12 : 8}));
        ds.set(data_element::integers(tags::high_bit, vr::US, {se.bits == 16 ? 11 : 7}));
        ds.set(data_element::integers(tags::pixel_representation, vr::US, {0}));

        std::vector<std::uint16_t> samples(static_cast<std::size_t>(n) * n);
        for (auto& s : samples) s = static_cast<std::uint16_t>(rng_.uniform(1, max_value));

        std::vector<key::pixel_box> boxes;
        if (burned) {
            boxes.push_back({n / 16, n / 16, n / 16 + n / 2, n / 16 + n / 8});
            if (rng_.chance(0.5)) boxes.push_back({n / 16, n - n / 16 - n / 8, n / 16 + n / 4, n - n / 16});
            for (const auto& b : boxes) {
                constexpr std::uint32_t cell = 4;
                for (auto y = b.y0; y < b.y1; ++y) {
                    for (auto x = b.x0; x < b.x1; ++x) {
                        auto cx = (x - b.x0) / cell;
                        auto cy = (y - b.y0) / cell;
                        // Deterministic glyph strokes; the first two cells always differ.
                        bool on = cx == 0 ? true : cx == 1 ? false : ((cx * 7 + cy * 3 + b.x1) % 5) < 2;
                        samples[static_cast<std::size_t>(y) * n + x] = on ? max_value : 1;
                    }
                }
                regions_.push_back({sop, b.x0, b.y0, b.x1, b.y1, 0});
            }
        }

        dicom::byte_buffer bytes;
        bytes.reserve(samples.size() * (se.bits / 8));
        for (auto s : samples) {
            bytes.push_back(static_cast<std::uint8_t>(s & 0xFF));
            if (se.bits == 16) bytes.push_back(static_cast<std::uint8_t>(s >> 8));
        }
        ds.set(data_element::bytes(tags::pixel_data, se.bits == 16 ? vr::OW : vr::OB, std::move(bytes)));
        return boxes;
    }

    void add(const dataset& body, tag t, action_type action, std::string_view subcategory,
             std::vector<std::string> tokens = {}, std::vector<key::pixel_box> region = {}) {
        const auto* e = body.find(t);
        if (e == nullptr) throw std::logic_error("generator keyed a missing element " + t.str());
        key::answer_key_entry entry = current_;
        entry.index = entries_.size();
        entry.tag_ds = t.str();
        if (t == keep_value) {
            entry.tag_name = "SynthKeepValue";
        } else if (t == phi_value) {
            entry.tag_name = "SynthPhiValue";
        } else {
            entry.tag_name = std::string(dicom::tag_name(t));
        }
        entry.answer_value = e->display();
        entry.action = action;
        entry.action_text = std::move(tokens);
        entry.subcategory = std::string(subcategory);
        entry.category = key::subcategories()[*key::subcategory_index(subcategory)].category;
        entry.region = std::move(region);
        entries_.push_back(std::move(entry));
    }

    const corpus_spec& spec_;
    util::rng rng_;
    deid::identity_vault vault_;
    std::string uid_stem_;
    std::uint64_t uid_counter_{0};
    std::uint64_t burn_counter_{0};
    std::set<std::string> used_ids_;
    key::answer_key_entry current_;
    std::vector<corpus_file> files_;
    std::vector<key::answer_key_entry> entries_;
    std::vector<deid::redaction_region> regions_;
};

void compare_entries(const key::answer_key& key, const std::function<const dicom::dicom_file*(const key::answer_key_entry&)>& file_of,
                     validation_report& report) {
    for (const auto& e : key.entries()) {
        const auto* f = file_of(e);
        if (f == nullptr) {
            report.mismatches.push_back("entry " + std::to_string(e.index) + ": file " + e.file_name + " missing");
            continue;
        }
        const auto* elem = f->body.find(dicom::tag::parse(e.tag_ds));
        if (elem == nullptr) {
            report.mismatches.push_back("entry " + std::to_string(e.index) + ": " + e.tag_ds + " absent in " +
                                        e.file_name);
            continue;
        }
        auto actual = elem->display();
        if (actual != e.answer_value) {
            report.mismatches.push_back("entry " + std::to_string(e.index) + ": " + e.tag_ds + " is '" + actual +
                                        "', key says '" + e.answer_value + "'");
        }
    }
}

std::string join_mismatches(const validation_report& r) {
    std::string msg = std::to_string(r.mismatches.size()) + " answer key mismatch(es)";
    for (std::size_t i = 0; i < r.mismatches.size() && i < 5; ++i) msg += "\n  " + r.mismatches[i];
    return msg;
}

}  // namespace

std::vector<modality_share> default_modality_mix() {
    const std::vector<std::pair<std::string, double>> counts{
        {"CR", 33}, {"MR", 79}, {"CT", 60}, {"PET", 44}, {"DX", 32}, {"SR", 31}, {"MG", 37}, {"US", 36},
    };
    double total = 0;
    for (const auto& c : counts) total += c.second;
    std::vector<modality_share> mix;
    for (const auto& [m, n] : counts) mix.push_back({m, n / total});
    return mix;
}

void validate(const corpus_spec& spec) {
    if (spec.n_patients < 1) throw spec_error("n_patients must be at least 1");
    if (spec.modality_mix.empty()) throw spec_error("modality mix is empty");
    double sum = 0.0;
    std::set<std::string> seen;
    for (const auto& m : spec.modality_mix) {
        (void)info_for(m.modality);
        if (!seen.insert(m.modality).second) throw spec_error("modality " + m.modality + " listed twice");
        if (!(m.share >= 0.0)) throw spec_error("modality share must be nonnegative");
        sum += m.share;
    }
    if (std::fabs(sum - 1.0) > 1e-9) throw spec_error("modality shares sum to " + std::to_string(sum) + ", not 1");
    for (auto r : {spec.studies_per_patient, spec.series_per_study, spec.instances_per_series}) {
        if (r.lo < 1 || r.hi < r.lo) throw spec_error("count ranges need 1 <= lo <= hi");
    }
    if (!(spec.burnin_fraction >= 0.0 && spec.burnin_fraction <= 1.0)) {
        throw spec_error("burnin_fraction must lie in [0, 1]");
    }
}

corpus build_corpus(const corpus_spec& spec) {
    validate(spec);
    return builder(spec).run();
}

corpus_paths layout(const std::filesystem::path& root) {
    return {root, root / "key.csv", root / "regions.csv", root / "truth_patid.csv", root / "truth_uid.csv"};
}

corpus_paths write_corpus(const corpus& c, const std::filesystem::path& out) {
    auto paths = layout(out);
    std::filesystem::create_directories(out);
    for (const auto& f : c.files) dicom::write_file(out / f.relative_path, f.file);
    key::write_answer_key(paths.key, c.key);
    util::write_text(paths.regions, deid::regions_csv(c.regions));
    util::write_text(paths.truth_patient_ids, deid::mapping_csv(c.truth_patient_ids));
    util::write_text(paths.truth_uids, deid::mapping_csv(c.truth_uids));
    return paths;
}

corpus_paths generate(const corpus_spec& spec, const std::filesystem::path& out) {
    return write_corpus(build_corpus(spec), out);
}

validation_failure::validation_failure(validation_report report)
    : std::runtime_error(join_mismatches(report)), report_(std::move(report)) {}

validation_report self_validate(const std::filesystem::path& corpus_dir, const key::answer_key& key) {
    std::map<std::string, dicom::dicom_file> cache;
    validation_report report;
    compare_entries(
        key,
        [&](const key::answer_key_entry& e) -> const dicom::dicom_file* {
            auto it = cache.find(e.file_name);
            if (it == cache.end()) {
                auto path = corpus_dir / e.file_name;
                if (!std::filesystem::is_regular_file(path)) return nullptr;
                it = cache.emplace(e.file_name, dicom::read_file(path)).first;
            }
            return &it->second;
        },
        report);
    return report;
}

validation_report self_validate(const corpus& c) {
    std::map<std::string, const dicom::dicom_file*, std::less<>> by_name;
    for (const auto& f : c.files) by_name[f.relative_path.generic_string()] = &f.file;
    validation_report report;
    compare_entries(
        c.key,
        [&](const key::answer_key_entry& e) -> const dicom::dicom_file* {
            auto it = by_name.find(e.file_name);
            return it == by_name.end() ? nullptr : it->second;
        },
        report);
    return report;
}

void require_valid(const std::filesystem::path& corpus_dir, const key::answer_key& key) {
    auto report = self_validate(corpus_dir, key);
    if (!report.ok()) throw validation_failure(std::move(report));
}

}  // namespace dcmdeid::gen
