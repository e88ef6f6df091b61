#include "dcmdeid/cli/run.hpp"

#include "dcmdeid/deid/engine.hpp"
#include "dcmdeid/deid/errors.hpp"
#include "dcmdeid/gen/corpus.hpp"
#include "dcmdeid/key/errors.hpp"
#include "dcmdeid/report/reports.hpp"
#include "dcmdeid/score/scorer.hpp"
#include "dcmdeid/util/csv.hpp"
#include "dcmdeid/util/files.hpp"
#include "dcmdeid/util/format.hpp"
#include "dcmdeid/util/parallel.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

namespace dcmdeid::cli {

namespace fs = std::filesystem;

deid_summary deid_corpus(const deid_request& request) {
    auto inputs = util::list_dicom_files(request.in);
    std::vector<deid::redaction_region> regions;
    if (request.regions) regions = deid::parse_regions_csv(util::read_text(*request.regions));

    deid::identity_vault vault(request.seed);
    const deid::scrubber_config scrub;
    std::vector<std::string> audits(inputs.size());

    util::parallel_for(inputs.size(), request.jobs, [&](std::size_t i) {
        auto original = dicom::read_file(inputs[i], request.parse);
        auto result = deid::deidentify(original, request.policy, vault, scrub, regions);
        const auto& body = result.file.body;
        auto part = [&](dicom::tag t) {
            auto v = body.text(t).value_or("");
            return v.empty() ? std::string("unknown") : v;
        };
        auto rel = fs::path(part(dicom::tags::patient_id)) / part(dicom::tags::study_instance_uid) /
                   part(dicom::tags::series_instance_uid) / (part(dicom::tags::sop_instance_uid) + ".dcm");
        dicom::write_file(request.out / rel, result.file);
        audits[i] = deid::audit_csv(fs::relative(inputs[i], request.in).generic_string(), result.actions, false);
    });

    fs::create_directories(request.out);
    auto files = deid::export_mappings(vault, request.out);
    deid_summary summary;
    summary.files = inputs.size();
    summary.patient_ids = files.patient_ids;
    summary.uids = files.uids;
    summary.audit = request.out / "audit.csv";
    std::string audit = deid::audit_csv("", {}, true);
    for (const auto& a : audits) audit += a;
    util::write_text(summary.audit, audit);
    return summary;
}

namespace {

std::string summary_line(const score::score_summary& s, const std::optional<score::action_weights>& weights) {
    std::string line = "overall=" + util::percent(score::overall_accuracy(s)) +
                       " normalized=" + util::percent(score::normalized_accuracy(s));
    if (weights) line += " weighted=" + util::percent(score::weighted_accuracy(s, *weights));
    return line;
}

struct options {
    std::string in;
    std::string out;
    std::string policy;
    std::string key;
    std::string orig;
    std::string sub;
    std::string patid_map;
    std::string uid_map;
    std::string mode{"series"};
    std::string weights;
    std::string regions;
    std::uint64_t seed{1};
    bool lenient{false};
    bool strict_dates{false};
    unsigned jobs{1};
    std::size_t patients{20};
    double burnin{0.5};
};

int do_gen(const options& o, std::ostream& out) {
    gen::corpus_spec spec;
    spec.n_patients = o.patients;
    spec.seed = o.seed;
    spec.burnin_fraction = o.burnin;
    auto c = gen::build_corpus(spec);
    auto report = gen::self_validate(c);
    if (!report.ok()) throw gen::validation_failure(std::move(report));
    gen::write_corpus(c, o.out);
    out << "files=" << c.files.size() << " entries=" << c.key.size() << " regions=" << c.regions.size() << "\n";
    return ok;
}

int do_deid(const options& o, std::ostream& out) {
    deid_request req;
    req.in = o.in;
    req.out = o.out;
    req.policy = o.policy.empty() ? deid::default_policy() : deid::load_policy(o.policy);
    req.seed = o.seed;
    req.parse.lenient = o.lenient;
    req.jobs = o.jobs;
    if (!o.regions.empty()) {
        req.regions = fs::path(o.regions);
    } else if (fs::is_regular_file(fs::path(o.in) / "regions.csv")) {
        req.regions = fs::path(o.in) / "regions.csv";
    }
    auto s = deid_corpus(req);
    out << "files=" << s.files << "\n";
    return ok;
}

int do_score(const options& o, std::ostream& out) {
    // Everything that can be rejected is loaded before the corpora are read.
    auto answer_key = key::load_answer_key(o.key);
    auto patid = key::load_mapping(o.patid_map, key::mapping_kind::patient_id);
    auto uids = key::load_mapping(o.uid_map, key::mapping_kind::uid);
    std::optional<score::action_weights> weights;
    if (!o.weights.empty()) weights = score::load_weights(o.weights);

    score::score_options so;
    so.mode = o.mode == "instance" ? score::aggregation_mode::instance_based : score::aggregation_mode::series_based;
    so.strict_dates = o.strict_dates;
    so.jobs = o.jobs;
    dicom::parse_options po{o.lenient};
    auto originals = score::index_corpus(o.orig, po, o.jobs);
    auto submission = score::index_corpus(o.sub, po, o.jobs);
    auto outcome = score::score_corpus(answer_key, originals, submission, patid, uids, so);
    if (weights) (void)score::weighted_accuracy(outcome.summary, *weights);
    report::write_run(outcome, o.out);
    out << summary_line(outcome.summary, weights) << "\n";
    return ok;
}

int do_report(const options& o, std::ostream& out) {
    fs::path dir = o.in;
    auto s = report::parse_summary_json(util::read_text(dir / report::summary_file));
    fs::path dest = o.out.empty() ? dir : fs::path(o.out);
    fs::create_directories(dest);
    report::write_scoring_report(s, dest / report::scoring_file);
    report::write_action_report(s, dest / report::actions_file);
    report::write_category_report(s, dest / report::categories_file);
    std::optional<score::action_weights> weights;
    if (!o.weights.empty()) weights = score::load_weights(o.weights);
    out << summary_line(s, weights) << "\n";
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"DICOM de-identification and answer-key scoring", "dcmdeid"};
    app.require_subcommand(1);
    options o;

    auto* gen_cmd = app.add_subcommand("gen-corpus", "Generate a synthetic corpus with its answer key");
    gen_cmd->add_option("--out", o.out, "Output directory")->required();
    gen_cmd->add_option("--seed", o.seed, "Generator seed");
    gen_cmd->add_option("--patients", o.patients, "Number of patients")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--burnin", o.burnin, "Fraction of US/CR instances with burned-in text")
        ->check(CLI::Range(0.0, 1.0));

    auto* deid_cmd = app.add_subcommand("deid", "De-identify a corpus");
    deid_cmd->add_option("--in", o.in, "Input corpus")->required()->check(CLI::ExistingDirectory);
    deid_cmd->add_option("--out", o.out, "Output directory")->required();
    deid_cmd->add_option("--policy", o.policy, "Policy file (built-in default when omitted)")
        ->check(CLI::ExistingFile);
    deid_cmd->add_option("--seed", o.seed, "Vault seed");
    deid_cmd->add_option("--regions", o.regions, "Redaction regions CSV (default <in>/regions.csv)")
        ->check(CLI::ExistingFile);
    deid_cmd->add_flag("--lenient", o.lenient, "Accept files without preamble");
    deid_cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto* score_cmd = app.add_subcommand("score", "Score a de-identified corpus against an answer key");
    score_cmd->add_option("--key", o.key, "Answer key CSV")->required()->check(CLI::ExistingFile);
    score_cmd->add_option("--orig", o.orig, "Original corpus")->required()->check(CLI::ExistingDirectory);
    score_cmd->add_option("--sub", o.sub, "Submitted corpus")->required()->check(CLI::ExistingDirectory);
    score_cmd->add_option("--patid-map", o.patid_map, "Patient ID mapping CSV")->required()->check(CLI::ExistingFile);
    score_cmd->add_option("--uid-map", o.uid_map, "UID mapping CSV")->required()->check(CLI::ExistingFile);
    score_cmd->add_option("--mode", o.mode, "series or instance")->check(CLI::IsMember({"series", "instance"}));
    score_cmd->add_option("--weights", o.weights, "CSV of action,weight")->check(CLI::ExistingFile);
    score_cmd->add_option("--out", o.out, "Report directory")->required();
    score_cmd->add_flag("--strict-dates", o.strict_dates, "Require one shift per patient");
    score_cmd->add_flag("--lenient", o.lenient, "Accept files without preamble");
    score_cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto* report_cmd = app.add_subcommand("report", "Re-emit the summary sheets of a scoring run");
    report_cmd->add_option("--in", o.in, "Run directory holding summary.json")->required()->check(CLI::ExistingDirectory);
    report_cmd->add_option("--out", o.out, "Destination (default: --in)");
    report_cmd->add_option("--weights", o.weights, "CSV of action,weight")->check(CLI::ExistingFile);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }

    try {
        if (gen_cmd->parsed()) return do_gen(o, out);
        if (deid_cmd->parsed()) return do_deid(o, out);
        if (score_cmd->parsed()) return do_score(o, out);
        if (report_cmd->parsed()) return do_report(o, out);
    } catch (const score::key_corpus_mismatch& e) {
        err << "error: " << e.what() << "\n";
        return scoring_config_error;
    } catch (const score::bad_weights& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const dicom::dicom_error& e) {
        err << "error: " << e.what() << "\n";
        return data_error;
    } catch (const key::key_error& e) {
        err << "error: " << e.what() << "\n";
        return data_error;
    } catch (const deid::deid_error& e) {
        err << "error: " << e.what() << "\n";
        return data_error;
    } catch (const gen::spec_error& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return other_error;
    }
    return usage_error;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace dcmdeid::cli
