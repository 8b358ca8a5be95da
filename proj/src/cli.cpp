#include "sigstar/cli.hpp"

#include "sigstar/error.hpp"
#include "sigstar/faults.hpp"
#include "sigstar/io.hpp"
#include "sigstar/linprog.hpp"
#include "sigstar/synth.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <thread>

namespace sigstar::cli {

using nlohmann::json;

namespace {

int exit_code_for(const Error& e)
{
    return e.code() == ErrorCode::SplitBudgetExceeded ? kSplitBudget : kUsageError;
}

void report_error(std::ostream& err, const Error& e)
{
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    if (e.code() == ErrorCode::SplitBudgetExceeded) {
        err << "hint: exact splitting grows exponentially; use --method approx for an over-approximation\n";
    }
}

json spot_to_json(const SpotCheck& s)
{
    return {{"samples", s.samples}, {"max_violation", s.max_violation}, {"passed", s.passed}};
}

std::string percent(double fraction)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << fraction * 100.0 << "%";
    return os.str();
}

} // namespace

json VerifyConfig::to_json() const
{
    json j = {{"model", model.string()},
              {"signals", signals.string()},
              {"signal_id", signal_id},
              {"fault", {{"location", fault_location}, {"amp_lower", fault_lo}, {"amp_upper", fault_hi}}},
              {"tau", tau},
              {"method", sigstar::to_string(method)},
              {"grade_variant", sigstar::to_string(grade_variant)},
              {"split_budget", split_budget},
              {"spot_check_samples", spot_check_samples},
              {"spot_check_seed", spot_check_seed}};
    if (recorded_bounds) j["recorded_bounds"] = recorded_bounds->string();
    return j;
}

json CampaignConfig::to_json() const
{
    json j = {{"model", model.string()},
              {"signals", signals.string()},
              {"amp_magnitude", amp_magnitude},
              {"tau", tau},
              {"seed", seed},
              {"method", sigstar::to_string(method)},
              {"grade_variant", sigstar::to_string(grade_variant)},
              {"split_budget", split_budget},
              {"limit", limit},
              {"spot_check_samples", spot_check_samples}};
    if (campaign_in) j["campaign"] = campaign_in->string();
    return j;
}

SpotCheck spot_check(const Network& net, const SignalStar& input, const Bounds& bounds, std::size_t samples,
                     std::uint64_t seed)
{
    SpotCheck s;
    s.samples = samples;
    for (const auto& x : input.sample(samples, seed)) {
        const Eigen::VectorXd y = forward(net, x);
        const double below = (bounds.lower - y).maxCoeff();
        const double above = (y - bounds.upper).maxCoeff();
        s.max_violation = std::max({s.max_violation, below, above});
    }
    s.passed = s.max_violation <= kSpotCheckTol;
    return s;
}

VerifyOutcome run_verify(const VerifyConfig& config)
{
    const auto start = std::chrono::steady_clock::now();
    const io::SignalSet signals = io::load_signals(config.signals);
    const Eigen::VectorXd reference = signals.find(config.signal_id).samples;
    const ThresholdBand band(reference, config.tau);

    VerifyOutcome outcome;
    if (config.recorded_bounds) {
        outcome.bounds = io::load_bounds(*config.recorded_bounds);
    } else {
        const Network net = io::load_model(config.model);
        const SpikeFault fault{config.fault_location, config.fault_lo, config.fault_hi};
        const SignalStar input = fault.input_set(reference);
        const auto before = linprog::invocation_count();
        ReachResult reach = reach_network(net, input, config.method, ReachOptions{config.split_budget});
        outcome.lp_calls = linprog::invocation_count() - before;
        outcome.bounds = reach.union_bounds;
        outcome.output_star_count = reach.output_stars.size();
        for (const auto& s : reach.stats) {
            outcome.stats.push_back({{"layer", s.layer},
                                     {"kind", s.kind},
                                     {"star_count", s.star_count},
                                     {"lp_calls", s.lp_calls},
                                     {"elapsed_ms", s.elapsed_ms}});
        }
        if (config.spot_check_samples > 0) {
            outcome.spot = spot_check(net, input, outcome.bounds, config.spot_check_samples, config.spot_check_seed);
        }
    }
    outcome.report = build_report(outcome.bounds, band);
    outcome.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (config.report_path) {
        json j = io::report_to_json(outcome.report, config.grade_variant);
        j["config"] = config.to_json();
        j["output_bounds"] = io::bounds_to_json(outcome.bounds);
        j["reach"] = {{"output_stars", outcome.output_star_count},
                      {"lp_calls", outcome.lp_calls},
                      {"elapsed_ms", outcome.elapsed_ms},
                      {"layers", outcome.stats}};
        if (outcome.spot) j["spot_check"] = spot_to_json(*outcome.spot);
        io::write_file_atomic(*config.report_path, j.dump(2) + "\n");
    }
    if (config.plot_path) {
        io::PlotOptions opts;
        opts.title = "signal " + config.signal_id + ", threshold " + io::format_double(config.tau);
        io::write_plot(outcome.bounds, band, *config.plot_path, opts);
    }
    return outcome;
}

int cmd_verify(const VerifyConfig& config, std::ostream& out, std::ostream& err)
{
    VerifyOutcome outcome;
    try {
        outcome = run_verify(config);
    } catch (const Error& e) {
        report_error(err, e);
        return exit_code_for(e);
    }
    const auto& r = outcome.report;
    if (config.json_output) {
        json j = {{"verdict", to_string(r.verdict)},
                  {"percentage_robustness", r.percentage_robustness},
                  {"grade_variant", to_string(config.grade_variant)},
                  {"grade", r.grade(config.grade_variant)},
                  {"worst_index", config.grade_variant == GradeVariant::BandExceedance ? r.worst_index
                                                                                       : r.worst_index_from_reference},
                  {"output_stars", outcome.output_star_count},
                  {"lp_calls", outcome.lp_calls},
                  {"elapsed_ms", outcome.elapsed_ms},
                  {"config", config.to_json()}};
        if (outcome.spot) j["spot_check"] = spot_to_json(*outcome.spot);
        out << j.dump() << "\n";
    } else {
        out << "verdict: " << to_string(r.verdict) << "\n"
            << "percentage robustness: " << r.percentage_robustness << " (" << percent(r.percentage_robustness)
            << ")\n"
            << "un-robustness grade (" << to_string(config.grade_variant) << "): " << r.grade(config.grade_variant)
            << " at index "
            << (config.grade_variant == GradeVariant::BandExceedance ? r.worst_index : r.worst_index_from_reference)
            << "\n";
        if (!config.recorded_bounds) {
            out << "output stars: " << outcome.output_star_count << ", LP calls: " << outcome.lp_calls << "\n";
        }
        if (outcome.spot) {
            out << "spot check: " << outcome.spot->samples << " samples, max violation "
                << outcome.spot->max_violation << (outcome.spot->passed ? " (passed)" : " (FAILED)") << "\n";
        }
    }
    return r.verdict == Verdict::Robust ? kRobust : kViolated;
}

int cmd_campaign(const CampaignConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        const Network net = io::load_model(config.model);
        const io::SignalSet signals = io::load_signals(config.signals);
        Campaign campaign;
        if (config.campaign_in) {
            campaign = io::load_campaign(*config.campaign_in);
        } else {
            auto ids = signals.ids();
            if (config.limit > 0 && ids.size() > config.limit) ids.resize(config.limit);
            campaign = generate_campaign(ids, signals.length, config.amp_magnitude, config.seed);
        }
        if (config.campaign_out) io::save_campaign(campaign, *config.campaign_out);

        struct Row {
            json j;
            bool robust = false;
            bool budget = false;
            double pr = 0.0;
            double grade = 0.0;
        };
        std::vector<Row> rows(campaign.entries.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t k = next.fetch_add(1);
                if (k >= rows.size()) return;
                const auto& entry = campaign.entries[k];
                Row& row = rows[k];
                row.j = {{"signal_id", entry.signal_id},
                         {"location", entry.fault.location},
                         {"amp_lower", entry.fault.amp_lower},
                         {"amp_upper", entry.fault.amp_upper}};
                try {
                    const Eigen::VectorXd reference = signals.find(entry.signal_id).samples;
                    const SignalStar input = entry.fault.input_set(reference);
                    const ReachResult reach =
                        reach_network(net, input, config.method, ReachOptions{config.split_budget});
                    const RobustnessReport rep = build_report(reach.union_bounds, ThresholdBand(reference, config.tau));
                    row.robust = rep.verdict == Verdict::Robust;
                    row.pr = rep.percentage_robustness;
                    row.grade = rep.grade(config.grade_variant);
                    row.j["percentage_robustness"] = rep.percentage_robustness;
                    row.j["grade"] = row.grade;
                    row.j["worst_index"] = config.grade_variant == GradeVariant::BandExceedance
                                               ? rep.worst_index
                                               : rep.worst_index_from_reference;
                    row.j["verdict"] = to_string(rep.verdict);
                    row.j["output_stars"] = reach.output_stars.size();
                    if (config.spot_check_samples > 0) {
                        row.j["spot_check"] = spot_to_json(
                            spot_check(net, input, reach.union_bounds, config.spot_check_samples, campaign.seed + k));
                    }
                } catch (const Error& e) {
                    row.budget = e.code() == ErrorCode::SplitBudgetExceeded;
                    row.j["verdict"] = "error";
                    row.j["error"] = e.what();
                }
            }
        };
        const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, rows.size()));
        std::vector<std::thread> pool;
        for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();

        json rows_json = json::array();
        double sum = 0.0, min_pr = 1.0, max_grade = 0.0;
        std::size_t ok = 0, robust = 0;
        bool budget = false;
        for (const auto& r : rows) {
            rows_json.push_back(r.j);
            if (r.j["verdict"] == "error") {
                budget = budget || r.budget;
                continue;
            }
            ++ok;
            sum += r.pr;
            min_pr = std::min(min_pr, r.pr);
            max_grade = std::max(max_grade, r.grade);
            if (r.robust) ++robust;
        }
        json agg = {{"config", config.to_json()},
                    {"campaign", io::campaign_to_json(campaign)},
                    {"signals_verified", ok},
                    {"signals_robust", robust},
                    {"mean_percentage_robustness", ok ? sum / static_cast<double>(ok) : 0.0},
                    {"min_percentage_robustness", ok ? min_pr : 0.0},
                    {"max_grade", max_grade},
                    {"rows", rows_json}};
        io::write_file_atomic(config.out, agg.dump(2) + "\n");

        if (config.json_output) {
            json summary = agg;
            summary.erase("rows");
            summary.erase("campaign");
            out << summary.dump() << "\n";
        } else {
            out << "signals verified: " << ok << " / " << rows.size() << ", robust: " << robust << "\n"
                << "mean percentage robustness: " << agg["mean_percentage_robustness"].get<double>() << "\n"
                << "min percentage robustness: " << agg["min_percentage_robustness"].get<double>() << "\n"
                << "max grade (" << to_string(config.grade_variant) << "): " << max_grade << "\n";
        }
        if (budget) return kSplitBudget;
        if (ok < rows.size()) return kUsageError;
        return robust == rows.size() ? kRobust : kViolated;
    } catch (const Error& e) {
        report_error(err, e);
        return exit_code_for(e);
    }
}

int cmd_gen_fixtures(std::uint64_t seed, const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err)
{
    try {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) fail(ErrorCode::Io, "cannot create " + out_dir.string());
        const auto ds = synth::make_dataset(seed);
        io::save_signals(ds.train, out_dir / "train.csv");
        io::save_signals(ds.test, out_dir / "test.csv");
        io::save_model(synth::reference_autoencoder(seed), out_dir / "reference_autoencoder.json");
        io::save_model(synth::tiny_model(), out_dir / "tiny_2_2_2.json");
        out << "wrote " << ds.train.signals.size() << " train / " << ds.test.signals.size() << " test signals, "
            << "reference_autoencoder.json and tiny_2_2_2.json to " << out_dir.string() << "\n";
        return 0;
    } catch (const Error& e) {
        report_error(err, e);
        return exit_code_for(e);
    }
}

int cmd_bounds(const std::filesystem::path& model, const std::filesystem::path& star_spec, ReachMethod method,
               std::size_t split_budget, std::ostream& out, std::ostream& err)
{
    try {
        const Network net = io::load_model(model);
        const json spec = json::parse(io::read_file(star_spec), nullptr, false);
        if (spec.is_discarded()) fail(ErrorCode::Parse, star_spec.string() + ": invalid JSON");
        const SignalStar input = io::star_from_json(spec);
        const ReachResult r = reach_network(net, input, method, ReachOptions{split_budget});
        json j = io::bounds_to_json(r.union_bounds);
        j["method"] = to_string(method);
        j["output_stars"] = r.output_stars.size();
        out << j.dump() << "\n";
        return 0;
    } catch (const Error& e) {
        report_error(err, e);
        return exit_code_for(e);
    }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Star-set robustness verification of autoencoder regression networks under spike faults"};
    app.require_subcommand(1);

    const std::map<std::string, ReachMethod> methods{{"exact", ReachMethod::Exact}, {"approx", ReachMethod::Approx}};
    const std::map<std::string, GradeVariant> variants{{"band-exceedance", GradeVariant::BandExceedance},
                                                       {"from-reference", GradeVariant::FromReference}};

    VerifyConfig vc;
    std::string report, plot, recorded;
    auto* verify = app.add_subcommand("verify", "Verify one signal against a spike fault (exit 0 robust, 1 violated)");
    verify->add_option("--model", vc.model, "Model JSON (dense/relu layers)");
    verify->add_option("--signals", vc.signals, "Signal CSV holding the actual (unperturbed) signal")->required();
    verify->add_option("--signal-id", vc.signal_id, "Row id of the signal to verify")->required();
    verify->add_option("--fault-loc", vc.fault_location, "Spike fault time index");
    verify->add_option("--fault-lo", vc.fault_lo, "Lower spike amplitude");
    verify->add_option("--fault-hi", vc.fault_hi, "Upper spike amplitude");
    verify->add_option("--tau", vc.tau, "Threshold: acceptable deviation around the actual signal")->required();
    verify->add_option("--method", vc.method, "Reach method: exact (ReLU splitting) or approx (triangle relaxation)")
        ->transform(CLI::CheckedTransformer(methods));
    verify->add_option("--grade-variant", vc.grade_variant,
                       "Un-robustness grade: band-exceedance (default) or from-reference")
        ->transform(CLI::CheckedTransformer(variants));
    verify->add_option("--split-budget", vc.split_budget, "Maximum number of stars in exact reach");
    verify->add_option("--spot-check", vc.spot_check_samples, "Sampled soundness check: number of faulted inputs");
    verify->add_option("--spot-check-seed", vc.spot_check_seed, "Seed for the soundness check samples");
    verify->add_option("--bounds", recorded, "Score recorded output bounds (JSON) instead of running reach");
    verify->add_option("--report", report, "Write the robustness report JSON here");
    verify->add_option("--plot", plot, "Write an SVG plot of output bounds vs. threshold band here");
    verify->add_flag("--json", vc.json_output, "Machine-readable JSON on stdout");

    CampaignConfig cc;
    std::string campaign_in, campaign_out;
    auto* campaign = app.add_subcommand("campaign", "Verify a random spike fault on every signal of a set");
    campaign->add_option("--model", cc.model, "Model JSON")->required();
    campaign->add_option("--signals", cc.signals, "Signal CSV")->required();
    campaign->add_option("--amp", cc.amp_magnitude, "Spike amplitude magnitude a; faults span [-a, a]");
    campaign->add_option("--tau", cc.tau, "Threshold: acceptable deviation")->required();
    campaign->add_option("--seed", cc.seed, "Seed for fault locations");
    campaign->add_option("--method", cc.method, "exact or approx")->transform(CLI::CheckedTransformer(methods));
    campaign->add_option("--grade-variant", cc.grade_variant, "band-exceedance or from-reference")
        ->transform(CLI::CheckedTransformer(variants));
    campaign->add_option("--split-budget", cc.split_budget, "Maximum number of stars in exact reach");
    campaign->add_option("--limit", cc.limit, "Only the first N signals");
    campaign->add_option("--jobs", cc.jobs, "Signals verified concurrently");
    campaign->add_option("--spot-check", cc.spot_check_samples, "Sampled soundness check per signal");
    campaign->add_option("--campaign", campaign_in, "Reuse a saved campaign JSON");
    campaign->add_option("--save-campaign", campaign_out, "Save the generated campaign JSON");
    campaign->add_option("--out", cc.out, "Aggregate JSON output")->required();
    campaign->add_flag("--json", cc.json_output, "Machine-readable JSON summary on stdout");

    std::uint64_t fixture_seed = 0;
    std::string fixture_dir;
    auto* gen = app.add_subcommand("gen-fixtures", "Write the synthetic dataset and fixture models");
    gen->add_option("--seed", fixture_seed, "Generator seed");
    gen->add_option("--out-dir", fixture_dir, "Output directory")->required();

    std::string bounds_model, bounds_star;
    ReachMethod bounds_method = ReachMethod::Exact;
    std::size_t bounds_budget = kDefaultSplitBudget;
    auto* bounds = app.add_subcommand("bounds", "Print reachable output bounds of a star spec as JSON");
    bounds->add_option("--model", bounds_model, "Model JSON")->required();
    bounds->add_option("--star", bounds_star, "Star spec JSON (point, box, spike or star)")->required();
    bounds->add_option("--method", bounds_method, "exact or approx")->transform(CLI::CheckedTransformer(methods));
    bounds->add_option("--split-budget", bounds_budget, "Maximum number of stars in exact reach");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : kUsageError;
    }

    if (*verify) {
        if (!report.empty()) vc.report_path = report;
        if (!plot.empty()) vc.plot_path = plot;
        if (!recorded.empty()) vc.recorded_bounds = recorded;
        if (!vc.recorded_bounds && vc.model.empty()) {
            err << "error: verify needs --model (or --bounds to score recorded output bounds)\n";
            return kUsageError;
        }
        return cmd_verify(vc, out, err);
    }
    if (*campaign) {
        if (!campaign_in.empty()) cc.campaign_in = campaign_in;
        if (!campaign_out.empty()) cc.campaign_out = campaign_out;
        return cmd_campaign(cc, out, err);
    }
    if (*gen) return cmd_gen_fixtures(fixture_seed, fixture_dir, out, err);
    return cmd_bounds(bounds_model, bounds_star, bounds_method, bounds_budget, out, err);
}

} // namespace sigstar::cli
