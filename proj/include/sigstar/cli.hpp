#pragma once

#include "sigstar/metrics.hpp"
#include "sigstar/reach.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace sigstar::cli {

enum ExitCode : int {
    kRobust = 0,
    kViolated = 1,
    kUsageError = 2,
    kSplitBudget = 3,
};

struct VerifyConfig {
    std::filesystem::path model;
    std::filesystem::path signals;
    std::string signal_id;
    Eigen::Index fault_location = 0;
    double fault_lo = 0.0;
    double fault_hi = 0.0;
    double tau = 0.0;
    ReachMethod method = ReachMethod::Exact;
    GradeVariant grade_variant = GradeVariant::BandExceedance;
    std::size_t split_budget = kDefaultSplitBudget;
    std::size_t spot_check_samples = 0; // sampled soundness check, 0 = off
    std::uint64_t spot_check_seed = 1;
    std::optional<std::filesystem::path> recorded_bounds; // score these instead of running reach
    std::optional<std::filesystem::path> report_path;
    std::optional<std::filesystem::path> plot_path;
    bool json_output = false;

    nlohmann::json to_json() const;
};

struct SpotCheck {
    std::size_t samples = 0;
    double max_violation = 0.0; // distance of the worst forward output outside the bounds
    bool passed = true;
};

/// Tolerance for the sampled soundness check.
inline constexpr double kSpotCheckTol = 1e-6;

/// Samples the input star, evaluates the network and measures how far the
/// outputs fall outside `bounds`.
SpotCheck spot_check(const Network& net, const SignalStar& input, const Bounds& bounds, std::size_t samples,
                     std::uint64_t seed);

struct VerifyOutcome {
    RobustnessReport report;
    Bounds bounds;
    std::size_t output_star_count = 0;
    std::uint64_t lp_calls = 0;
    double elapsed_ms = 0.0;
    std::optional<SpotCheck> spot;
    nlohmann::json stats = nlohmann::json::array();
};

/// Library entry for one verification. Throws sigstar::Error on failure.
VerifyOutcome run_verify(const VerifyConfig& config);

int cmd_verify(const VerifyConfig& config, std::ostream& out, std::ostream& err);

struct CampaignConfig {
    std::filesystem::path model;
    std::filesystem::path signals;
    std::optional<std::filesystem::path> campaign_in;  // reuse a saved campaign
    std::optional<std::filesystem::path> campaign_out; // save the generated campaign
    double amp_magnitude = 0.3;
    double tau = 0.0;
    std::uint64_t seed = 0;
    ReachMethod method = ReachMethod::Exact;
    GradeVariant grade_variant = GradeVariant::BandExceedance;
    std::size_t split_budget = kDefaultSplitBudget;
    std::size_t limit = 0; // first N signals only, 0 = all
    std::size_t jobs = 1;
    std::size_t spot_check_samples = 0;
    std::filesystem::path out;
    bool json_output = false;

    nlohmann::json to_json() const;
};

int cmd_campaign(const CampaignConfig& config, std::ostream& out, std::ostream& err);

/// Synthetic dataset (train.csv / test.csv), seeded reference autoencoder
/// and the tiny 2-2-2 model.
int cmd_gen_fixtures(std::uint64_t seed, const std::filesystem::path& out_dir, std::ostream& out,
                     std::ostream& err);

int cmd_bounds(const std::filesystem::path& model, const std::filesystem::path& star_spec, ReachMethod method,
               std::size_t split_budget, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace sigstar::cli
