#pragma once

#include "sigstar/faults.hpp"
#include "sigstar/metrics.hpp"
#include "sigstar/network.hpp"
#include "sigstar/star.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sigstar::io {

inline constexpr const char* kFormatVersion = "1";

// ---- normalization --------------------------------------------------------

struct MinMax {
    double orig_min = 0.0;
    double orig_max = 1.0;
};

/// x -> (x - orig_min) / (orig_max - orig_min). Throws unless orig_max > orig_min.
Eigen::VectorXd minmax_normalize(const Eigen::VectorXd& samples, double orig_min, double orig_max);
Eigen::VectorXd minmax_denormalize(const Eigen::VectorXd& normalized, double orig_min, double orig_max);

// ---- files ----------------------------------------------------------------

/// Writes to a sibling temp file and renames it into place, so a failed
/// write never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// ---- models ---------------------------------------------------------------

nlohmann::json model_to_json(const Network& net);
/// Validates the result. Unknown layer types or format versions throw
/// Error(Parse) with a message naming the offending layer/field.
Network model_from_json(const nlohmann::json& j);

Network load_model(const std::filesystem::path& path);
void save_model(const Network& net, const std::filesystem::path& path);

// ---- signals --------------------------------------------------------------

struct Signal {
    std::string id;
    Eigen::VectorXd samples;
};

struct SignalSet {
    std::vector<Signal> signals;
    Eigen::Index length = 0;
    std::optional<MinMax> normalization; // set when samples are min-max normalized

    const Signal& find(const std::string& id) const;
    std::vector<std::string> ids() const;
};

/// CSV with header `id,s0,s1,...`. An optional first line
/// `# minmax,<orig_min>,<orig_max>` records the normalization. Ragged rows,
/// NaN and unparseable cells are rejected with the offending line number.
SignalSet parse_signals_csv(const std::string& text, const std::string& source = "<memory>");
SignalSet load_signals(const std::filesystem::path& path);
std::string signals_to_csv(const SignalSet& set);
void save_signals(const SignalSet& set, const std::filesystem::path& path);

// ---- campaigns, bounds, stars ----------------------------------------------

nlohmann::json campaign_to_json(const Campaign& campaign);
Campaign campaign_from_json(const nlohmann::json& j);
Campaign load_campaign(const std::filesystem::path& path);
void save_campaign(const Campaign& campaign, const std::filesystem::path& path);

nlohmann::json bounds_to_json(const Bounds& bounds);
Bounds bounds_from_json(const nlohmann::json& j);
Bounds load_bounds(const std::filesystem::path& path);

/// Star spec, one of
///   {"kind":"point","signal":[...]}
///   {"kind":"box","lower":[...],"upper":[...]}
///   {"kind":"spike","signal":[...],"location":k,"amp_lower":a,"amp_upper":b}
///   {"kind":"star","center":[...],"basis":[[row]...],"pred_matrix":[[row]...],
///    "pred_rhs":[...],"pred_lower":[...],"pred_upper":[...]}
SignalStar star_from_json(const nlohmann::json& j);
nlohmann::json star_to_json(const SignalStar& star);

// ---- reports & plots ------------------------------------------------------

nlohmann::json report_to_json(const RobustnessReport& report, GradeVariant variant);
void write_report(const RobustnessReport& report, GradeVariant variant, const nlohmann::json& config,
                  const std::filesystem::path& path);

struct PlotOptions {
    std::string title;
    int width = 960;
    int height = 420;
};

/// Self-contained SVG: band region (blue), output-bound region (red),
/// reference polyline and a marker per violating instance. Byte-identical
/// for identical inputs.
std::string render_plot(const Bounds& bounds, const ThresholdBand& band, const PlotOptions& options = {});
void write_plot(const Bounds& bounds, const ThresholdBand& band, const std::filesystem::path& path,
                const PlotOptions& options = {});

/// Shortest representation that parses back to the same double.
std::string format_double(double value);

} // namespace sigstar::io
