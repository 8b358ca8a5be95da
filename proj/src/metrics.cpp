#include "sigstar/metrics.hpp"

#include "sigstar/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace sigstar {

namespace {

void check_bounds(const Bounds& bounds, const ThresholdBand& band)
{
    require_dims(bounds.lower.size() == band.size(), "bounds.lower", static_cast<std::size_t>(band.size()),
                 static_cast<std::size_t>(bounds.lower.size()));
    require_dims(bounds.upper.size() == band.size(), "bounds.upper", static_cast<std::size_t>(band.size()),
                 static_cast<std::size_t>(bounds.upper.size()));
}

bool within(const Bounds& b, const ThresholdBand& band, Eigen::Index i)
{
    return band.lower()[i] <= b.lower[i] + kWithinTol && b.upper[i] <= band.upper()[i] + kWithinTol;
}

// Distance past the nearer band edge; anything inside the within-slack counts
// as zero so that within <=> exceedance == 0.
double exceedance(const Bounds& b, const ThresholdBand& band, Eigen::Index i)
{
    const double raw = std::max({band.lower()[i] - b.lower[i], b.upper[i] - band.upper()[i], 0.0});
    return raw > kWithinTol ? raw : 0.0;
}

// Normalized grade contributions, each side scaled by its own band width.
double band_grade(const Bounds& b, const ThresholdBand& band, Eigen::Index i)
{
    if (exceedance(b, band, i) == 0.0) return 0.0;
    return std::max({(band.lower()[i] - b.lower[i]) / band.tau_below(),
                     (b.upper[i] - band.upper()[i]) / band.tau_above(), 0.0});
}

double reference_grade(const Bounds& b, const ThresholdBand& band, Eigen::Index i)
{
    return std::max((band.reference()[i] - b.lower[i]) / band.tau_below(),
                    (b.upper[i] - band.reference()[i]) / band.tau_above());
}

} // namespace

ThresholdBand::ThresholdBand(Eigen::VectorXd reference, double tau)
    : ThresholdBand(std::move(reference), tau, tau)
{
}

ThresholdBand::ThresholdBand(Eigen::VectorXd reference, double tau_below, double tau_above)
    : reference_(std::move(reference)), tau_below_(tau_below), tau_above_(tau_above)
{
    if (!(tau_below_ > 0.0) || !(tau_above_ > 0.0) || !std::isfinite(tau_below_) || !std::isfinite(tau_above_)) {
        fail(ErrorCode::InvalidArgument, "threshold tau must be positive and finite");
    }
    if (!reference_.allFinite()) fail(ErrorCode::InvalidArgument, "reference signal has non-finite entries");
    lower_ = reference_.array() - tau_below_;
    upper_ = reference_.array() + tau_above_;
}

const char* to_string(GradeVariant variant) noexcept
{
    return variant == GradeVariant::BandExceedance ? "band-exceedance" : "from-reference";
}

GradeVariant parse_grade_variant(const std::string& text)
{
    if (text == "band-exceedance" || text == "band_exceedance") return GradeVariant::BandExceedance;
    if (text == "from-reference" || text == "from_reference") return GradeVariant::FromReference;
    fail(ErrorCode::InvalidArgument,
         "unknown grade variant '" + text + "' (expected band-exceedance or from-reference)");
}

const char* to_string(Verdict verdict) noexcept
{
    return verdict == Verdict::Robust ? "robust" : "violated";
}

double percentage_robustness(const Bounds& bounds, const ThresholdBand& band)
{
    check_bounds(bounds, band);
    const Eigen::Index n = band.size();
    if (n == 0) return 1.0;
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (within(bounds, band, i)) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(n);
}

std::pair<double, Eigen::Index> unrobustness_grade(const Bounds& bounds, const ThresholdBand& band,
                                                   GradeVariant variant)
{
    check_bounds(bounds, band);
    double worst = variant == GradeVariant::BandExceedance ? 0.0 : -std::numeric_limits<double>::infinity();
    Eigen::Index worst_index = 0;
    for (Eigen::Index i = 0; i < band.size(); ++i) {
        const double g = variant == GradeVariant::BandExceedance ? band_grade(bounds, band, i)
                                                                 : reference_grade(bounds, band, i);
        if (g > worst) {
            worst = g;
            worst_index = i;
        }
    }
    if (band.size() == 0) worst = 0.0;
    return {worst, worst_index};
}

RobustnessReport build_report(const Bounds& bounds, const ThresholdBand& band)
{
    check_bounds(bounds, band);
    RobustnessReport report;
    report.tau = band.tau();
    report.per_instance.reserve(static_cast<std::size_t>(band.size()));
    for (Eigen::Index i = 0; i < band.size(); ++i) {
        report.per_instance.push_back({i, bounds.lower[i], bounds.upper[i], band.lower()[i], band.upper()[i],
                                       within(bounds, band, i), exceedance(bounds, band, i)});
    }
    report.percentage_robustness = percentage_robustness(bounds, band);
    std::tie(report.grade_band_exceedance, report.worst_index) =
        unrobustness_grade(bounds, band, GradeVariant::BandExceedance);
    std::tie(report.grade_from_reference, report.worst_index_from_reference) =
        unrobustness_grade(bounds, band, GradeVariant::FromReference);
    report.verdict = report.percentage_robustness == 1.0 ? Verdict::Robust : Verdict::Violated;
    return report;
}

} // namespace sigstar
