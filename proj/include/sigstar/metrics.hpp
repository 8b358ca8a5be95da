#pragma once

#include "sigstar/star.hpp"

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace sigstar {

/// Slack applied to the closed "within band" comparisons so LP round-off at
/// exactly touching bounds does not flip a verdict.
inline constexpr double kWithinTol = 1e-9;

/// Corridor reference +- tau around the unperturbed signal.
class ThresholdBand {
public:
    /// Throws Error(InvalidArgument) unless tau > 0 and finite.
    ThresholdBand(Eigen::VectorXd reference, double tau);

    /// Asymmetric band; both widths must be positive.
    ThresholdBand(Eigen::VectorXd reference, double tau_below, double tau_above);

    const Eigen::VectorXd& reference() const { return reference_; }
    const Eigen::VectorXd& lower() const { return lower_; }
    const Eigen::VectorXd& upper() const { return upper_; }
    double tau() const { return tau_above_; }
    double tau_below() const { return tau_below_; }
    double tau_above() const { return tau_above_; }
    Eigen::Index size() const { return reference_.size(); }

private:
    Eigen::VectorXd reference_;
    double tau_below_;
    double tau_above_;
    Eigen::VectorXd lower_;
    Eigen::VectorXd upper_;
};

enum class GradeVariant {
    BandExceedance, // distance past the band edge / tau; 0 iff fully robust
    FromReference,  // distance from the reference signal / tau; <= 1 iff fully robust
};

const char* to_string(GradeVariant variant) noexcept;
GradeVariant parse_grade_variant(const std::string& text);

enum class Verdict { Robust, Violated };
const char* to_string(Verdict verdict) noexcept;

struct InstanceVerdict {
    Eigen::Index index = 0;
    double out_lower = 0.0;
    double out_upper = 0.0;
    double band_lower = 0.0;
    double band_upper = 0.0;
    bool within = false;
    double exceedance = 0.0; // >= 0, distance past the nearer band edge
};

struct RobustnessReport {
    std::vector<InstanceVerdict> per_instance;
    double percentage_robustness = 0.0; // fraction in [0, 1]
    double grade_band_exceedance = 0.0;
    double grade_from_reference = 0.0;
    Eigen::Index worst_index = 0; // argmax for the band_exceedance grade
    Eigen::Index worst_index_from_reference = 0;
    Verdict verdict = Verdict::Violated;
    double tau = 0.0;

    double grade(GradeVariant variant) const
    {
        return variant == GradeVariant::BandExceedance ? grade_band_exceedance : grade_from_reference;
    }
};

/// Fraction of time instances whose output bounds sit inside the band.
double percentage_robustness(const Bounds& bounds, const ThresholdBand& band);

/// (grade, worst index). Ties go to the lowest index.
std::pair<double, Eigen::Index> unrobustness_grade(const Bounds& bounds, const ThresholdBand& band,
                                                   GradeVariant variant);

RobustnessReport build_report(const Bounds& bounds, const ThresholdBand& band);

} // namespace sigstar
