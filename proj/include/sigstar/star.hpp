#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

namespace sigstar {

/// Elementwise signal bounds.
struct Bounds {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    Eigen::Index size() const { return lower.size(); }
};

/// A star set over signal space:
///
///   { center + basis * alpha  |  pred_matrix * alpha <= pred_rhs,
///                                pred_lower <= alpha <= pred_upper }
///
/// center is the anchor signal, the basis columns are generator signals and
/// the predicate restricts the generator coefficients. The box part of the
/// predicate is kept apart from the general rows because bound queries and
/// sampling use it directly.
///
/// Values are immutable; every operation returns a new star.
class SignalStar {
public:
    /// Empty-dimension star (n = 0, m = 0).
    SignalStar() = default;

    /// Throws Error(DimensionMismatch) on inconsistent shapes and
    /// Error(InvalidArgument) on NaN or infinite center/basis entries.
    SignalStar(Eigen::VectorXd center, Eigen::MatrixXd basis, Eigen::MatrixXd pred_matrix,
               Eigen::VectorXd pred_rhs, Eigen::VectorXd pred_lower, Eigen::VectorXd pred_upper);

    static SignalStar point(const Eigen::VectorXd& signal);

    /// Axis-aligned box. Centered at the midpoint with alpha in [-1, 1];
    /// coordinates with lower == upper get no generator.
    static SignalStar from_bounds(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper);

    /// One-sample additive spike at `location` with amplitude in
    /// [amp_lower, amp_upper].
    static SignalStar from_spike_fault(const Eigen::VectorXd& signal, Eigen::Index location,
                                       double amp_lower, double amp_upper);

    Eigen::Index dim() const { return center_.size(); }
    Eigen::Index num_generators() const { return basis_.cols(); }
    Eigen::Index num_constraints() const { return pred_matrix_.rows(); }

    const Eigen::VectorXd& center() const { return center_; }
    const Eigen::MatrixXd& basis() const { return basis_; }
    const Eigen::MatrixXd& pred_matrix() const { return pred_matrix_; }
    const Eigen::VectorXd& pred_rhs() const { return pred_rhs_; }
    const Eigen::VectorXd& pred_lower() const { return pred_lower_; }
    const Eigen::VectorXd& pred_upper() const { return pred_upper_; }

    /// True when some pred_lower[i] > pred_upper[i]. Set at construction.
    bool flagged_empty() const { return flagged_empty_; }

    /// Image under x -> W x + b. The predicate is carried over unchanged.
    SignalStar affine_map(const Eigen::MatrixXd& weights, const Eigen::VectorXd& bias) const;

    /// Intersection with { x | a . x <= rhs }, as one predicate row
    /// (a^T V) alpha <= rhs - a^T c.
    SignalStar add_state_halfspace(const Eigen::VectorXd& a, double rhs) const;

    /// Exact (LP) range of coordinate `index`. Two solver calls.
    /// Throws Error(EmptySet) when the star is empty.
    std::pair<double, double> get_range(Eigen::Index index) const;

    /// get_range for every coordinate.
    Bounds get_ranges() const;

    /// Cheap sound over-approximation of coordinate `index` using only the
    /// alpha box (predicate rows ignored). May be infinite.
    std::pair<double, double> interval_range(Eigen::Index index) const;

    bool is_empty() const;

    /// True iff some feasible alpha gives ||c + V alpha - x||_inf <= tol.
    bool contains(const Eigen::VectorXd& x, double tol = 1e-7) const;

    /// Rejection sampling from the alpha box against the predicate rows.
    /// Deterministic for a fixed seed. Throws Error(EmptySet) for a flagged
    /// empty star and Error(RejectionBudgetExhausted) after 1e6 consecutive
    /// rejections.
    std::vector<Eigen::VectorXd> sample(std::size_t count, std::uint64_t seed) const;

    /// Feasible alpha vectors behind sample(); same seed gives the same draws.
    std::vector<Eigen::VectorXd> sample_alpha(std::size_t count, std::uint64_t seed) const;

    Eigen::VectorXd evaluate(const Eigen::VectorXd& alpha) const { return center_ + basis_ * alpha; }

private:
    Eigen::VectorXd center_;
    Eigen::MatrixXd basis_;
    Eigen::MatrixXd pred_matrix_;
    Eigen::VectorXd pred_rhs_;
    Eigen::VectorXd pred_lower_;
    Eigen::VectorXd pred_upper_;
    bool flagged_empty_ = false;
};

inline constexpr std::size_t kMaxConsecutiveRejections = 1'000'000;

} // namespace sigstar
