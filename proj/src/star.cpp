#include "sigstar/star.hpp"

#include "sigstar/error.hpp"
#include "sigstar/linprog.hpp"
#include "sigstar/rng.hpp"

#include <cmath>
#include <limits>

namespace sigstar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(const Eigen::MatrixXd& m, const char* what)
{
    if (!m.allFinite()) fail(ErrorCode::InvalidArgument, std::string(what) + " has NaN or infinite entries");
}

} // namespace

SignalStar::SignalStar(Eigen::VectorXd center, Eigen::MatrixXd basis, Eigen::MatrixXd pred_matrix,
                       Eigen::VectorXd pred_rhs, Eigen::VectorXd pred_lower, Eigen::VectorXd pred_upper)
    : center_(std::move(center)),
      basis_(std::move(basis)),
      pred_matrix_(std::move(pred_matrix)),
      pred_rhs_(std::move(pred_rhs)),
      pred_lower_(std::move(pred_lower)),
      pred_upper_(std::move(pred_upper))
{
    const auto n = static_cast<std::size_t>(center_.size());
    const auto m = static_cast<std::size_t>(pred_lower_.size());
    require_dims(static_cast<std::size_t>(basis_.rows()) == n || (basis_.size() == 0 && m == 0),
                 "basis rows", n, static_cast<std::size_t>(basis_.rows()));
    if (basis_.rows() != center_.size()) basis_.resize(center_.size(), 0);
    require_dims(static_cast<std::size_t>(basis_.cols()) == m, "basis cols", m,
                 static_cast<std::size_t>(basis_.cols()));
    require_dims(static_cast<std::size_t>(pred_upper_.size()) == m, "pred_upper", m,
                 static_cast<std::size_t>(pred_upper_.size()));
    require_dims(pred_matrix_.rows() == pred_rhs_.size(), "pred_rhs",
                 static_cast<std::size_t>(pred_matrix_.rows()), static_cast<std::size_t>(pred_rhs_.size()));
    if (pred_matrix_.rows() == 0) {
        pred_matrix_.resize(0, static_cast<Eigen::Index>(m));
    }
    require_dims(static_cast<std::size_t>(pred_matrix_.cols()) == m, "pred_matrix cols", m,
                 static_cast<std::size_t>(pred_matrix_.cols()));
    require_finite(center_, "center");
    require_finite(basis_, "basis");
    require_finite(pred_matrix_, "pred_matrix");
    require_finite(pred_rhs_, "pred_rhs");
    if (pred_lower_.hasNaN() || pred_upper_.hasNaN()) {
        fail(ErrorCode::InvalidArgument, "predicate bounds contain NaN");
    }
    for (Eigen::Index i = 0; i < pred_lower_.size(); ++i) {
        if (pred_lower_[i] > pred_upper_[i]) flagged_empty_ = true;
    }
}

SignalStar SignalStar::point(const Eigen::VectorXd& signal)
{
    const Eigen::Index n = signal.size();
    return SignalStar(signal, Eigen::MatrixXd(n, 0), Eigen::MatrixXd(0, 0), Eigen::VectorXd(0),
                      Eigen::VectorXd(0), Eigen::VectorXd(0));
}

SignalStar SignalStar::from_bounds(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper)
{
    require_dims(lower.size() == upper.size(), "upper", static_cast<std::size_t>(lower.size()),
                 static_cast<std::size_t>(upper.size()));
    require_finite(lower, "lower");
    require_finite(upper, "upper");
    const Eigen::Index n = lower.size();
    Eigen::Index m = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (lower[i] > upper[i]) {
            fail(ErrorCode::InvalidArgument,
                 "lower > upper at index " + std::to_string(i));
        }
        if (upper[i] > lower[i]) ++m;
    }
    Eigen::VectorXd center(n);
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, m);
    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (upper[i] > lower[i]) {
            center[i] = 0.5 * (lower[i] + upper[i]);
            basis(i, col++) = 0.5 * (upper[i] - lower[i]);
        } else {
            center[i] = lower[i];
        }
    }
    return SignalStar(std::move(center), std::move(basis), Eigen::MatrixXd(0, m), Eigen::VectorXd(0),
                      Eigen::VectorXd::Constant(m, -1.0), Eigen::VectorXd::Constant(m, 1.0));
}

SignalStar SignalStar::from_spike_fault(const Eigen::VectorXd& signal, Eigen::Index location,
                                        double amp_lower, double amp_upper)
{
    if (location < 0 || location >= signal.size()) {
        fail(ErrorCode::InvalidArgument, "fault location " + std::to_string(location) +
                                             " outside [0, " + std::to_string(signal.size()) + ")");
    }
    if (!std::isfinite(amp_lower) || !std::isfinite(amp_upper)) {
        fail(ErrorCode::InvalidArgument, "fault amplitude bounds must be finite");
    }
    if (amp_lower > amp_upper) {
        fail(ErrorCode::InvalidArgument, "inverted fault amplitude interval");
    }
    const Eigen::Index n = signal.size();
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, 1);
    basis(location, 0) = 1.0;
    return SignalStar(signal, std::move(basis), Eigen::MatrixXd(0, 1), Eigen::VectorXd(0),
                      Eigen::VectorXd::Constant(1, amp_lower), Eigen::VectorXd::Constant(1, amp_upper));
}

SignalStar SignalStar::affine_map(const Eigen::MatrixXd& weights, const Eigen::VectorXd& bias) const
{
    require_dims(weights.cols() == dim(), "weights cols", static_cast<std::size_t>(dim()),
                 static_cast<std::size_t>(weights.cols()));
    require_dims(bias.size() == weights.rows(), "bias", static_cast<std::size_t>(weights.rows()),
                 static_cast<std::size_t>(bias.size()));
    Eigen::VectorXd center = weights * center_;
    center += bias;
    Eigen::MatrixXd basis = weights * basis_;
    return SignalStar(std::move(center), std::move(basis), pred_matrix_, pred_rhs_, pred_lower_, pred_upper_);
}

SignalStar SignalStar::add_state_halfspace(const Eigen::VectorXd& a, double rhs) const
{
    require_dims(a.size() == dim(), "halfspace normal", static_cast<std::size_t>(dim()),
                 static_cast<std::size_t>(a.size()));
    const Eigen::Index p = pred_matrix_.rows();
    Eigen::MatrixXd C(p + 1, num_generators());
    Eigen::VectorXd d(p + 1);
    C.topRows(p) = pred_matrix_;
    d.head(p) = pred_rhs_;
    C.row(p) = a.transpose() * basis_;
    d[p] = rhs - a.dot(center_);
    return SignalStar(center_, basis_, std::move(C), std::move(d), pred_lower_, pred_upper_);
}

std::pair<double, double> SignalStar::get_range(Eigen::Index index) const
{
    if (index < 0 || index >= dim()) {
        fail(ErrorCode::InvalidArgument, "coordinate index " + std::to_string(index) + " out of range");
    }
    linprog::LinearProgram lp;
    lp.objective = basis_.row(index).transpose();
    lp.ineq_matrix = pred_matrix_;
    lp.ineq_rhs = pred_rhs_;
    lp.var_lower = pred_lower_;
    lp.var_upper = pred_upper_;

    double bounds[2];
    const linprog::Sense senses[2] = {linprog::Sense::Minimize, linprog::Sense::Maximize};
    for (int k = 0; k < 2; ++k) {
        lp.sense = senses[k];
        const auto sol = linprog::solve(lp);
        switch (sol.status) {
        case linprog::Status::Infeasible:
            fail(ErrorCode::EmptySet, "range query on an empty star");
        case linprog::Status::Unbounded:
            bounds[k] = k == 0 ? -kInf : kInf;
            break;
        case linprog::Status::Optimal:
            bounds[k] = center_[index] + sol.value;
            break;
        }
    }
    return {bounds[0], bounds[1]};
}

Bounds SignalStar::get_ranges() const
{
    Bounds out{Eigen::VectorXd(dim()), Eigen::VectorXd(dim())};
    for (Eigen::Index i = 0; i < dim(); ++i) {
        const auto [lo, hi] = get_range(i);
        out.lower[i] = lo;
        out.upper[i] = hi;
    }
    return out;
}

std::pair<double, double> SignalStar::interval_range(Eigen::Index index) const
{
    double lo = center_[index];
    double hi = center_[index];
    for (Eigen::Index j = 0; j < num_generators(); ++j) {
        const double v = basis_(index, j);
        if (v == 0.0) continue;
        const double a = v * pred_lower_[j];
        const double b = v * pred_upper_[j];
        lo += std::min(a, b);
        hi += std::max(a, b);
    }
    return {lo, hi};
}

bool SignalStar::is_empty() const
{
    if (flagged_empty_) return true;
    return !linprog::feasible_point(pred_matrix_, pred_rhs_, Eigen::MatrixXd(0, num_generators()),
                                    Eigen::VectorXd(0), pred_lower_, pred_upper_)
                .has_value();
}

bool SignalStar::contains(const Eigen::VectorXd& x, double tol) const
{
    require_dims(x.size() == dim(), "point", static_cast<std::size_t>(dim()),
                 static_cast<std::size_t>(x.size()));
    if (flagged_empty_) return false;
    const Eigen::Index p = pred_matrix_.rows();
    const Eigen::Index n = dim();
    const Eigen::VectorXd offset = x - center_;
    if (tol == 0.0) {
        return linprog::feasible_point(pred_matrix_, pred_rhs_, basis_, offset, pred_lower_, pred_upper_)
            .has_value();
    }
    Eigen::MatrixXd A(p + 2 * n, num_generators());
    Eigen::VectorXd b(p + 2 * n);
    A.topRows(p) = pred_matrix_;
    b.head(p) = pred_rhs_;
    A.middleRows(p, n) = basis_;
    b.segment(p, n) = offset.array() + tol;
    A.bottomRows(n) = -basis_;
    b.tail(n) = -offset.array() + tol;
    return linprog::feasible_point(A, b, Eigen::MatrixXd(0, num_generators()), Eigen::VectorXd(0),
                                   pred_lower_, pred_upper_)
        .has_value();
}

std::vector<Eigen::VectorXd> SignalStar::sample_alpha(std::size_t count, std::uint64_t seed) const
{
    if (flagged_empty_) fail(ErrorCode::EmptySet, "cannot sample an empty star");
    if (!pred_lower_.allFinite() || !pred_upper_.allFinite()) {
        fail(ErrorCode::InvalidArgument, "sampling needs a finite predicate box");
    }
    Xoshiro256 rng(seed);
    std::vector<Eigen::VectorXd> out;
    out.reserve(count);
    const Eigen::Index m = num_generators();
    Eigen::VectorXd alpha(m);
    std::size_t rejections = 0;
    while (out.size() < count) {
        for (Eigen::Index j = 0; j < m; ++j) alpha[j] = rng.uniform(pred_lower_[j], pred_upper_[j]);
        if (pred_matrix_.rows() == 0 || ((pred_matrix_ * alpha - pred_rhs_).array() <= 0.0).all()) {
            out.push_back(alpha);
            rejections = 0;
        } else if (++rejections >= kMaxConsecutiveRejections) {
            fail(ErrorCode::RejectionBudgetExhausted,
                 "rejection sampling gave up; the predicate region is too thin for box sampling");
        }
    }
    return out;
}

std::vector<Eigen::VectorXd> SignalStar::sample(std::size_t count, std::uint64_t seed) const
{
    std::vector<Eigen::VectorXd> out;
    out.reserve(count);
    for (const auto& alpha : sample_alpha(count, seed)) out.push_back(evaluate(alpha));
    return out;
}

} // namespace sigstar
