#include "sigstar/reach.hpp"

#include "sigstar/error.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace sigstar {

namespace {

// Zero coordinate `i`: center entry and basis row.
SignalStar zero_coordinate(const SignalStar& star, Eigen::Index i)
{
    Eigen::VectorXd c = star.center();
    Eigen::MatrixXd V = star.basis();
    c[i] = 0.0;
    V.row(i).setZero();
    return SignalStar(std::move(c), std::move(V), star.pred_matrix(), star.pred_rhs(), star.pred_lower(),
                      star.pred_upper());
}

Eigen::VectorXd unit(Eigen::Index n, Eigen::Index i, double value)
{
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[i] = value;
    return e;
}

} // namespace

const char* to_string(ReachMethod method) noexcept
{
    return method == ReachMethod::Exact ? "exact" : "approx";
}

ReachMethod parse_reach_method(const std::string& text)
{
    if (text == "exact") return ReachMethod::Exact;
    if (text == "approx") return ReachMethod::Approx;
    fail(ErrorCode::InvalidArgument, "unknown reach method '" + text + "' (expected exact or approx)");
}

std::pair<double, double> neuron_range(const SignalStar& star, Eigen::Index neuron, LpTally& tally)
{
    const auto box = star.interval_range(neuron);
    if (box.first >= 0.0 || box.second <= 0.0) return box;
    tally.calls += 2;
    return star.get_range(neuron);
}

std::vector<SignalStar> relu_step_exact(const SignalStar& star, Eigen::Index neuron,
                                        std::pair<double, double> range_hint, LpTally& tally)
{
    if (neuron < 0 || neuron >= star.dim()) {
        fail(ErrorCode::InvalidArgument, "neuron index " + std::to_string(neuron) + " out of range");
    }
    if (star.flagged_empty()) fail(ErrorCode::EmptySet, "ReLU step on an empty star");
    const auto [lo, hi] = range_hint;
    if (hi <= 0.0) return {zero_coordinate(star, neuron)};
    if (lo >= 0.0) return {star};

    std::vector<SignalStar> out;
    const Eigen::Index n = star.dim();
    // (a) x_neuron >= 0, written as -x_neuron <= 0; coordinate kept.
    SignalStar active = star.add_state_halfspace(unit(n, neuron, -1.0), 0.0);
    ++tally.calls;
    if (!active.is_empty()) out.push_back(std::move(active));
    // (b) x_neuron <= 0; coordinate zeroed.
    SignalStar inactive = star.add_state_halfspace(unit(n, neuron, 1.0), 0.0);
    ++tally.calls;
    if (!inactive.is_empty()) out.push_back(zero_coordinate(inactive, neuron));
    return out;
}

std::vector<SignalStar> relu_step_exact(const SignalStar& star, Eigen::Index neuron,
                                        std::pair<double, double> range_hint)
{
    LpTally tally;
    return relu_step_exact(star, neuron, range_hint, tally);
}

std::vector<SignalStar> relu_layer_exact(const std::vector<SignalStar>& stars, LpTally& tally,
                                         std::size_t split_budget)
{
    std::vector<SignalStar> out;
    for (const auto& input : stars) {
        if (input.flagged_empty()) fail(ErrorCode::EmptySet, "ReLU layer on an empty star");
        std::vector<SignalStar> work{input};
        for (Eigen::Index i = 0; i < input.dim(); ++i) {
            std::vector<SignalStar> next;
            next.reserve(work.size());
            for (const auto& s : work) {
                const auto range = neuron_range(s, i, tally);
                for (auto& child : relu_step_exact(s, i, range, tally)) next.push_back(std::move(child));
            }
            if (out.size() + next.size() > split_budget) {
                fail(ErrorCode::SplitBudgetExceeded,
                     "exact reach exceeded the split budget of " + std::to_string(split_budget) +
                         " stars; rerun with the approx method");
            }
            work = std::move(next);
        }
        for (auto& s : work) out.push_back(std::move(s));
    }
    return out;
}

std::vector<SignalStar> relu_layer_exact(const std::vector<SignalStar>& stars)
{
    LpTally tally;
    return relu_layer_exact(stars, tally);
}

SignalStar relu_layer_approx(const SignalStar& star, LpTally& tally)
{
    if (star.flagged_empty()) fail(ErrorCode::EmptySet, "ReLU layer on an empty star");
    const Eigen::Index n = star.dim();
    const Eigen::Index m = star.num_generators();

    // Neuron ranges are taken on the incoming star. Relaxing one coordinate
    // never restricts alpha, so later coordinates see the same ranges.
    struct Undecided {
        Eigen::Index neuron;
        double lo;
        double hi;
    };
    std::vector<Undecided> undecided;
    std::vector<Eigen::Index> inactive;
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto [lo, hi] = neuron_range(star, i, tally);
        if (hi <= 0.0) inactive.push_back(i);
        else if (lo < 0.0) undecided.push_back({i, lo, hi});
    }
    if (undecided.empty() && inactive.empty()) return star;
    for (const auto& u : undecided) {
        if (!std::isfinite(u.lo) || !std::isfinite(u.hi)) {
            fail(ErrorCode::InvalidArgument, "triangle relaxation needs a bounded neuron range");
        }
    }

    const Eigen::Index u = static_cast<Eigen::Index>(undecided.size());
    const Eigen::Index p = star.num_constraints();

    Eigen::VectorXd c = star.center();
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(n, m + u);
    V.leftCols(m) = star.basis();
    for (auto i : inactive) {
        c[i] = 0.0;
        V.row(i).setZero();
    }

    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(p + 2 * u, m + u);
    Eigen::VectorXd d(p + 2 * u);
    C.topLeftCorner(p, m) = star.pred_matrix();
    d.head(p) = star.pred_rhs();

    Eigen::VectorXd lower(m + u);
    Eigen::VectorXd upper(m + u);
    lower.head(m) = star.pred_lower();
    upper.head(m) = star.pred_upper();

    for (Eigen::Index k = 0; k < u; ++k) {
        const auto& [i, lo, hi] = undecided[static_cast<std::size_t>(k)];
        const Eigen::Index beta = m + k;
        const Eigen::RowVectorXd row = star.basis().row(i);
        const double ci = star.center()[i];

        // beta >= x_i  ->  V_i alpha - beta <= -c_i
        C.block(p + 2 * k, 0, 1, m) = row;
        C(p + 2 * k, beta) = -1.0;
        d[p + 2 * k] = -ci;

        // beta <= hi (x_i - lo) / (hi - lo)
        const double slope = hi / (hi - lo);
        C.block(p + 2 * k + 1, 0, 1, m) = -slope * row;
        C(p + 2 * k + 1, beta) = 1.0;
        d[p + 2 * k + 1] = slope * (ci - lo);

        // beta >= 0, and the upper edge of the triangle is hi.
        lower[beta] = 0.0;
        upper[beta] = hi;

        c[i] = 0.0;
        V.row(i).setZero();
        V(i, beta) = 1.0;
    }
    return SignalStar(std::move(c), std::move(V), std::move(C), std::move(d), std::move(lower), std::move(upper));
}

SignalStar relu_layer_approx(const SignalStar& star)
{
    LpTally tally;
    return relu_layer_approx(star, tally);
}

Bounds union_of_ranges(const std::vector<SignalStar>& stars)
{
    if (stars.empty()) fail(ErrorCode::EmptySet, "no output stars");
    Bounds out = stars.front().get_ranges();
    for (std::size_t k = 1; k < stars.size(); ++k) {
        const Bounds b = stars[k].get_ranges();
        out.lower = out.lower.cwiseMin(b.lower);
        out.upper = out.upper.cwiseMax(b.upper);
    }
    return out;
}

Bounds output_bounds(const ReachResult& result) { return union_of_ranges(result.output_stars); }

ReachResult reach_network(const Network& net, const SignalStar& input, ReachMethod method,
                          const ReachOptions& options)
{
    require_valid(net);
    require_dims(input.dim() == net.input_dim, "input star dimension", static_cast<std::size_t>(net.input_dim),
                 static_cast<std::size_t>(input.dim()));
    if (input.is_empty()) fail(ErrorCode::EmptySet, "input star is empty");

    ReachResult result;
    std::vector<SignalStar> stars{input};
    using Clock = std::chrono::steady_clock;
    for (std::size_t li = 0; li < net.layers.size(); ++li) {
        const auto start = Clock::now();
        LayerStats stats;
        stats.layer = li;
        LpTally tally;
        if (const auto* dense = std::get_if<DenseLayer>(&net.layers[li])) {
            stats.kind = "dense";
            for (auto& s : stars) s = s.affine_map(dense->weights, dense->bias);
        } else {
            stats.kind = "relu";
            if (method == ReachMethod::Exact) {
                stars = relu_layer_exact(stars, tally, options.split_budget);
            } else {
                for (auto& s : stars) s = relu_layer_approx(s, tally);
            }
        }
        stats.lp_calls = tally.calls;
        stats.star_count = stars.size();
        stats.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        result.stats.push_back(std::move(stats));
    }
    result.output_stars = std::move(stars);
    result.union_bounds = union_of_ranges(result.output_stars);
    result.bound_lp_calls = 2 * static_cast<std::uint64_t>(net.output_dim) * result.output_stars.size();
    return result;
}

} // namespace sigstar
