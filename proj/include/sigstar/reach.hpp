#pragma once

#include "sigstar/network.hpp"
#include "sigstar/star.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sigstar {

enum class ReachMethod { Exact, Approx };

const char* to_string(ReachMethod method) noexcept;
ReachMethod parse_reach_method(const std::string& text);

inline constexpr std::size_t kDefaultSplitBudget = 10'000;

struct LayerStats {
    std::size_t layer = 0;
    std::string kind;          // "dense" or "relu"
    std::size_t star_count = 0; // stars after the layer
    std::uint64_t lp_calls = 0;
    double elapsed_ms = 0.0;
};

struct ReachResult {
    std::vector<SignalStar> output_stars;
    Bounds union_bounds;
    std::vector<LayerStats> stats;
    std::uint64_t bound_lp_calls = 0; // solver calls spent on union_bounds
};

struct ReachOptions {
    std::size_t split_budget = kDefaultSplitBudget;
};

/// Solver calls made by the ReLU helpers are added to this counter.
struct LpTally {
    std::uint64_t calls = 0;
};

/// Range of coordinate `neuron` for ReLU case analysis: the box interval when
/// it already decides the sign, the LP range otherwise.
std::pair<double, double> neuron_range(const SignalStar& star, Eigen::Index neuron, LpTally& tally);

/// Exact ReLU on one coordinate. Returns one or two nonempty stars; the
/// x >= 0 branch comes first.
std::vector<SignalStar> relu_step_exact(const SignalStar& star, Eigen::Index neuron,
                                        std::pair<double, double> range_hint, LpTally& tally);
std::vector<SignalStar> relu_step_exact(const SignalStar& star, Eigen::Index neuron,
                                        std::pair<double, double> range_hint);

/// Exact ReLU over every coordinate of every star, depth first. Throws
/// Error(SplitBudgetExceeded) when the working list would exceed the budget.
std::vector<SignalStar> relu_layer_exact(const std::vector<SignalStar>& stars, LpTally& tally,
                                         std::size_t split_budget = kDefaultSplitBudget);
std::vector<SignalStar> relu_layer_exact(const std::vector<SignalStar>& stars);

/// Triangle relaxation: one new predicate variable per undecided neuron.
SignalStar relu_layer_approx(const SignalStar& star, LpTally& tally);
SignalStar relu_layer_approx(const SignalStar& star);

ReachResult reach_network(const Network& net, const SignalStar& input, ReachMethod method,
                          const ReachOptions& options = {});

/// Elementwise hull of the LP ranges of every output star.
Bounds output_bounds(const ReachResult& result);
Bounds union_of_ranges(const std::vector<SignalStar>& stars);

} // namespace sigstar
