#pragma once

// Recorded output-bound fixtures shared by the metric, CLI and acceptance
// tests.

#include "sigstar/star.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>

namespace fixture {

inline constexpr Eigen::Index kLength = 100;
inline constexpr Eigen::Index kWorstIndex = 96;
inline constexpr double kTightTau = 0.0233;
inline constexpr double kLooseTau = 0.0389;

inline Eigen::VectorXd reference_signal()
{
    Eigen::VectorXd r(kLength);
    for (Eigen::Index t = 0; t < kLength; ++t) r[t] = 0.5 + 0.2 * std::sin(0.06 * static_cast<double>(t));
    r[kWorstIndex] = 0.7290;
    return r;
}

// 95 of 100 instances inside +-0.0233. Four small upper overshoots, and the
// lower bound at t = 96 sits at 0.6695 against a band edge of 0.7057.
inline sigstar::Bounds five_violation_bounds()
{
    const Eigen::VectorXd r = reference_signal();
    sigstar::Bounds b{r.array() - 0.01, r.array() + 0.01};
    const std::array<Eigen::Index, 4> overshoot{12, 37, 58, 81};
    for (std::size_t k = 0; k < overshoot.size(); ++k) {
        b.upper[overshoot[k]] = r[overshoot[k]] + kTightTau + 0.005 * static_cast<double>(k + 1);
    }
    b.lower[kWorstIndex] = 0.6695;
    return b;
}

// Bounds that stay within 0.03 of the reference everywhere: inside the loose
// band, outside the tight one at five instances.
inline sigstar::Bounds two_threshold_bounds()
{
    const Eigen::VectorXd r = reference_signal();
    sigstar::Bounds b{r.array() - 0.012, r.array() + 0.012};
    for (Eigen::Index t : std::array<Eigen::Index, 5>{20, 44, 67, 90, kWorstIndex}) {
        b.lower[t] = r[t] - 0.03;
        b.upper[t] = r[t] + 0.015;
    }
    return b;
}

} // namespace fixture
