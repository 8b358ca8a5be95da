#pragma once

#include "sigstar/star.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace sigstar {

/// Single-sample additive spike at `location` with amplitude in
/// [amp_lower, amp_upper].
struct SpikeFault {
    Eigen::Index location = 0;
    double amp_lower = 0.0;
    double amp_upper = 0.0;

    SignalStar input_set(const Eigen::VectorXd& signal) const
    {
        return SignalStar::from_spike_fault(signal, location, amp_lower, amp_upper);
    }

    bool operator==(const SpikeFault&) const = default;
};

struct CampaignEntry {
    std::string signal_id;
    SpikeFault fault;

    bool operator==(const CampaignEntry&) const = default;
};

/// One fault per signal, regenerable from (signal ids, length, seed, amp).
struct Campaign {
    std::vector<CampaignEntry> entries;
    std::uint64_t seed = 0;
    double amp_magnitude = 0.0;
    Eigen::Index signal_length = 0;

    bool operator==(const Campaign&) const = default;
};

/// signal with signal[location] += amplitude. Throws Error(InvalidArgument)
/// when the amplitude lies outside the fault interval or the location is out
/// of range.
Eigen::VectorXd apply_fault(const Eigen::VectorXd& signal, const SpikeFault& fault, double amplitude);

/// Fault locations are uniform over [0, signal_length) drawn with
/// xoshiro256** seeded through splitmix64; amplitudes are
/// [-amp_magnitude, +amp_magnitude].
Campaign generate_campaign(const std::vector<std::string>& signal_ids, Eigen::Index signal_length,
                           double amp_magnitude, std::uint64_t seed);

} // namespace sigstar
