#include "sigstar/faults.hpp"

#include "sigstar/error.hpp"
#include "sigstar/rng.hpp"

#include <cmath>

namespace sigstar {

Eigen::VectorXd apply_fault(const Eigen::VectorXd& signal, const SpikeFault& fault, double amplitude)
{
    if (fault.location < 0 || fault.location >= signal.size()) {
        fail(ErrorCode::InvalidArgument, "fault location " + std::to_string(fault.location) + " out of range");
    }
    if (!(amplitude >= fault.amp_lower && amplitude <= fault.amp_upper)) {
        fail(ErrorCode::InvalidArgument, "amplitude outside the fault interval");
    }
    Eigen::VectorXd out = signal;
    out[fault.location] += amplitude;
    return out;
}

Campaign generate_campaign(const std::vector<std::string>& signal_ids, Eigen::Index signal_length,
                           double amp_magnitude, std::uint64_t seed)
{
    if (signal_ids.empty()) fail(ErrorCode::InvalidArgument, "campaign needs at least one signal");
    if (signal_length <= 0) fail(ErrorCode::InvalidArgument, "signal length must be positive");
    if (!(amp_magnitude >= 0.0) || !std::isfinite(amp_magnitude)) {
        fail(ErrorCode::InvalidArgument, "amp_magnitude must be finite and >= 0");
    }
    Campaign campaign;
    campaign.seed = seed;
    campaign.amp_magnitude = amp_magnitude;
    campaign.signal_length = signal_length;
    Xoshiro256 rng(seed);
    campaign.entries.reserve(signal_ids.size());
    for (const auto& id : signal_ids) {
        const auto loc = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(signal_length)));
        campaign.entries.push_back({id, SpikeFault{loc, -amp_magnitude, amp_magnitude}});
    }
    return campaign;
}

} // namespace sigstar
