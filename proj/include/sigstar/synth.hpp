#pragma once

#include "sigstar/io.hpp"
#include "sigstar/network.hpp"

#include <cstdint>
#include <vector>

namespace sigstar::synth {

inline constexpr Eigen::Index kSignalLength = 100;
inline constexpr std::size_t kTrainCount = 2057;
inline constexpr std::size_t kTestCount = 363;

struct Dataset {
    io::SignalSet train;
    io::SignalSet test;
};

/// Raw (unnormalized) signals: each a sum of 2-4 sinusoids with seeded
/// amplitude, frequency and phase, plus a seeded offset.
std::vector<Eigen::VectorXd> sinusoid_mixtures(std::size_t count, Eigen::Index length, std::uint64_t seed);

/// Train/test split of min-max normalized sinusoid mixtures. The min/max
/// are taken over both splits so every sample lands in [0, 1].
Dataset make_dataset(std::uint64_t seed, std::size_t train_count = kTrainCount,
                     std::size_t test_count = kTestCount, Eigen::Index length = kSignalLength);

/// Dense/ReLU stack with the given widths; ReLU after every Dense except the
/// last. Weights and biases uniform in +-1/sqrt(fan_in).
Network random_network(const std::vector<Eigen::Index>& widths, std::uint64_t seed, const std::string& name = "random");

/// 100-64-16-64-100 autoencoder shape with seeded weights.
Network reference_autoencoder(std::uint64_t seed = 0);

/// 2-2-2 network with small integer weights for hand checks:
///   W1 = [[1, 2], [3, -1]], b1 = [0.5, -0.5], ReLU,
///   W2 = [[1, -1], [2, 1]], b2 = [0, 1].
Network tiny_model();

} // namespace sigstar::synth
