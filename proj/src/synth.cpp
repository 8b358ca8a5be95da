#include "sigstar/synth.hpp"

#include "sigstar/rng.hpp"

#include <cmath>
#include <numbers>

namespace sigstar::synth {

std::vector<Eigen::VectorXd> sinusoid_mixtures(std::size_t count, Eigen::Index length, std::uint64_t seed)
{
    Xoshiro256 rng(seed);
    std::vector<Eigen::VectorXd> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        const int components = 2 + static_cast<int>(rng.below(3));
        Eigen::VectorXd x = Eigen::VectorXd::Constant(length, rng.uniform(-0.5, 0.5));
        for (int c = 0; c < components; ++c) {
            const double amp = rng.uniform(0.2, 1.0);
            const double cycles = rng.uniform(0.5, 6.0); // per signal window
            const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
            for (Eigen::Index t = 0; t < length; ++t) {
                x[t] += amp * std::sin(2.0 * std::numbers::pi * cycles * static_cast<double>(t) /
                                           static_cast<double>(length) + phase);
            }
        }
        out.push_back(std::move(x));
    }
    return out;
}

Dataset make_dataset(std::uint64_t seed, std::size_t train_count, std::size_t test_count, Eigen::Index length)
{
    auto raw = sinusoid_mixtures(train_count + test_count, length, seed);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& x : raw) {
        lo = std::min(lo, x.minCoeff());
        hi = std::max(hi, x.maxCoeff());
    }
    Dataset ds;
    for (auto* set : {&ds.train, &ds.test}) {
        set->length = length;
        set->normalization = io::MinMax{lo, hi};
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const bool train = i < train_count;
        char id[32];
        std::snprintf(id, sizeof(id), "%s%04zu", train ? "train" : "test", train ? i : i - train_count);
        (train ? ds.train : ds.test).signals.push_back({id, io::minmax_normalize(raw[i], lo, hi)});
    }
    return ds;
}

Network random_network(const std::vector<Eigen::Index>& widths, std::uint64_t seed, const std::string& name)
{
    Xoshiro256 rng(seed);
    Network net;
    net.name = name;
    net.input_dim = widths.front();
    net.output_dim = widths.back();
    for (std::size_t k = 1; k < widths.size(); ++k) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(widths[k - 1]));
        DenseLayer d;
        d.weights.resize(widths[k], widths[k - 1]);
        d.bias.resize(widths[k]);
        for (Eigen::Index r = 0; r < d.weights.rows(); ++r) {
            for (Eigen::Index c = 0; c < d.weights.cols(); ++c) d.weights(r, c) = rng.uniform(-scale, scale);
        }
        for (Eigen::Index r = 0; r < d.bias.size(); ++r) d.bias[r] = rng.uniform(-scale, scale);
        net.layers.emplace_back(std::move(d));
        if (k + 1 < widths.size()) net.layers.emplace_back(ReluLayer{widths[k]});
    }
    return net;
}

Network reference_autoencoder(std::uint64_t seed)
{
    return random_network({100, 64, 16, 64, 100}, seed, "reference-autoencoder");
}

Network tiny_model()
{
    Network net;
    net.name = "tiny-2-2-2";
    net.input_dim = 2;
    net.output_dim = 2;
    DenseLayer l1;
    l1.weights.resize(2, 2);
    l1.weights << 1, 2, 3, -1;
    l1.bias.resize(2);
    l1.bias << 0.5, -0.5;
    DenseLayer l2;
    l2.weights.resize(2, 2);
    l2.weights << 1, -1, 2, 1;
    l2.bias.resize(2);
    l2.bias << 0, 1;
    net.layers = {l1, ReluLayer{2}, l2};
    return net;
}

} // namespace sigstar::synth
