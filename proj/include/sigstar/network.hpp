#pragma once

#include <Eigen/Dense>

#include <string>
#include <variant>
#include <vector>

namespace sigstar {

struct DenseLayer {
    Eigen::MatrixXd weights; // k x n
    Eigen::VectorXd bias;    // k
};

struct ReluLayer {
    Eigen::Index width = 0;
};

using Layer = std::variant<DenseLayer, ReluLayer>;

Eigen::Index layer_input_width(const Layer& layer);
Eigen::Index layer_output_width(const Layer& layer);

struct DimensionIssue {
    std::vector<std::size_t> layers; // offending layer indices, may be empty
    std::string message;
};

/// Feedforward network of separate Dense and ReLU layers.
struct Network {
    std::string name;
    Eigen::Index input_dim = 0;
    Eigen::Index output_dim = 0;
    std::vector<Layer> layers;
};

/// Every chaining violation found; empty means the network is well formed.
std::vector<DimensionIssue> validate(const Network& net);

/// Throws Error(DimensionMismatch) listing all issues from validate().
void require_valid(const Network& net);

/// Concrete evaluation. Throws on dimension mismatch.
Eigen::VectorXd forward(const Network& net, const Eigen::VectorXd& x);

/// Number of ReLU units in the network.
Eigen::Index relu_neuron_count(const Network& net);

} // namespace sigstar
