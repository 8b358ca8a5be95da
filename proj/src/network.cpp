#include "sigstar/network.hpp"

#include "sigstar/error.hpp"

#include <sstream>

namespace sigstar {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

Eigen::Index layer_input_width(const Layer& layer)
{
    return std::visit(overloaded{[](const DenseLayer& d) { return d.weights.cols(); },
                                 [](const ReluLayer& r) { return r.width; }},
                      layer);
}

Eigen::Index layer_output_width(const Layer& layer)
{
    return std::visit(overloaded{[](const DenseLayer& d) { return d.weights.rows(); },
                                 [](const ReluLayer& r) { return r.width; }},
                      layer);
}

std::vector<DimensionIssue> validate(const Network& net)
{
    std::vector<DimensionIssue> issues;
    if (net.layers.empty()) {
        issues.push_back({{}, "no layers"});
        return issues;
    }
    for (std::size_t i = 0; i < net.layers.size(); ++i) {
        if (const auto* dense = std::get_if<DenseLayer>(&net.layers[i])) {
            if (dense->bias.size() != dense->weights.rows()) {
                std::ostringstream os;
                os << "layer " << i << ": bias length " << dense->bias.size() << " != weight rows "
                   << dense->weights.rows();
                issues.push_back({{i}, os.str()});
            }
            if (!dense->weights.allFinite() || !dense->bias.allFinite()) {
                issues.push_back({{i}, "layer " + std::to_string(i) + ": non-finite parameters"});
            }
        }
    }
    if (layer_input_width(net.layers.front()) != net.input_dim) {
        std::ostringstream os;
        os << "layer 0 expects input width " << layer_input_width(net.layers.front()) << " but input_dim is "
           << net.input_dim;
        issues.push_back({{0}, os.str()});
    }
    for (std::size_t i = 1; i < net.layers.size(); ++i) {
        const auto out = layer_output_width(net.layers[i - 1]);
        const auto in = layer_input_width(net.layers[i]);
        if (out != in) {
            std::ostringstream os;
            os << "layers " << i - 1 << "," << i << ": output width " << out << " does not match input width "
               << in;
            issues.push_back({{i - 1, i}, os.str()});
        }
    }
    const auto last = net.layers.size() - 1;
    if (layer_output_width(net.layers.back()) != net.output_dim) {
        std::ostringstream os;
        os << "layer " << last << " produces width " << layer_output_width(net.layers.back())
           << " but output_dim is " << net.output_dim;
        issues.push_back({{last}, os.str()});
    }
    return issues;
}

void require_valid(const Network& net)
{
    const auto issues = validate(net);
    if (issues.empty()) return;
    std::string msg = "invalid network '" + net.name + "':";
    for (const auto& issue : issues) msg += "\n  " + issue.message;
    fail(ErrorCode::DimensionMismatch, msg);
}

Eigen::VectorXd forward(const Network& net, const Eigen::VectorXd& x)
{
    require_dims(x.size() == net.input_dim, "input", static_cast<std::size_t>(net.input_dim),
                 static_cast<std::size_t>(x.size()));
    Eigen::VectorXd h = x;
    for (std::size_t i = 0; i < net.layers.size(); ++i) {
        const auto& layer = net.layers[i];
        require_dims(h.size() == layer_input_width(layer), "layer " + std::to_string(i) + " input",
                     static_cast<std::size_t>(layer_input_width(layer)), static_cast<std::size_t>(h.size()));
        if (const auto* dense = std::get_if<DenseLayer>(&layer)) {
            // Same evaluation order as SignalStar::affine_map, so point stars
            // propagate bit-identically.
            Eigen::VectorXd y = dense->weights * h;
            y += dense->bias;
            h = std::move(y);
        } else {
            for (Eigen::Index k = 0; k < h.size(); ++k) h[k] = h[k] > 0.0 ? h[k] : 0.0;
        }
    }
    return h;
}

Eigen::Index relu_neuron_count(const Network& net)
{
    Eigen::Index total = 0;
    for (const auto& layer : net.layers) {
        if (const auto* relu = std::get_if<ReluLayer>(&layer)) total += relu->width;
    }
    return total;
}

} // namespace sigstar
