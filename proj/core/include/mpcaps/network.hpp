#pragma once

#include <string>
#include <vector>

#include "mpcaps/capsules.hpp"
#include "mpcaps/competitive.hpp"
#include "mpcaps/conv.hpp"
#include "mpcaps/groups.hpp"
#include "mpcaps/regularizer.hpp"
#include "mpcaps/routing.hpp"
#include "mpcaps/transform_bank.hpp"

namespace mpcaps {

/// Dimension and co-group structure of one capsule layer above the primary
/// layer. The last entry of NetworkConfig::layers is the final layer and must
/// have exactly num_classes groups.
struct CapsLayerSpec {
    std::size_t dim = 16;
    std::vector<std::size_t> group_sizes;
};

struct NetworkConfig {
    std::size_t in_channels = 1;
    std::size_t in_h = 28;
    std::size_t in_w = 28;
    /// Convolutional front-end; empty when externally computed features are
    /// ingested directly.
    std::vector<ConvLayerConfig> conv;
    std::size_t primary_dim = 8;
    /// Co-groups per spatial position in the primary layer; 0 means every
    /// primary capsule is its own group (no multi-prototyping there).
    std::size_t primary_groups_per_position = 0;
    std::vector<CapsLayerSpec> layers;
    std::size_t routing_iters = 3;
    std::size_t num_classes = 10;
    PredictRule predict_rule = PredictRule::SumGroupNorms;
    bool freeze_coupling = false;
    double init_sigma = 0.1;
    RegConfig reg;

    std::size_t capsule_layer_count() const { return layers.size() + 1; }
    void validate() const;

    /// Spatial/depth shape of the feature map feeding the primary capsules.
    void feature_shape(std::size_t& depth, std::size_t& h, std::size_t& w) const;
    std::size_t primary_capsule_count() const;
    /// Co-group partition of the primary layer: per position, the D/d1
    /// capsules are split into equal contiguous blocks; remainder capsules are
    /// handed round-robin to the position's first groups.
    GroupSpec primary_group_spec() const;
};

/// Per-parameter-tensor gradients, mirroring Network's parameter layout.
struct Gradients {
    std::vector<Tensor> conv_w;
    std::vector<Tensor> conv_b;
    std::vector<Tensor> banks;

    void add(const Gradients& other);
    void scale(double s);
    double max_abs() const;
    double global_norm() const;
    bool all_finite() const;
};

/// Everything the backward pass needs from one sample's forward pass.
struct ForwardCache {
    Tensor input;
    std::vector<Tensor> conv_out;
    PrimaryCapsResult primary;
    std::vector<CapsuleTensor> layer_caps;        // one per capsule layer
    std::vector<WinnerSelection> selections;      // one per layer transition
    std::vector<VoteTensor> votes;
    std::vector<RoutingCache> routing;
    std::vector<RoutingState> routing_state;
};

class Network {
public:
    NetworkConfig cfg;
    std::vector<Tensor> conv_w;
    std::vector<Tensor> conv_b;
    std::vector<TransformBank> banks;
    std::vector<GroupSpec> specs;  // per capsule layer; [0] is the primary layer

    static Network init(const NetworkConfig& cfg, Rng& rng);

    ForwardCache forward(const Tensor& input) const;

    const GroupSpec& final_spec() const { return specs.back(); }
    const CapsuleTensor& final_caps(const ForwardCache& cache) const {
        return cache.layer_caps.back();
    }

    /// Competitive cross-entropy of one forward pass (data term only).
    double sample_loss(const ForwardCache& cache, std::size_t label) const;

    /// Accumulates the data-loss gradient of one sample into `accum` and
    /// returns the sample's loss. tau is detached.
    double backward(const ForwardCache& cache, std::size_t label, Gradients& accum) const;

    /// Per-bank normalized Frobenius terms and their gradient.
    std::vector<double> regularizer_terms() const;
    void regularizer_backward(Gradients& accum) const;

    std::size_t predict_class(const ForwardCache& cache) const;

    Gradients zero_gradients() const;
    std::size_t parameter_count() const;

    /// Named views over every parameter tensor, in checkpoint order.
    struct ParamRef {
        std::string name;
        Tensor* tensor;
    };
    std::vector<ParamRef> parameters();
    std::vector<ParamRef> gradient_refs(Gradients& g) const;
};

}  // namespace mpcaps
