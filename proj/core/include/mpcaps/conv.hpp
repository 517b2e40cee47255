#pragma once

#include <cstddef>

#include "mpcaps/capsules.hpp"
#include "mpcaps/tensor.hpp"

namespace mpcaps {

struct ConvLayerConfig {
    std::size_t in_channels = 1;
    std::size_t out_channels = 256;
    std::size_t kernel_size = 9;
    std::size_t stride = 1;  // 1 or 2
};

std::size_t conv_output_extent(std::size_t in, std::size_t kernel, std::size_t stride);

/// Valid cross-correlation with stride, bias, then ReLU.
/// input:   [C_in, H, W]
/// weights: [C_out, C_in, K, K]
/// bias:    [C_out]
/// output:  [C_out, H', W'] with H' = floor((H - K)/stride) + 1.
Tensor conv_forward(const Tensor& input, const ConvLayerConfig& cfg, const Tensor& weights,
                    const Tensor& bias);

/// Reverse-mode pass. `output` is the forward result (its positivity is the
/// ReLU mask). Accumulates into grad_weights/grad_bias, overwrites grad_input.
void conv_backward(const Tensor& input, const ConvLayerConfig& cfg, const Tensor& weights,
                   const Tensor& output, const Tensor& grad_output, Tensor& grad_input,
                   Tensor& grad_weights, Tensor& grad_bias);

/// Partitions the depth-D feature map into D/d1 capsules per spatial position
/// (contiguous channel blocks) and squashes each. Capsule index is
/// (y*W + x) * (D/d1) + block. Also returns the pre-squash activities needed
/// by the backward pass.
struct PrimaryCapsResult {
    CapsuleTensor squashed;
    CapsuleTensor raw;  // pre-squash
};

PrimaryCapsResult form_primary_capsules(const Tensor& features, std::size_t d1);

/// grad w.r.t. the conv features, given grad w.r.t. the squashed capsules.
Tensor form_primary_capsules_backward(const PrimaryCapsResult& cache,
                                      const Tensor& features_shape_like,
                                      const CapsuleTensor& grad_squashed);

}  // namespace mpcaps
