#include "mpcaps/conv.hpp"

#include <stdexcept>

namespace mpcaps {

std::size_t conv_output_extent(std::size_t in, std::size_t kernel, std::size_t stride) {
    if (kernel > in) throw std::invalid_argument("conv: kernel larger than input extent");
    return (in - kernel) / stride + 1;
}

Tensor conv_forward(const Tensor& input, const ConvLayerConfig& cfg, const Tensor& weights,
                    const Tensor& bias) {
    if (input.rank() != 3 || input.shape[0] != cfg.in_channels)
        throw std::invalid_argument("conv_forward: bad input shape");
    if (cfg.stride != 1 && cfg.stride != 2)
        throw std::invalid_argument("conv_forward: stride must be 1 or 2");
    const std::size_t H = input.shape[1], W = input.shape[2];
    const std::size_t K = cfg.kernel_size, S = cfg.stride;
    const std::size_t Ho = conv_output_extent(H, K, S);
    const std::size_t Wo = conv_output_extent(W, K, S);
    const std::size_t Ci = cfg.in_channels, Co = cfg.out_channels;
    if (weights.shape != std::vector<std::size_t>{Co, Ci, K, K})
        throw std::invalid_argument("conv_forward: bad weight shape");
    if (bias.shape != std::vector<std::size_t>{Co})
        throw std::invalid_argument("conv_forward: bad bias shape");

    Tensor out = Tensor::zeros({Co, Ho, Wo});
    const double* in = input.data.data();
    const double* w = weights.data.data();
    double* o = out.data.data();
    for (std::size_t co = 0; co < Co; ++co) {
        const double b = bias.data[co];
        for (std::size_t oy = 0; oy < Ho; ++oy) {
            for (std::size_t ox = 0; ox < Wo; ++ox) {
                double acc = b;
                for (std::size_t ci = 0; ci < Ci; ++ci) {
                    const double* in_c = in + ci * H * W + oy * S * W + ox * S;
                    const double* w_c = w + (co * Ci + ci) * K * K;
                    for (std::size_t ky = 0; ky < K; ++ky) {
                        const double* in_row = in_c + ky * W;
                        const double* w_row = w_c + ky * K;
                        for (std::size_t kx = 0; kx < K; ++kx) acc += in_row[kx] * w_row[kx];
                    }
                }
                o[(co * Ho + oy) * Wo + ox] = acc > 0.0 ? acc : 0.0;
            }
        }
    }
    return out;
}

void conv_backward(const Tensor& input, const ConvLayerConfig& cfg, const Tensor& weights,
                   const Tensor& output, const Tensor& grad_output, Tensor& grad_input,
                   Tensor& grad_weights, Tensor& grad_bias) {
    const std::size_t H = input.shape[1], W = input.shape[2];
    const std::size_t K = cfg.kernel_size, S = cfg.stride;
    const std::size_t Ho = output.shape[1], Wo = output.shape[2];
    const std::size_t Ci = cfg.in_channels, Co = cfg.out_channels;
    grad_input = Tensor::zeros(input.shape);
    if (!grad_weights.same_shape(weights)) grad_weights = Tensor::zeros(weights.shape);
    if (grad_bias.shape != std::vector<std::size_t>{Co}) grad_bias = Tensor::zeros({Co});

    const double* in = input.data.data();
    const double* w = weights.data.data();
    double* gin = grad_input.data.data();
    double* gw = grad_weights.data.data();
    for (std::size_t co = 0; co < Co; ++co) {
        for (std::size_t oy = 0; oy < Ho; ++oy) {
            for (std::size_t ox = 0; ox < Wo; ++ox) {
                const std::size_t oi = (co * Ho + oy) * Wo + ox;
                if (output.data[oi] <= 0.0) continue;  // ReLU mask
                const double g = grad_output.data[oi];
                if (g == 0.0) continue;
                grad_bias.data[co] += g;
                for (std::size_t ci = 0; ci < Ci; ++ci) {
                    const std::size_t in_base = ci * H * W + oy * S * W + ox * S;
                    const std::size_t w_base = (co * Ci + ci) * K * K;
                    for (std::size_t ky = 0; ky < K; ++ky) {
                        const std::size_t in_row = in_base + ky * W;
                        const std::size_t w_row = w_base + ky * K;
                        for (std::size_t kx = 0; kx < K; ++kx) {
                            gw[w_row + kx] += g * in[in_row + kx];
                            gin[in_row + kx] += g * w[w_row + kx];
                        }
                    }
                }
            }
        }
    }
}

PrimaryCapsResult form_primary_capsules(const Tensor& features, std::size_t d1) {
    if (features.rank() != 3) throw std::invalid_argument("form_primary_capsules: rank != 3");
    const std::size_t D = features.shape[0];
    const std::size_t H = features.shape[1], W = features.shape[2];
    if (d1 == 0 || D % d1 != 0)
        throw std::invalid_argument("form_primary_capsules: depth not divisible by capsule dim");
    const std::size_t blocks = D / d1;
    const std::size_t count = H * W * blocks;

    PrimaryCapsResult r;
    r.raw = CapsuleTensor::zeros(count, d1);
    for (std::size_t y = 0; y < H; ++y)
        for (std::size_t x = 0; x < W; ++x)
            for (std::size_t b = 0; b < blocks; ++b) {
                double* cap = r.raw.capsule((y * W + x) * blocks + b);
                for (std::size_t d = 0; d < d1; ++d)
                    cap[d] = features.data[(b * d1 + d) * H * W + y * W + x];
            }
    r.squashed = squash_all(r.raw);
    return r;
}

Tensor form_primary_capsules_backward(const PrimaryCapsResult& cache,
                                      const Tensor& features_shape_like,
                                      const CapsuleTensor& grad_squashed) {
    const std::size_t D = features_shape_like.shape[0];
    const std::size_t H = features_shape_like.shape[1], W = features_shape_like.shape[2];
    const std::size_t d1 = cache.raw.dim;
    const std::size_t blocks = D / d1;
    Tensor grad_features = Tensor::zeros(features_shape_like.shape);
    std::vector<double> grad_raw(d1);
    for (std::size_t y = 0; y < H; ++y)
        for (std::size_t x = 0; x < W; ++x)
            for (std::size_t b = 0; b < blocks; ++b) {
                const std::size_t ci = (y * W + x) * blocks + b;
                squash_backward(cache.raw.capsule(ci), grad_squashed.capsule(ci),
                                grad_raw.data(), d1);
                for (std::size_t d = 0; d < d1; ++d)
                    grad_features.data[(b * d1 + d) * H * W + y * W + x] = grad_raw[d];
            }
    return grad_features;
}

}  // namespace mpcaps
