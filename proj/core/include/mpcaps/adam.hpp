#pragma once

#include <cstdint>

#include "mpcaps/tensor.hpp"

namespace mpcaps {

struct AdamConfig {
    double lr = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// Per-parameter-tensor optimizer state. Moments start at zero.
struct AdamState {
    std::uint64_t step = 0;
    Tensor m;
    Tensor v;
    AdamConfig cfg;

    static AdamState fresh(const Tensor& param, AdamConfig cfg);
};

/// One Adam update with bias correction, applied in place.
void adam_step(Tensor& param, const Tensor& grad, AdamState& state);

}  // namespace mpcaps
