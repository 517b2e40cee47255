#pragma once

#include <vector>

#include "mpcaps/tensor.hpp"
#include "mpcaps/transform_bank.hpp"

namespace mpcaps {

struct RegConfig {
    double beta = 0.0;   // >= 0
    double sigma = 0.1;  // > 0, the bank's init standard deviation
};

/// Normalized Frobenius weight-decay term for one transform bank:
///   beta / (sigma * sqrt(size(W))) * |W|_F,
/// which is ~beta for a freshly N(0, sigma)-initialized bank.
/// Zero (with zero gradient) when |W|_F == 0.
double frobenius_reg(const TransformBank& bank, const RegConfig& cfg);

/// Adds the term's gradient, coefficient * W/|W|_F, into grad_W.
void frobenius_reg_backward(const TransformBank& bank, const RegConfig& cfg, Tensor& grad_W);

/// L_Final = data loss + sum of per-layer-pair regularizer terms.
double total_loss(double data_loss, const std::vector<double>& reg_terms);

}  // namespace mpcaps
