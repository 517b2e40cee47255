#pragma once

#include <cstddef>
#include <vector>

#include "mpcaps/tensor.hpp"

namespace mpcaps {

/// One layer's capsule activities: `count` capsules of dimension `dim`,
/// stored row-major in `activities` (count x dim).
struct CapsuleTensor {
    std::size_t count = 0;
    std::size_t dim = 0;
    Tensor activities;

    static CapsuleTensor zeros(std::size_t count, std::size_t dim);

    double* capsule(std::size_t i) { return activities.data.data() + i * dim; }
    const double* capsule(std::size_t i) const { return activities.data.data() + i * dim; }

    double norm(std::size_t i) const;
};

/// Eq.-style squashing nonlinearity: s -> (|s|^2/(1+|s|^2)) * s/|s|, with
/// squash(0) = 0 by continuity. Output norm is always < 1.
void squash(const double* s, double* out, std::size_t dim);

/// Jacobian-vector product of squash at s: grad_s = J(s)^T grad_v.
/// Gradient at s = 0 is defined as 0.
void squash_backward(const double* s, const double* grad_v, double* grad_s, std::size_t dim);

/// Applies squash to every capsule, returning the squashed tensor.
CapsuleTensor squash_all(const CapsuleTensor& raw);

/// Test-only fault injection: when enabled, squash_backward flips the sign
/// of its output. Exists so the gradient checker can demonstrate that it
/// catches a broken backward pass. Never set in real runs.
void set_squash_backward_fault(bool enabled);

}  // namespace mpcaps
