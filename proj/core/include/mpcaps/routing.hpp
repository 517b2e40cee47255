#pragma once

#include <cstddef>
#include <vector>

#include "mpcaps/capsules.hpp"
#include "mpcaps/tensor.hpp"
#include "mpcaps/transform_bank.hpp"

namespace mpcaps {

/// Logits and coupling coefficients of one routing execution.
struct RoutingState {
    Tensor logits;    // b, children x parents (final iteration's values)
    Tensor coupling;  // c, children x parents
    std::size_t iterations = 0;
};

/// Per-iteration intermediates kept for the unrolled backward pass.
struct RoutingCache {
    std::vector<Tensor> coupling;       // c_t, children x parents
    std::vector<CapsuleTensor> pre;     // s_t, parents x dim
    std::vector<CapsuleTensor> post;    // v_t, parents x dim
    std::size_t iterations = 0;
};

/// Row-wise softmax over parents, stabilized by max-subtraction.
Tensor coupling_from_logits(const Tensor& logits);

/// Routing-by-agreement: b <- 0; r times { c = softmax(b); s_j = sum_i c_ij
/// vote_ij; v_j = squash(s_j); b_ij += <v_j, vote_ij> }. The agreement update
/// is skipped after the last iteration (its result would be unused).
struct RoutingResult {
    CapsuleTensor parents;
    RoutingState state;
    RoutingCache cache;
};

RoutingResult dynamic_routing(const VoteTensor& votes, std::size_t iterations);

/// Gradient w.r.t. the votes through all unrolled iterations, including the
/// agreement updates. If freeze_coupling is set the coupling coefficients are
/// treated as constants (ablation mode) and gradients do not flow through the
/// logit updates.
VoteTensor dynamic_routing_backward(const VoteTensor& votes, const RoutingCache& cache,
                                    const CapsuleTensor& grad_parents,
                                    bool freeze_coupling = false);

}  // namespace mpcaps
