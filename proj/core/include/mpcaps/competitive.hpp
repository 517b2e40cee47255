#pragma once

#include <cstddef>
#include <vector>

#include "mpcaps/capsules.hpp"
#include "mpcaps/groups.hpp"
#include "mpcaps/tensor.hpp"

namespace mpcaps {

// Guards for degenerate norms and logs.
inline constexpr double kEpsNorm = 1e-12;
inline constexpr double kEpsLog = 1e-12;

/// Output distribution over all final capsules: y_j = |v_j| / sum_t |v_t|.
/// Throws DegenerateError if every norm is <= kEpsNorm.
std::vector<double> output_distribution(const CapsuleTensor& final_caps);

/// Self-normalized target over the true class's co-group: tau_i proportional
/// to |v_i| for i in O_k, zero elsewhere. Treated as a constant (detached) by
/// the backward pass. Throws DegenerateError if the co-group's norms are all
/// <= kEpsNorm.
std::vector<double> target_distribution(const CapsuleTensor& final_caps, std::size_t true_class,
                                        const GroupSpec& spec);

/// Competitive cross-entropy: -sum_i tau_i log(y_i + eps), over tau_i > 0.
double cce_loss(const std::vector<double>& y, const std::vector<double>& tau);

/// Analytic gradient of cce_loss(output_distribution(v), tau) w.r.t. every
/// final capsule activity, tau held fixed. Capsules with norm <= kEpsNorm
/// get a zero contribution.
CapsuleTensor cce_backward(const CapsuleTensor& final_caps, const std::vector<double>& y,
                           const std::vector<double>& tau);

enum class PredictRule {
    SumGroupNorms,  // argmax_k sum_{i in O_k} |v_i|
    MaxGroupNorm,   // argmax_k max_{i in O_k} |v_i| (ablation)
};

/// Test-time class decision; ties go to the lowest class index.
std::size_t predict(const CapsuleTensor& final_caps, const GroupSpec& spec,
                    PredictRule rule = PredictRule::SumGroupNorms);

}  // namespace mpcaps
