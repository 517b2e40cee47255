#include "mpcaps/competitive.hpp"

#include <cmath>
#include <stdexcept>

#include "mpcaps/errors.hpp"

namespace mpcaps {

std::vector<double> output_distribution(const CapsuleTensor& final_caps) {
    const std::size_t n = final_caps.count;
    std::vector<double> norms(n);
    double total = 0.0;
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
        norms[j] = final_caps.norm(j);
        total += norms[j];
        any = any || norms[j] > kEpsNorm;
    }
    if (!any) throw DegenerateError("output_distribution: all capsule norms below threshold");
    for (std::size_t j = 0; j < n; ++j) norms[j] /= total;
    return norms;
}

std::vector<double> target_distribution(const CapsuleTensor& final_caps, std::size_t true_class,
                                        const GroupSpec& spec) {
    if (true_class >= spec.group_count())
        throw std::invalid_argument("target_distribution: class out of range");
    const auto& group = spec.groups[true_class];
    double total = 0.0;
    bool any = false;
    for (std::size_t idx : group) {
        const double n = final_caps.norm(idx);
        total += n;
        any = any || n > kEpsNorm;
    }
    if (!any) throw DegenerateError("target_distribution: true-class norms below threshold");
    std::vector<double> tau(final_caps.count, 0.0);
    for (std::size_t idx : group) tau[idx] = final_caps.norm(idx) / total;
    return tau;
}

double cce_loss(const std::vector<double>& y, const std::vector<double>& tau) {
    if (y.size() != tau.size()) throw std::invalid_argument("cce_loss: length mismatch");
    double loss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (tau[i] > 0.0) loss -= tau[i] * std::log(y[i] + kEpsLog);
    return loss;
}

CapsuleTensor cce_backward(const CapsuleTensor& final_caps, const std::vector<double>& y,
                           const std::vector<double>& tau) {
    const std::size_t n = final_caps.count;
    double total_norm = 0.0;
    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        norms[j] = final_caps.norm(j);
        total_norm += norms[j];
    }
    // dE/dy_i = -tau_i / (y_i + eps); dy_i/d|v_s| = (delta_is - y_i) / N
    // => dE/d|v_s| = ( sum_i tau_i y_i/(y_i+eps) - tau_s/(y_s+eps) ) / N
    double weighted = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (tau[i] > 0.0) weighted += tau[i] * y[i] / (y[i] + kEpsLog);

    CapsuleTensor grad = CapsuleTensor::zeros(n, final_caps.dim);
    for (std::size_t s = 0; s < n; ++s) {
        if (norms[s] <= kEpsNorm) continue;
        double dnorm = weighted;
        if (tau[s] > 0.0) dnorm -= tau[s] / (y[s] + kEpsLog);
        dnorm /= total_norm;
        const double scale = dnorm / norms[s];  // direction v_s/|v_s|
        const double* v = final_caps.capsule(s);
        double* g = grad.capsule(s);
        for (std::size_t d = 0; d < final_caps.dim; ++d) g[d] = scale * v[d];
    }
    return grad;
}

std::size_t predict(const CapsuleTensor& final_caps, const GroupSpec& spec, PredictRule rule) {
    spec.validate(final_caps.count);
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t k = 0; k < spec.group_count(); ++k) {
        double score = 0.0;
        for (std::size_t idx : spec.groups[k]) {
            const double n = final_caps.norm(idx);
            if (rule == PredictRule::SumGroupNorms)
                score += n;
            else
                score = std::max(score, n);
        }
        if (score > best_score) {
            best_score = score;
            best = k;
        }
    }
    return best;
}

}  // namespace mpcaps
