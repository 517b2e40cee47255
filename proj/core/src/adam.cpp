#include "mpcaps/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace mpcaps {

AdamState AdamState::fresh(const Tensor& param, AdamConfig cfg) {
    AdamState s;
    s.step = 0;
    s.m = Tensor::zeros(param.shape);
    s.v = Tensor::zeros(param.shape);
    s.cfg = cfg;
    return s;
}

void adam_step(Tensor& param, const Tensor& grad, AdamState& state) {
    if (!param.same_shape(grad) || !param.same_shape(state.m) || !param.same_shape(state.v))
        throw std::invalid_argument("adam_step: shape mismatch");
    state.step += 1;
    const double b1 = state.cfg.beta1;
    const double b2 = state.cfg.beta2;
    const double bc1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
    for (std::size_t i = 0; i < param.numel(); ++i) {
        const double g = grad.data[i];
        state.m.data[i] = b1 * state.m.data[i] + (1.0 - b1) * g;
        state.v.data[i] = b2 * state.v.data[i] + (1.0 - b2) * g * g;
        const double mhat = state.m.data[i] / bc1;
        const double vhat = state.v.data[i] / bc2;
        param.data[i] -= state.cfg.lr * mhat / (std::sqrt(vhat) + state.cfg.eps);
    }
}

}  // namespace mpcaps
