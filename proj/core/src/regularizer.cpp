#include "mpcaps/regularizer.hpp"

#include <cmath>
#include <stdexcept>

namespace mpcaps {

namespace {
double reg_coefficient(const TransformBank& bank, const RegConfig& cfg) {
    if (cfg.beta < 0.0) throw std::invalid_argument("frobenius_reg: beta must be >= 0");
    if (!(cfg.sigma > 0.0)) throw std::invalid_argument("frobenius_reg: sigma must be > 0");
    const double size = static_cast<double>(bank.W.numel());
    return cfg.beta / (cfg.sigma * std::sqrt(size));
}
}  // namespace

double frobenius_reg(const TransformBank& bank, const RegConfig& cfg) {
    return reg_coefficient(bank, cfg) * bank.W.frobenius_norm();
}

void frobenius_reg_backward(const TransformBank& bank, const RegConfig& cfg, Tensor& grad_W) {
    if (!grad_W.same_shape(bank.W)) throw std::invalid_argument("frobenius_reg_backward: shape");
    const double fnorm = bank.W.frobenius_norm();
    if (fnorm == 0.0) return;
    const double scale = reg_coefficient(bank, cfg) / fnorm;
    for (std::size_t i = 0; i < grad_W.numel(); ++i) grad_W.data[i] += scale * bank.W.data[i];
}

double total_loss(double data_loss, const std::vector<double>& reg_terms) {
    double total = data_loss;
    for (double t : reg_terms) total += t;
    return total;
}

}  // namespace mpcaps
