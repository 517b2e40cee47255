#pragma once

#include <functional>

#include "mpcaps/tensor.hpp"

namespace mpcaps {

/// Central-difference gradient of a scalar function: (f(x+h e_i) - f(x-h e_i)) / 2h.
/// Throws NumericError if f evaluates to a non-finite value.
Tensor finite_diff_grad(const std::function<double(const Tensor&)>& f, const Tensor& x,
                        double h);

/// max_i |a_i - b_i| / max(1e-12, max_i max(|a_i|, |b_i|)).
/// The relative-error figure used by all gradient checks.
double max_relative_error(const Tensor& a, const Tensor& b);

}  // namespace mpcaps
