#include "mpcaps/finite_diff.hpp"

#include <cmath>
#include <stdexcept>

#include "mpcaps/errors.hpp"

namespace mpcaps {

Tensor finite_diff_grad(const std::function<double(const Tensor&)>& f, const Tensor& x,
                        double h) {
    if (!(h > 0.0)) throw std::invalid_argument("finite_diff_grad: h must be > 0");
    Tensor grad = Tensor::zeros(x.shape);
    Tensor probe = x;
    for (std::size_t i = 0; i < x.numel(); ++i) {
        const double orig = probe.data[i];
        probe.data[i] = orig + h;
        const double fp = f(probe);
        probe.data[i] = orig - h;
        const double fm = f(probe);
        probe.data[i] = orig;
        if (!std::isfinite(fp) || !std::isfinite(fm))
            throw NumericError("finite_diff_grad: non-finite function value");
        grad.data[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

double max_relative_error(const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("max_relative_error: shape mismatch");
    double scale = 1e-12;
    for (std::size_t i = 0; i < a.numel(); ++i)
        scale = std::max({scale, std::fabs(a.data[i]), std::fabs(b.data[i])});
    double maxdiff = 0.0;
    for (std::size_t i = 0; i < a.numel(); ++i)
        maxdiff = std::max(maxdiff, std::fabs(a.data[i] - b.data[i]));
    return maxdiff / scale;
}

}  // namespace mpcaps
