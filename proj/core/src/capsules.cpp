#include "mpcaps/capsules.hpp"

#include <cmath>

namespace mpcaps {

namespace {
bool g_squash_backward_fault = false;
}

void set_squash_backward_fault(bool enabled) { g_squash_backward_fault = enabled; }

CapsuleTensor CapsuleTensor::zeros(std::size_t count, std::size_t dim) {
    CapsuleTensor c;
    c.count = count;
    c.dim = dim;
    c.activities = Tensor::zeros({count, dim});
    return c;
}

double CapsuleTensor::norm(std::size_t i) const {
    const double* p = capsule(i);
    double acc = 0.0;
    for (std::size_t d = 0; d < dim; ++d) acc += p[d] * p[d];
    return std::sqrt(acc);
}

void squash(const double* s, double* out, std::size_t dim) {
    double sq = 0.0;
    for (std::size_t d = 0; d < dim; ++d) sq += s[d] * s[d];
    const double n = std::sqrt(sq);
    if (n == 0.0) {
        for (std::size_t d = 0; d < dim; ++d) out[d] = 0.0;
        return;
    }
    // (n^2/(1+n^2)) * s/n == s * n/(1+n^2)
    const double scale = n / (1.0 + sq);
    for (std::size_t d = 0; d < dim; ++d) out[d] = s[d] * scale;
}

void squash_backward(const double* s, const double* grad_v, double* grad_s, std::size_t dim) {
    double sq = 0.0;
    for (std::size_t d = 0; d < dim; ++d) sq += s[d] * s[d];
    const double n = std::sqrt(sq);
    if (n == 0.0) {
        for (std::size_t d = 0; d < dim; ++d) grad_s[d] = 0.0;
        return;
    }
    // v = m(n) s with m = n/(1+n^2), m' = (1-n^2)/(1+n^2)^2
    const double onep = 1.0 + sq;
    const double m = n / onep;
    const double mp = (1.0 - sq) / (onep * onep);
    double dot = 0.0;
    for (std::size_t d = 0; d < dim; ++d) dot += s[d] * grad_v[d];
    const double coef = mp / n * dot;
    const double sign = g_squash_backward_fault ? -1.0 : 1.0;
    for (std::size_t d = 0; d < dim; ++d) grad_s[d] = sign * (m * grad_v[d] + coef * s[d]);
}

CapsuleTensor squash_all(const CapsuleTensor& raw) {
    CapsuleTensor out = CapsuleTensor::zeros(raw.count, raw.dim);
    for (std::size_t i = 0; i < raw.count; ++i) squash(raw.capsule(i), out.capsule(i), raw.dim);
    return out;
}

}  // namespace mpcaps
