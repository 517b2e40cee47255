#include "mpcaps/tensor.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mpcaps {

std::size_t shape_numel(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (std::size_t e : shape) {
        if (e < 1) throw std::invalid_argument("tensor extent must be >= 1");
        n *= e;
    }
    return n;
}

Tensor::Tensor(std::vector<std::size_t> shape_, std::vector<double> data_)
    : shape(std::move(shape_)), data(std::move(data_)) {
    if (shape_numel(shape) != data.size())
        throw std::invalid_argument("tensor data length does not match shape");
}

Tensor Tensor::zeros(std::vector<std::size_t> shape) {
    std::size_t n = shape_numel(shape);
    Tensor t;
    t.shape = std::move(shape);
    t.data.assign(n, 0.0);
    return t;
}

Tensor Tensor::full(std::vector<std::size_t> shape, double value) {
    Tensor t = zeros(std::move(shape));
    t.data.assign(t.data.size(), value);
    return t;
}

Tensor& Tensor::operator+=(const Tensor& other) {
    if (!same_shape(other)) throw std::invalid_argument("tensor shape mismatch in +=");
    for (std::size_t i = 0; i < data.size(); ++i) data[i] += other.data[i];
    return *this;
}

Tensor& Tensor::operator*=(double s) {
    for (double& v : data) v *= s;
    return *this;
}

double Tensor::sum() const {
    return std::accumulate(data.begin(), data.end(), 0.0);
}

double Tensor::frobenius_norm() const {
    double acc = 0.0;
    for (double v : data) acc += v * v;
    return std::sqrt(acc);
}

double Tensor::max_abs() const {
    double m = 0.0;
    for (double v : data) m = std::max(m, std::fabs(v));
    return m;
}

bool Tensor::all_finite() const {
    for (double v : data)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace mpcaps
