#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace mpcaps {

/// Dense row-major tensor of doubles. No broadcasting, no views; shapes are
/// checked by the operations that consume them.
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<double> data;

    Tensor() = default;
    Tensor(std::vector<std::size_t> shape_, std::vector<double> data_);

    static Tensor zeros(std::vector<std::size_t> shape);
    static Tensor full(std::vector<std::size_t> shape, double value);

    std::size_t numel() const { return data.size(); }
    std::size_t rank() const { return shape.size(); }

    double& operator[](std::size_t i) { return data[i]; }
    double operator[](std::size_t i) const { return data[i]; }

    bool same_shape(const Tensor& other) const { return shape == other.shape; }

    Tensor& operator+=(const Tensor& other);
    Tensor& operator*=(double s);

    double sum() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;
};

std::size_t shape_numel(const std::vector<std::size_t>& shape);

}  // namespace mpcaps
