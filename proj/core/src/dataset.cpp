#include "mpcaps/dataset.hpp"

#include <stdexcept>

#include "mpcaps/rng.hpp"

namespace mpcaps {

Tensor Dataset::image_tensor(std::size_t i) const {
    Tensor t = Tensor::zeros({channels, height, width});
    const double* src = image(i);
    for (std::size_t k = 0; k < t.numel(); ++k) t.data[k] = src[k];
    return t;
}

void Dataset::validate() const {
    if (labels.size() != count) throw std::invalid_argument("dataset: label count mismatch");
    if (!part_labels.empty() && part_labels.size() != count)
        throw std::invalid_argument("dataset: part label count mismatch");
    if (pixels.size() != count * image_size())
        throw std::invalid_argument("dataset: pixel count mismatch");
    for (std::uint8_t l : labels)
        if (l >= num_classes) throw std::invalid_argument("dataset: label out of range");
}

std::vector<std::vector<std::size_t>> batch_iter(std::size_t count, std::size_t batch_size,
                                                 bool shuffle, std::uint64_t seed,
                                                 std::uint64_t epoch) {
    if (batch_size < 1) throw std::invalid_argument("batch_iter: batch size must be >= 1");
    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = i;
    if (shuffle) {
        // Distinct stream per epoch, stable across runs.
        Rng rng(seed ^ (0x9E3779B97F4A7C15ull * (epoch + 1)));
        for (std::size_t i = count; i > 1; --i) {
            const std::size_t j = rng.uniform_index(i);
            std::swap(order[i - 1], order[j]);
        }
    }
    std::vector<std::vector<std::size_t>> batches;
    for (std::size_t start = 0; start < count; start += batch_size) {
        const std::size_t end = std::min(count, start + batch_size);
        batches.emplace_back(order.begin() + start, order.begin() + end);
    }
    return batches;
}

}  // namespace mpcaps
