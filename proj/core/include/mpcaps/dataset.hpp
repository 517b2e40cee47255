#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mpcaps/tensor.hpp"

namespace mpcaps {

inline constexpr std::uint8_t kNoPartLabel = 255;

/// Images in [0,1] plus class labels; part_labels carries the eye-prototype
/// index for toy face images (kNoPartLabel elsewhere).
struct Dataset {
    std::size_t count = 0;
    std::size_t channels = 0;
    std::size_t height = 0;
    std::size_t width = 0;
    std::size_t num_classes = 0;
    std::vector<double> pixels;            // count * channels * H * W, row-major
    std::vector<std::uint8_t> labels;      // count entries, < num_classes
    std::vector<std::uint8_t> part_labels; // empty, or count entries

    const double* image(std::size_t i) const {
        return pixels.data() + i * channels * height * width;
    }
    std::size_t image_size() const { return channels * height * width; }
    Tensor image_tensor(std::size_t i) const;

    void validate() const;
};

/// Seeded epoch permutation over sample indices; the last partial batch is
/// kept. shuffle=false yields the original order.
std::vector<std::vector<std::size_t>> batch_iter(std::size_t count, std::size_t batch_size,
                                                 bool shuffle, std::uint64_t seed,
                                                 std::uint64_t epoch);

}  // namespace mpcaps
