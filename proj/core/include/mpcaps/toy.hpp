#pragma once

#include <cstdint>

#include "mpcaps/dataset.hpp"

namespace mpcaps {

/// Synthetic face-vs-noise dataset. Faces are stroke drawings of two eyes,
/// a nose and a mouth (no enclosing circle); each eye is drawn from one of
/// two structurally different prototypes, jittered by at most shift_max
/// pixels per axis and scaled by a ratio in [scale_min, scale_max], and five
/// background-valued patches are stamped over each face image. The noise
/// class is i.i.d. uniform pixels.
struct ToyConfig {
    std::size_t per_class = 600;
    std::size_t image_size = 64;
    double shift_max = 3.0;
    double scale_min = 0.7;
    double scale_max = 1.0;
    std::size_t dropout_patches = 5;
    std::size_t patch_size = 10;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kToyFaceClass = 0;
inline constexpr std::size_t kToyNoiseClass = 1;

/// Fixed pixel rectangle containing the left eye under every admissible
/// shift/scale; the region the part-level analysis averages over.
struct EyeRegion {
    std::size_t x0, y0, w, h;
};
EyeRegion toy_eye_region(const ToyConfig& cfg);

/// Sampled jitter of one rendered eye, recorded for distribution checks.
struct EyeJitter {
    double dx, dy, scale;
};

/// Deterministic per seed. Face images carry part_labels in {0,1} (one
/// prototype label per image; both eyes share it), noise images carry
/// kNoPartLabel. When `jitters` is non-null it receives the two per-eye
/// jitter samples of every face image in generation order.
Dataset generate_toy(const ToyConfig& cfg, std::vector<EyeJitter>* jitters = nullptr);

}  // namespace mpcaps
