#pragma once

#include <iosfwd>
#include <string>

#include "mpcaps/dataset.hpp"

namespace mpcaps {

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

/// Loads an MNIST-style IDX image/label file pair. Pixel bytes are scaled to
/// [0,1]. Throws FormatError on bad magic or truncation, and on an
/// image/label count mismatch.
Dataset load_idx(const std::string& images_path, const std::string& labels_path);

Dataset load_idx(std::istream& images, std::istream& labels);

/// Test/support writer for round-trips and fixtures (pixel values are
/// clamped to [0,1] and quantized back to bytes).
void write_idx(const Dataset& ds, std::ostream& images, std::ostream& labels);

}  // namespace mpcaps
