#pragma once

#include <string>

#include "mpcaps/tensor.hpp"

namespace mpcaps {

/// Writes an h x w tensor as a binary portable graymap (P5, maxval 255).
/// Values are clamped to [0,1] and quantized.
void write_pgm(const Tensor& image, const std::string& path);

/// Reads a binary P5 graymap back into [0,1] values.
Tensor read_pgm(const std::string& path);

}  // namespace mpcaps
