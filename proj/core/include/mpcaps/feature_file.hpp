#pragma once

#include <string>

#include "mpcaps/dataset.hpp"
#include "mpcaps/tensor.hpp"

namespace mpcaps {

/// MPCF feature container: little-endian magic "MPCF", u32 version, u8 dtype
/// (0 = f32), u8 rank, u32 extents, then a row-major f32 payload. Used both
/// for externally computed feature maps that replace the convolutional
/// front-end and as the image container of the exported toy dataset.
inline constexpr char kFeatureMagic[4] = {'M', 'P', 'C', 'F'};
inline constexpr std::uint32_t kFeatureVersion = 1;

Tensor load_features(const std::string& path);
void save_features(const Tensor& t, const std::string& path);

/// Toy-dataset label sidecar: u32 count, then count class-label bytes, then
/// count part-label bytes (kNoPartLabel where no eye prototype applies).
void save_label_sidecar(const Dataset& ds, const std::string& path);
void load_label_sidecar(Dataset& ds, const std::string& path);

/// Dataset container round-trip via an MPCF image file with extents
/// [count, channels, H, W] plus the sidecar.
void save_toy_dataset(const Dataset& ds, const std::string& images_path,
                      const std::string& labels_path);
Dataset load_toy_dataset(const std::string& images_path, const std::string& labels_path);

}  // namespace mpcaps
