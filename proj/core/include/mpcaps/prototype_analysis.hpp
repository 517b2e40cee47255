#pragma once

#include <cstddef>
#include <vector>

#include "mpcaps/dataset.hpp"
#include "mpcaps/network.hpp"
#include "mpcaps/tensor.hpp"
#include "mpcaps/toy.hpp"

namespace mpcaps {

/// Part-level analysis of a trained network on the toy dataset: which
/// prototype of a designated middle-layer co-group wins per face image, the
/// mean eye-region image per winning prototype, and how well winners line up
/// with the ground-truth eye-prototype labels.
struct PrototypeAnalysisResult {
    std::vector<Tensor> mean_eye;          // h x w per prototype slot
    std::vector<std::size_t> counts;       // face images won per slot
    std::vector<std::size_t> winner_slot;  // per analyzed face image
    std::vector<std::uint8_t> part_label;  // matching ground truth
    double purity = 0.0;
};

/// `layer` is the 1-based capsule layer index (2 = first middle layer); the
/// group must have at least two prototypes and the layer must feed a later
/// layer (selection happens on the child side of a transition). For a
/// two-prototype group, purity is the best of the two prototype<->label
/// assignments; for wider groups each slot maps to its majority label.
PrototypeAnalysisResult prototype_analysis(const Network& net, const Dataset& toy,
                                           std::size_t layer, std::size_t group,
                                           const EyeRegion& region);

}  // namespace mpcaps
