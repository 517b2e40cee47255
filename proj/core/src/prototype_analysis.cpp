#include "mpcaps/prototype_analysis.hpp"

#include <algorithm>
#include <stdexcept>

namespace mpcaps {

PrototypeAnalysisResult prototype_analysis(const Network& net, const Dataset& toy,
                                           std::size_t layer, std::size_t group,
                                           const EyeRegion& region) {
    if (toy.part_labels.empty())
        throw std::invalid_argument("prototype_analysis: dataset has no part labels");
    if (layer < 1 || layer > net.banks.size())
        throw std::invalid_argument("prototype_analysis: layer has no outgoing selection");
    const GroupSpec& spec = net.specs[layer - 1];
    if (group >= spec.group_count())
        throw std::invalid_argument("prototype_analysis: group out of range");
    const auto& members = spec.groups[group];
    const std::size_t slots = members.size();
    if (slots < 2)
        throw std::invalid_argument("prototype_analysis: group has a single prototype");

    PrototypeAnalysisResult res;
    res.counts.assign(slots, 0);
    std::vector<Tensor> sums(slots, Tensor::zeros({region.h, region.w}));

    for (std::size_t i = 0; i < toy.count; ++i) {
        if (toy.labels[i] != kToyFaceClass) continue;
        if (toy.part_labels[i] == kNoPartLabel) continue;
        ForwardCache cache = net.forward(toy.image_tensor(i));
        const std::size_t winner = cache.selections[layer - 1].winners[group];
        const std::size_t slot =
            std::find(members.begin(), members.end(), winner) - members.begin();
        res.winner_slot.push_back(slot);
        res.part_label.push_back(toy.part_labels[i]);
        res.counts[slot] += 1;

        const double* img = toy.image(i);
        for (std::size_t y = 0; y < region.h; ++y)
            for (std::size_t x = 0; x < region.w; ++x)
                sums[slot].data[y * region.w + x] +=
                    img[(region.y0 + y) * toy.width + region.x0 + x];
    }

    for (std::size_t s = 0; s < slots; ++s) {
        if (res.counts[s] > 0) sums[s] *= 1.0 / static_cast<double>(res.counts[s]);
        res.mean_eye.push_back(std::move(sums[s]));
    }

    const std::size_t total = res.winner_slot.size();
    if (total == 0) return res;
    if (slots == 2) {
        std::size_t match = 0;
        for (std::size_t i = 0; i < total; ++i)
            if (res.winner_slot[i] == res.part_label[i]) ++match;
        res.purity =
            static_cast<double>(std::max(match, total - match)) / static_cast<double>(total);
    } else {
        // Majority label per slot.
        std::vector<std::size_t> hits(slots * 2, 0);
        for (std::size_t i = 0; i < total; ++i)
            hits[res.winner_slot[i] * 2 + (res.part_label[i] & 1)] += 1;
        std::size_t match = 0;
        for (std::size_t s = 0; s < slots; ++s) match += std::max(hits[s * 2], hits[s * 2 + 1]);
        res.purity = static_cast<double>(match) / static_cast<double>(total);
    }
    return res;
}

}  // namespace mpcaps
