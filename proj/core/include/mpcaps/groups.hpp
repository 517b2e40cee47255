#pragma once

#include <cstddef>
#include <vector>

#include "mpcaps/capsules.hpp"

namespace mpcaps {

/// Partition of a layer's capsule indices into co-groups, one group per part
/// (middle layers) or per class (final layer).
struct GroupSpec {
    std::size_t layer = 0;
    std::vector<std::vector<std::size_t>> groups;

    std::size_t group_count() const { return groups.size(); }
    std::size_t total() const;

    /// Throws std::invalid_argument unless the groups are non-empty, disjoint
    /// and exhaustive over {0..n-1}.
    void validate(std::size_t n) const;

    /// n capsules, each its own group.
    static GroupSpec singletons(std::size_t layer, std::size_t n);
    /// Contiguous groups of the given sizes.
    static GroupSpec from_sizes(std::size_t layer, const std::vector<std::size_t>& sizes);
};

/// Winner-take-all selection: per group, the capsule with the largest norm
/// (lowest index on ties). Losers are masked out entirely; gradients flow only
/// to winners.
struct WinnerSelection {
    CapsuleTensor selected;             // group_count x dim
    std::vector<std::size_t> winners;   // capsule index per group
};

WinnerSelection winner_select(const CapsuleTensor& caps, const GroupSpec& spec);

/// Scatters grad w.r.t. the selected capsules back to the full layer (zeros at
/// losers).
CapsuleTensor winner_select_backward(const CapsuleTensor& caps, const GroupSpec& spec,
                                     const std::vector<std::size_t>& winners,
                                     const CapsuleTensor& grad_selected);

}  // namespace mpcaps
