#include "mpcaps/groups.hpp"

#include <stdexcept>

namespace mpcaps {

std::size_t GroupSpec::total() const {
    std::size_t n = 0;
    for (const auto& g : groups) n += g.size();
    return n;
}

void GroupSpec::validate(std::size_t n) const {
    std::vector<char> seen(n, 0);
    for (const auto& g : groups) {
        if (g.empty()) throw std::invalid_argument("GroupSpec: empty group");
        for (std::size_t idx : g) {
            if (idx >= n) throw std::invalid_argument("GroupSpec: index out of range");
            if (seen[idx]) throw std::invalid_argument("GroupSpec: duplicate index");
            seen[idx] = 1;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!seen[i]) throw std::invalid_argument("GroupSpec: index not covered");
}

GroupSpec GroupSpec::singletons(std::size_t layer, std::size_t n) {
    GroupSpec s;
    s.layer = layer;
    s.groups.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.groups[i] = {i};
    return s;
}

GroupSpec GroupSpec::from_sizes(std::size_t layer, const std::vector<std::size_t>& sizes) {
    GroupSpec s;
    s.layer = layer;
    std::size_t next = 0;
    for (std::size_t sz : sizes) {
        if (sz == 0) throw std::invalid_argument("GroupSpec: zero group size");
        std::vector<std::size_t> g(sz);
        for (std::size_t i = 0; i < sz; ++i) g[i] = next++;
        s.groups.push_back(std::move(g));
    }
    return s;
}

WinnerSelection winner_select(const CapsuleTensor& caps, const GroupSpec& spec) {
    spec.validate(caps.count);
    WinnerSelection sel;
    sel.selected = CapsuleTensor::zeros(spec.group_count(), caps.dim);
    sel.winners.resize(spec.group_count());
    for (std::size_t p = 0; p < spec.group_count(); ++p) {
        std::size_t best = spec.groups[p][0];
        double best_norm = caps.norm(best);
        for (std::size_t idx : spec.groups[p]) {
            const double n = caps.norm(idx);
            if (n > best_norm) {  // strict: ties keep the lowest index
                best_norm = n;
                best = idx;
            }
        }
        sel.winners[p] = best;
        const double* src = caps.capsule(best);
        double* dst = sel.selected.capsule(p);
        for (std::size_t d = 0; d < caps.dim; ++d) dst[d] = src[d];
    }
    return sel;
}

CapsuleTensor winner_select_backward(const CapsuleTensor& caps, const GroupSpec&,
                                     const std::vector<std::size_t>& winners,
                                     const CapsuleTensor& grad_selected) {
    CapsuleTensor grad = CapsuleTensor::zeros(caps.count, caps.dim);
    for (std::size_t p = 0; p < winners.size(); ++p) {
        double* dst = grad.capsule(winners[p]);
        const double* src = grad_selected.capsule(p);
        for (std::size_t d = 0; d < caps.dim; ++d) dst[d] += src[d];
    }
    return grad;
}

}  // namespace mpcaps
