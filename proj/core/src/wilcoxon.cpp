#include "mpcaps/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mpcaps/errors.hpp"

namespace mpcaps {

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("wilcoxon_signed_rank: unequal sample lengths");

    std::vector<double> diffs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) diffs.push_back(d);
    }
    if (diffs.empty())
        throw DegenerateError("wilcoxon_signed_rank: all paired differences are zero");
    const std::size_t n = diffs.size();
    if (n < 5)
        throw std::invalid_argument(
            "wilcoxon_signed_rank: need at least 5 nonzero differences");

    // Average ranks of |d|, ties sharing the mean rank.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::fabs(diffs[x]) < std::fabs(diffs[y]);
    });
    std::vector<double> ranks(n);
    std::vector<std::size_t> tie_sizes;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && std::fabs(diffs[order[j]]) == std::fabs(diffs[order[i]])) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
        tie_sizes.push_back(j - i);
        i = j;
    }

    WilcoxonResult r;
    r.n = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (diffs[i] > 0.0)
            r.w_plus += ranks[i];
        else
            r.w_minus += ranks[i];
    }
    r.statistic = std::min(r.w_plus, r.w_minus);

    if (n <= kWilcoxonExactLimit) {
        r.exact = true;
        // Exact null distribution over all sign assignments of the observed
        // ranks; two-sided p = min(1, 2 P(W+ <= min(W+, W-))).
        const std::uint64_t total = 1ull << n;
        const double w = r.statistic;
        std::uint64_t count = 0;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1ull << i)) sum += ranks[i];
            if (sum <= w + 1e-9) ++count;
        }
        r.p_value = std::min(1.0, 2.0 * static_cast<double>(count) / static_cast<double>(total));
    } else {
        r.exact = false;
        const double nn = static_cast<double>(n);
        const double mean = nn * (nn + 1.0) / 4.0;
        double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0;
        for (std::size_t t : tie_sizes) {
            const double td = static_cast<double>(t);
            var -= (td * td * td - td) / 48.0;
        }
        if (var <= 0.0)
            throw DegenerateError("wilcoxon_signed_rank: zero variance (all ranks tied)");
        const double z = (r.statistic - mean) / std::sqrt(var);
        r.p_value = std::min(1.0, std::erfc(std::fabs(z) / std::sqrt(2.0)));
    }
    return r;
}

}  // namespace mpcaps
