#pragma once

#include <cstddef>
#include <vector>

namespace mpcaps {

struct WilcoxonResult {
    double w_plus = 0.0;
    double w_minus = 0.0;
    double statistic = 0.0;  // min(W+, W-)
    double p_value = 1.0;    // two-sided
    std::size_t n = 0;       // pairs remaining after dropping zero differences
    bool exact = false;
};

/// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences
/// are dropped; |differences| are ranked with average ranks for ties. The
/// null distribution is enumerated exactly for n <= 12, and approximated by
/// a tie-corrected normal otherwise.
/// Throws DegenerateError when all differences are zero, and
/// std::invalid_argument on length mismatch or n < 5.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b);

/// The exact/approximate switch point.
inline constexpr std::size_t kWilcoxonExactLimit = 12;

}  // namespace mpcaps
