#pragma once

#include <cstdint>
#include <iosfwd>

#include "mpcaps/tensor.hpp"

namespace mpcaps {

/// Deterministic xoshiro256** generator seeded through splitmix64.
/// Identical seeds produce identical streams on every platform; normal
/// deviates come from Box-Muller so the stream layout is fixed too.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform in [0, 1) with 53 bits of precision.
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n). n must be >= 1.
    std::uint64_t uniform_index(std::uint64_t n);
    /// N(mean, sd^2) via Box-Muller, one spare cached.
    double normal(double mean, double sd);

    std::uint64_t seed() const { return seed_; }

    void save(std::ostream& out) const;
    void load(std::istream& in);

private:
    std::uint64_t seed_ = 0;
    std::uint64_t state_[4] = {};
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Tensor with i.i.d. N(0, sigma^2) entries. sigma must be > 0.
Tensor init_normal(std::vector<std::size_t> shape, double sigma, Rng& rng);

}  // namespace mpcaps
