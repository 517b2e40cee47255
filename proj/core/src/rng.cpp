#include "mpcaps/rng.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "mpcaps/errors.hpp"

namespace mpcaps {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& s : state_) s = splitmix64(sm);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be >= 1");
    // Rejection sampling on the top range keeps the distribution exact.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % n;
}

double Rng::normal(double mean, double sd) {
    if (has_spare_) {
        has_spare_ = false;
        return mean + sd * spare_;
    }
    double u1, u2;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return mean + sd * r * std::cos(theta);
}

void Rng::save(std::ostream& out) const {
    out.write(reinterpret_cast<const char*>(&seed_), sizeof(seed_));
    out.write(reinterpret_cast<const char*>(state_), sizeof(state_));
    const unsigned char spare_flag = has_spare_ ? 1 : 0;
    out.write(reinterpret_cast<const char*>(&spare_flag), 1);
    out.write(reinterpret_cast<const char*>(&spare_), sizeof(spare_));
}

void Rng::load(std::istream& in) {
    unsigned char spare_flag = 0;
    in.read(reinterpret_cast<char*>(&seed_), sizeof(seed_));
    in.read(reinterpret_cast<char*>(state_), sizeof(state_));
    in.read(reinterpret_cast<char*>(&spare_flag), 1);
    in.read(reinterpret_cast<char*>(&spare_), sizeof(spare_));
    if (!in) throw FormatError("rng state: truncated stream");
    has_spare_ = spare_flag != 0;
}

Tensor init_normal(std::vector<std::size_t> shape, double sigma, Rng& rng) {
    if (!(sigma > 0.0)) throw std::invalid_argument("init_normal: sigma must be > 0");
    Tensor t = Tensor::zeros(std::move(shape));
    for (double& v : t.data) v = rng.normal(0.0, sigma);
    return t;
}

}  // namespace mpcaps
