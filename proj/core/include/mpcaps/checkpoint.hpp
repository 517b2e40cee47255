#pragma once

#include <string>
#include <vector>

#include "mpcaps/adam.hpp"
#include "mpcaps/network.hpp"
#include "mpcaps/rng.hpp"

namespace mpcaps {

/// Versioned binary checkpoint with a trailing CRC32 over the whole payload.
/// save -> load -> save is byte-identical.
struct Checkpoint {
    std::uint32_t version = 1;
    Network net;
    std::vector<AdamState> optimizer;
    std::uint64_t epoch = 0;
    Rng rng{0};
};

inline constexpr char kCheckpointMagic[4] = {'M', 'P', 'C', 'K'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace mpcaps
