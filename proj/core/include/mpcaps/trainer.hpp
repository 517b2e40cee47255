#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "mpcaps/adam.hpp"
#include "mpcaps/dataset.hpp"
#include "mpcaps/network.hpp"

namespace mpcaps {

struct TrainConfig {
    std::size_t epochs = 100;
    AdamConfig adam;  // lr 0.001, beta1 0.9, beta2 0.999, eps 1e-8
    std::size_t batch_size = 32;
    std::uint64_t seed = 0;
    bool shuffle = true;
    /// Global-norm clip; 0 disables. Off by default, a safety valve for
    /// gradient spikes through deep routing early in training.
    double grad_clip_norm = 0.0;
    std::size_t threads = 1;
    bool verbose = false;
};

struct EpochRecord {
    std::size_t epoch = 0;
    double train_loss = 0.0;
    double train_acc = 0.0;
    bool has_test = false;
    double test_acc = 0.0;
    double wall_seconds = 0.0;  // console diagnostics only, not serialized
};

struct RunReport {
    std::vector<EpochRecord> epochs;
    std::size_t num_classes = 0;
    double final_accuracy = 0.0;
    bool has_final_accuracy = false;
    std::vector<std::size_t> confusion;  // num_classes x num_classes, row = truth

    /// Line-delimited structured text: one record per epoch plus a summary
    /// and confusion block. Wall times are intentionally excluded so that
    /// identically seeded runs serialize byte-identically.
    void write(std::ostream& out) const;
};

struct EvalResult {
    double accuracy = 0.0;
    std::vector<std::size_t> confusion;
    std::size_t num_classes = 0;
};

/// Full training loop: forward, competitive cross-entropy + regularizer,
/// hand-derived backward, Adam. Deterministic for a fixed (seed, config,
/// data, thread count). Throws NumericError with epoch/batch diagnostics on a
/// non-finite loss or gradient.
RunReport train(Network& net, std::vector<AdamState>& opt, const Dataset& data,
                const Dataset* eval_data, const TrainConfig& cfg);

std::vector<AdamState> make_optimizer(Network& net, const AdamConfig& cfg);

EvalResult evaluate(const Network& net, const Dataset& data, std::size_t threads = 1);

}  // namespace mpcaps
