#include <benchmark/benchmark.h>

#include "mpcaps/conv.hpp"
#include "mpcaps/rng.hpp"
#include "mpcaps/routing.hpp"
#include "mpcaps/transform_bank.hpp"

using namespace mpcaps;

static void BM_DynamicRouting(benchmark::State& state) {
    const std::size_t children = static_cast<std::size_t>(state.range(0));
    const std::size_t parents = 10;
    const std::size_t dim = 16;
    Rng rng(1);
    VoteTensor votes = VoteTensor::zeros(children, parents, dim);
    for (double& v : votes.votes.data) v = rng.normal(0.0, 1.0);
    for (auto _ : state) {
        RoutingResult r = dynamic_routing(votes, 3);
        benchmark::DoNotOptimize(r.parents.activities.data.data());
    }
}
BENCHMARK(BM_DynamicRouting)->Arg(36)->Arg(144)->Arg(576);

static void BM_ConvForward(benchmark::State& state) {
    const std::size_t channels = static_cast<std::size_t>(state.range(0));
    Rng rng(2);
    Tensor in = init_normal({1, 28, 28}, 1.0, rng);
    ConvLayerConfig cfg{1, channels, 9, 1};
    Tensor w = init_normal({channels, 1, 9, 9}, 0.1, rng);
    Tensor b = Tensor::zeros({channels});
    for (auto _ : state) {
        Tensor out = conv_forward(in, cfg, w, b);
        benchmark::DoNotOptimize(out.data.data());
    }
}
BENCHMARK(BM_ConvForward)->Arg(16)->Arg(64)->Arg(256);

static void BM_ComputeVotes(benchmark::State& state) {
    const std::size_t parts = static_cast<std::size_t>(state.range(0));
    Rng rng(3);
    CapsuleTensor child = CapsuleTensor::zeros(parts, 8);
    for (double& v : child.activities.data) v = rng.normal(0.0, 1.0);
    TransformBank bank = TransformBank::init(parts, 10, 8, 16, 0.1, rng);
    for (auto _ : state) {
        VoteTensor v = compute_votes(child, bank);
        benchmark::DoNotOptimize(v.votes.data.data());
    }
}
BENCHMARK(BM_ComputeVotes)->Arg(36)->Arg(144)->Arg(576);

BENCHMARK_MAIN();
