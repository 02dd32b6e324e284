#include <benchmark/benchmark.h>

#include "trilocc/protocol.hpp"
#include "trilocc/sampling.hpp"
#include "trilocc/subspace.hpp"
#include "trilocc/witness.hpp"

namespace {

using namespace trilocc;

StateSet random_triple(const PartySignature& sig, rng_t& rng) {
  while (true) {
    std::vector<NamedState> states;
    for (int k = 0; k < 3; ++k)
      states.push_back(NamedState{"s" + std::to_string(k), haar_state(sig, rng)});
    StateSet s = make_state_set(sig, std::move(states));
    if (linearly_independent(s.state_vector())) return s;
  }
}

void BM_ClassifyTwoQubit(benchmark::State& state) {
  rng_t rng(1);
  const StateSet s = random_triple(PartySignature({2, 2}), rng);
  ClassifyOptions opt;
  opt.seed = 7;
  for (auto _ : state) benchmark::DoNotOptimize(classify(s, opt));
}
BENCHMARK(BM_ClassifyTwoQubit);

void BM_ClassifyQutritQubit(benchmark::State& state) {
  rng_t rng(2);
  const StateSet s = random_triple(PartySignature({3, 2}), rng);
  ClassifyOptions opt;
  opt.seed = 7;
  for (auto _ : state) benchmark::DoNotOptimize(classify(s, opt));
}
BENCHMARK(BM_ClassifyQutritQubit);

void BM_ClassifyThreeQubit(benchmark::State& state) {
  rng_t rng(3);
  const StateSet s = random_triple(PartySignature({2, 2, 2}), rng);
  ClassifyOptions opt;
  opt.seed = 7;
  for (auto _ : state) benchmark::DoNotOptimize(classify(s, opt));
}
BENCHMARK(BM_ClassifyThreeQubit);

void BM_PlaneEnumeration(benchmark::State& state) {
  rng_t rng(4);
  const PartySignature sig({2, 2});
  const StateSet s = random_triple(sig, rng);
  const std::vector<MultipartiteState> plane =
      orthogonal_complement({s.state(0), s.state(1)});
  for (auto _ : state)
    benchmark::DoNotOptimize(product_states_in_plane(plane[0], plane[1]));
}
BENCHMARK(BM_PlaneEnumeration);

void BM_ProtocolShots(benchmark::State& state) {
  rng_t rng(5);
  const StateSet s = random_triple(PartySignature({2, 2}), rng);
  ClassifyOptions opt;
  opt.seed = 7;
  const ClassificationReport rep = classify(s, opt);
  const Witness* w = nullptr;
  for (const StateVerdict& v : rep.per_state) {
    if (v.witness) {
      w = &*v.witness;
      break;
    }
  }
  for (auto _ : state) {
    rng_t prng(9);
    benchmark::DoNotOptimize(run_protocol(s, *w, state.range(0), prng));
  }
}
BENCHMARK(BM_ProtocolShots)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
