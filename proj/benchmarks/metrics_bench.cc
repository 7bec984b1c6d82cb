#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "simplify/metrics.h"
#include "simplify/rng.h"

namespace {

std::vector<std::string> random_sentence(simplify::Rng& rng, size_t length) {
  std::vector<std::string> out;
  for (size_t i = 0; i < length; ++i) out.push_back("w" + std::to_string(rng.index(12)));
  return out;
}

void BM_Ter(benchmark::State& state) {
  simplify::Rng rng(3);
  const auto len = static_cast<size_t>(state.range(0));
  const auto hyp = random_sentence(rng, len);
  const auto ref = random_sentence(rng, len);
  for (auto _ : state) benchmark::DoNotOptimize(simplify::ter(hyp, ref));
}
BENCHMARK(BM_Ter)->Arg(10)->Arg(25);

void BM_Sari(benchmark::State& state) {
  simplify::Rng rng(4);
  const auto src = random_sentence(rng, 25);
  const auto cand = random_sentence(rng, 15);
  const std::vector<std::vector<std::string>> refs{random_sentence(rng, 15)};
  for (auto _ : state) benchmark::DoNotOptimize(simplify::sari(src, cand, refs));
}
BENCHMARK(BM_Sari);

}  // namespace
