#include "caimdp/bellman.hpp"
#include "caimdp/experiments.hpp"

#include "random_models.hpp"

#include <benchmark/benchmark.h>

using namespace caimdp;

namespace {

Execution execution(const benchmark::State& state) {
  return state.range(1) ? Execution::Parallel : Execution::Serial;
}

void set_label(benchmark::State& state) {
  state.SetLabel(state.range(1) ? "parallel" : "serial");
}

void BM_ConcaveBackup(benchmark::State& state) {
  GeneratorConfig cfg;
  cfg.n_states = static_cast<int>(state.range(0));
  cfg.seed = 1;
  const Caimdp m = generate(cfg);
  const Vector v = m.reward();
  BackupOptions opts;
  opts.execution = execution(state);
  for (auto _ : state) benchmark::DoNotOptimize(pessimistic_backup(m, v, 1.0, opts));
  set_label(state);
}

void BM_LinearBackup(benchmark::State& state) {
  Rng rng(2);
  const int n = static_cast<int>(state.range(0));
  const Caimdp m = testkit::random_model(testkit::ModelKind::Linear, n,
                                         ActionSet::box(Vector::Zero(3), Vector::Ones(3)), rng);
  const Vector v = testkit::random_values(n, rng);
  BackupOptions opts;
  opts.execution = execution(state);
  for (auto _ : state) benchmark::DoNotOptimize(pessimistic_backup(m, v, 1.0, opts));
  set_label(state);
}

void BM_DiscreteVi(benchmark::State& state) {
  GeneratorConfig cfg;
  cfg.n_states = static_cast<int>(state.range(0));
  cfg.seed = 3;
  const Caimdp m = generate(cfg);
  Rng rng(4);
  std::vector<Vector> actions;
  for (int k = 0; k < 64; ++k) actions.push_back(sample_uniform(m.action_set(), rng));
  for (auto _ : state) benchmark::DoNotOptimize(discrete_vi(m, actions, 10, 1.0, execution(state)));
  set_label(state);
}

}  // namespace

BENCHMARK(BM_ConcaveBackup)->ArgsProduct({{10, 25, 50}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LinearBackup)->ArgsProduct({{10, 25, 50}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiscreteVi)->ArgsProduct({{25, 50}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
