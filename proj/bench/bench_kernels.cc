// Copyright 2026 The cfgperf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP counterparts. Thread count
// follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <vector>

#include <Eigen/Dense>

#include "cfgperf/kernels.h"
#include "cfgperf/rng.h"

namespace {

using namespace cfgperf;

Eigen::MatrixXd RandomMatrix(long rows, long cols, std::uint64_t seed) {
  Rng rng(seed);
  return Eigen::MatrixXd::NullaryExpr(rows, cols, [&] { return rng.UniformDouble(); });
}

KernelSpec Rbf() {
  KernelSpec k;
  k.type = KernelSpec::Type::kRbf;
  k.gamma = 0.7;
  return k;
}

template <Eigen::MatrixXd (*Fn)(const Eigen::MatrixXd&, const KernelSpec&)>
void BM_Gram(benchmark::State& state) {
  const Eigen::MatrixXd X = RandomMatrix(state.range(0), 12, 1);
  const KernelSpec k = Rbf();
  for (auto _ : state) benchmark::DoNotOptimize(Fn(X, k));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Gram<kernels::serial::Gram>)->Name("Gram/serial")->Arg(200)->Arg(800);
BENCHMARK(BM_Gram<kernels::parallel::Gram>)->Name("Gram/parallel")->Arg(200)->Arg(800);

template <Eigen::MatrixXd (*Fn)(const Eigen::MatrixXd&, const Eigen::MatrixXd&,
                                const KernelSpec&)>
void BM_CrossGram(benchmark::State& state) {
  const Eigen::MatrixXd A = RandomMatrix(state.range(0), 12, 2);
  const Eigen::MatrixXd B = RandomMatrix(400, 12, 3);
  const KernelSpec k = Rbf();
  for (auto _ : state) benchmark::DoNotOptimize(Fn(A, B, k));
}
BENCHMARK(BM_CrossGram<kernels::serial::CrossGram>)->Name("CrossGram/serial")->Arg(2000);
BENCHMARK(BM_CrossGram<kernels::parallel::CrossGram>)->Name("CrossGram/parallel")->Arg(2000);

template <void (*Fn)(const Eigen::MatrixXd&, const Eigen::MatrixXd&, std::span<double>)>
void BM_QuadraticForms(benchmark::State& state) {
  const Eigen::MatrixXd X = RandomMatrix(state.range(0), 40, 4);
  const Eigen::MatrixXd A = RandomMatrix(40, 40, 5);
  std::vector<double> out(static_cast<std::size_t>(X.rows()));
  for (auto _ : state) {
    Fn(X, A, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_QuadraticForms<kernels::serial::QuadraticForms>)
    ->Name("QuadraticForms/serial")->Arg(20000);
BENCHMARK(BM_QuadraticForms<kernels::parallel::QuadraticForms>)
    ->Name("QuadraticForms/parallel")->Arg(20000);

template <void (*Fn)(const Eigen::MatrixXd&, const Eigen::Ref<const Eigen::VectorXd>&, double,
                     std::span<double>)>
void BM_Minkowski(benchmark::State& state) {
  const Eigen::MatrixXd rows = RandomMatrix(state.range(0), 12, 6);
  const Eigen::VectorXd q = RandomMatrix(12, 1, 7);
  std::vector<double> out(static_cast<std::size_t>(rows.rows()));
  for (auto _ : state) {
    Fn(rows, q, 3.0, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Minkowski<kernels::serial::MinkowskiDistances>)
    ->Name("Minkowski/serial")->Arg(100000);
BENCHMARK(BM_Minkowski<kernels::parallel::MinkowskiDistances>)
    ->Name("Minkowski/parallel")->Arg(100000);

template <double (*Fn)(std::span<const double>, std::span<const double>)>
void BM_MeanRelativeError(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(8);
  std::vector<double> y(n), p(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = 1 + rng.UniformDouble();
    p[i] = 1 + rng.UniformDouble();
  }
  for (auto _ : state) benchmark::DoNotOptimize(Fn(y, p));
}
BENCHMARK(BM_MeanRelativeError<kernels::serial::MeanRelativeError>)
    ->Name("MeanRelativeError/serial")->Arg(1 << 20);
BENCHMARK(BM_MeanRelativeError<kernels::parallel::MeanRelativeError>)
    ->Name("MeanRelativeError/parallel")->Arg(1 << 20);

}  // namespace

BENCHMARK_MAIN();
