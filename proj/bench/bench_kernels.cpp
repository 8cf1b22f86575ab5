// Copyright 2026 The qdsim Authors
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


// Serial reference kernels against the OpenMP kernels, 14 to 22 qubits.

#include <benchmark/benchmark.h>

#include <array>
#include <random>
#include <vector>

#include "qdsim/gates.hpp"
#include "qdsim/kernels.hpp"

namespace {

using qdsim::Complex;

std::vector<Complex> random_amplitudes(int n) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g;
  std::vector<Complex> a(std::size_t{1} << n);
  for (auto& x : a) x = {g(rng), g(rng)};
  return a;
}

std::vector<Complex> row_major(const qdsim::DenseUnitary& m) {
  std::vector<Complex> out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  }
  return out;
}

const std::vector<Complex>& single_qubit() {
  static const auto m = row_major(qdsim::u3(0.3, 1.1, -0.7));
  return m;
}

const std::vector<Complex>& two_qubit() {
  static const auto m = row_major(qdsim::pauli_pair_exponential(qdsim::Axis::kX, qdsim::Axis::kY, 0.4));
  return m;
}

template <bool Parallel>
void BM_Apply1q(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto amps = random_amplitudes(n);
  const std::array<int, 1> bits = {n / 2};
  for (auto _ : state) {
    if constexpr (Parallel) {
      qdsim::kernels::apply_matrix(amps, bits, single_qubit(), 0);
    } else {
      qdsim::kernels::serial::apply_matrix(amps, bits, single_qubit(), 0);
    }
    benchmark::DoNotOptimize(amps.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <bool Parallel>
void BM_Apply2q(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto amps = random_amplitudes(n);
  const std::array<int, 2> bits = {n - 1, 1};
  for (auto _ : state) {
    if constexpr (Parallel) {
      qdsim::kernels::apply_matrix(amps, bits, two_qubit(), 0);
    } else {
      qdsim::kernels::serial::apply_matrix(amps, bits, two_qubit(), 0);
    }
    benchmark::DoNotOptimize(amps.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <bool Parallel>
void BM_PauliExpectation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto amps = random_amplitudes(n);
  const std::uint64_t x = 0b1011, z = 0b0110;
  for (auto _ : state) {
    Complex e = Parallel ? qdsim::kernels::pauli_expectation(amps, x, z, 1)
                         : qdsim::kernels::serial::pauli_expectation(amps, x, z, 1);
    benchmark::DoNotOptimize(e);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <bool Parallel>
void BM_InnerProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = random_amplitudes(n);
  auto b = a;
  b[0] += 1.0;
  for (auto _ : state) {
    Complex e = Parallel ? qdsim::kernels::inner_product(a, b) : qdsim::kernels::serial::inner_product(a, b);
    benchmark::DoNotOptimize(e);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}

BENCHMARK(BM_Apply1q<false>)->Name("apply_1q/serial")->DenseRange(14, 22, 4);
BENCHMARK(BM_Apply1q<true>)->Name("apply_1q/omp")->DenseRange(14, 22, 4);
BENCHMARK(BM_Apply2q<false>)->Name("apply_2q/serial")->DenseRange(14, 22, 4);
BENCHMARK(BM_Apply2q<true>)->Name("apply_2q/omp")->DenseRange(14, 22, 4);
BENCHMARK(BM_PauliExpectation<false>)->Name("pauli_expectation/serial")->DenseRange(14, 22, 4);
BENCHMARK(BM_PauliExpectation<true>)->Name("pauli_expectation/omp")->DenseRange(14, 22, 4);
BENCHMARK(BM_InnerProduct<false>)->Name("inner_product/serial")->DenseRange(14, 22, 4);
BENCHMARK(BM_InnerProduct<true>)->Name("inner_product/omp")->DenseRange(14, 22, 4);

}  // namespace

BENCHMARK_MAIN();
