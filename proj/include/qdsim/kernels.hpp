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

#pragma once

// Strided amplitude kernels. Every kernel comes in two flavours: a plain
// serial reference that walks the full index range, and an OpenMP version
// that enumerates only the base indices of each amplitude group. The serial
// versions exist for cross-checking and benchmarking.
//
// Bit positions count from the least significant bit of the amplitude index.
// For a k-target matrix, target_bits[0] addresses the most significant bit of
// the local 2^k index, matching Kronecker-product order.

#include <cstdint>
#include <span>

#include "qdsim/common.hpp"

namespace qdsim::kernels {

// Register size below which the OpenMP kernels stay on one thread.
inline constexpr int kParallelMinQubits = 14;

namespace serial {

void apply_matrix(std::span<Complex> amps, std::span<const int> target_bits,
                  std::span<const Complex> matrix, std::uint64_t control_mask);

Complex pauli_expectation(std::span<const Complex> amps, std::uint64_t x_mask,
                          std::uint64_t z_mask, int y_count);

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace serial

void apply_1q(std::span<Complex> amps, int bit, const Complex* m,
              std::uint64_t control_mask);

void apply_2q(std::span<Complex> amps, int bit_hi, int bit_lo, const Complex* m,
              std::uint64_t control_mask);

// Dispatches to apply_1q / apply_2q for small k, general gather-scatter otherwise.
void apply_matrix(std::span<Complex> amps, std::span<const int> target_bits,
                  std::span<const Complex> matrix, std::uint64_t control_mask);

Complex pauli_expectation(std::span<const Complex> amps, std::uint64_t x_mask,
                          std::uint64_t z_mask, int y_count);

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);

double norm_squared(std::span<const Complex> amps);

}  // namespace qdsim::kernels
