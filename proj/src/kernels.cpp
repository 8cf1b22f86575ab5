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

#include "qdsim/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <vector>


namespace qdsim::kernels {

namespace {

int register_qubits(std::size_t size) { return std::countr_zero(size); }

bool go_parallel(std::size_t size) {
  return register_qubits(size) >= kParallelMinQubits;
}

// Spreads the bits of j around zero gaps at the given (ascending) positions.
inline std::uint64_t insert_zero_bits(std::uint64_t j, const int* sorted_bits,
                                      int count) {
  for (int r = 0; r < count; ++r) {
    const int b = sorted_bits[r];
    const std::uint64_t low = j & ((std::uint64_t{1} << b) - 1);
    j = ((j >> b) << (b + 1)) | low;
  }
  return j;
}

// Offset of each local basis index within an amplitude group.
std::vector<std::uint64_t> local_offsets(std::span<const int> target_bits) {
  const int k = static_cast<int>(target_bits.size());
  std::vector<std::uint64_t> offsets(std::size_t{1} << k, 0);
  for (std::size_t local = 0; local < offsets.size(); ++local) {
    std::uint64_t off = 0;
    for (int r = 0; r < k; ++r) {
      if ((local >> (k - 1 - r)) & 1U) off |= std::uint64_t{1} << target_bits[r];
    }
    offsets[local] = off;
  }
  return offsets;
}

}  // namespace

namespace serial {

void apply_matrix(std::span<Complex> amps, std::span<const int> target_bits,
                  std::span<const Complex> matrix, std::uint64_t control_mask) {
  const std::size_t dim = std::size_t{1} << target_bits.size();
  assert(matrix.size() == dim * dim);
  std::uint64_t target_mask = 0;
  for (int b : target_bits) target_mask |= std::uint64_t{1} << b;
  const auto offsets = local_offsets(target_bits);
  std::vector<Complex> in(dim), out(dim);
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if ((i & target_mask) != 0) continue;
    if ((i & control_mask) != control_mask) continue;
    for (std::size_t r = 0; r < dim; ++r) in[r] = amps[i | offsets[r]];
    for (std::size_t r = 0; r < dim; ++r) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) acc += matrix[r * dim + c] * in[c];
      out[r] = acc;
    }
    for (std::size_t r = 0; r < dim; ++r) amps[i | offsets[r]] = out[r];
  }
}

Complex pauli_expectation(std::span<const Complex> amps, std::uint64_t x_mask,
                          std::uint64_t z_mask, int y_count) {
  Complex acc = 0.0;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    const double sign = (std::popcount(i & z_mask) & 1) ? -1.0 : 1.0;
    acc += std::conj(amps[i ^ x_mask]) * sign * amps[i];
  }
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kIPow[y_count & 3] * acc;
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
  assert(a.size() == b.size());
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

}  // namespace serial

void apply_1q(std::span<Complex> amps, int bit, const Complex* m,
              std::uint64_t control_mask) {
  const std::int64_t groups = static_cast<std::int64_t>(amps.size() >> 1);
  const std::uint64_t stride = std::uint64_t{1} << bit;
  const Complex m00 = m[0], m01 = m[1], m10 = m[2], m11 = m[3];
  Complex* a = amps.data();
#pragma omp parallel for schedule(static) if (go_parallel(amps.size()))
  for (std::int64_t j = 0; j < groups; ++j) {
    const std::uint64_t uj = static_cast<std::uint64_t>(j);
    const std::uint64_t i0 = ((uj >> bit) << (bit + 1)) | (uj & (stride - 1));
    if ((i0 & control_mask) != control_mask) continue;
    const std::uint64_t i1 = i0 | stride;
    const Complex v0 = a[i0];
    const Complex v1 = a[i1];
    a[i0] = m00 * v0 + m01 * v1;
    a[i1] = m10 * v0 + m11 * v1;
  }
}

void apply_2q(std::span<Complex> amps, int bit_hi, int bit_lo, const Complex* m,
              std::uint64_t control_mask) {
  const std::int64_t groups = static_cast<std::int64_t>(amps.size() >> 2);
  const int sorted[2] = {std::min(bit_hi, bit_lo), std::max(bit_hi, bit_lo)};
  const std::uint64_t s_hi = std::uint64_t{1} << bit_hi;
  const std::uint64_t s_lo = std::uint64_t{1} << bit_lo;
  Complex mm[16];
  std::copy(m, m + 16, mm);
  Complex* a = amps.data();
#pragma omp parallel for schedule(static) if (go_parallel(amps.size()))
  for (std::int64_t j = 0; j < groups; ++j) {
    const std::uint64_t i00 =
        insert_zero_bits(static_cast<std::uint64_t>(j), sorted, 2);
    if ((i00 & control_mask) != control_mask) continue;
    const std::uint64_t idx[4] = {i00, i00 | s_lo, i00 | s_hi, i00 | s_hi | s_lo};
    const Complex v[4] = {a[idx[0]], a[idx[1]], a[idx[2]], a[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      a[idx[r]] = mm[4 * r] * v[0] + mm[4 * r + 1] * v[1] + mm[4 * r + 2] * v[2] +
                  mm[4 * r + 3] * v[3];
    }
  }
}

void apply_matrix(std::span<Complex> amps, std::span<const int> target_bits,
                  std::span<const Complex> matrix, std::uint64_t control_mask) {
  const int k = static_cast<int>(target_bits.size());
  if (k == 1) {
    apply_1q(amps, target_bits[0], matrix.data(), control_mask);
    return;
  }
  if (k == 2) {
    apply_2q(amps, target_bits[0], target_bits[1], matrix.data(), control_mask);
    return;
  }
  const std::size_t dim = std::size_t{1} << k;
  std::vector<int> sorted(target_bits.begin(), target_bits.end());
  std::sort(sorted.begin(), sorted.end());
  const auto offsets = local_offsets(target_bits);
  const std::int64_t groups = static_cast<std::int64_t>(amps.size() >> k);
  Complex* a = amps.data();
  const Complex* mat = matrix.data();
#pragma omp parallel if (go_parallel(amps.size()))
  {
    std::vector<Complex> in(dim), out(dim);
#pragma omp for schedule(static)
    for (std::int64_t j = 0; j < groups; ++j) {
      const std::uint64_t base =
          insert_zero_bits(static_cast<std::uint64_t>(j), sorted.data(), k);
      if ((base & control_mask) != control_mask) continue;
      for (std::size_t r = 0; r < dim; ++r) in[r] = a[base | offsets[r]];
      for (std::size_t r = 0; r < dim; ++r) {
        Complex acc = 0.0;
        const Complex* row = mat + r * dim;
        for (std::size_t c = 0; c < dim; ++c) acc += row[c] * in[c];
        out[r] = acc;
      }
      for (std::size_t r = 0; r < dim; ++r) a[base | offsets[r]] = out[r];
    }
  }
}

Complex pauli_expectation(std::span<const Complex> amps, std::uint64_t x_mask,
                          std::uint64_t z_mask, int y_count) {
  const std::int64_t n = static_cast<std::int64_t>(amps.size());
  const Complex* a = amps.data();
  double re = 0.0, im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im) if (go_parallel(amps.size()))
  for (std::int64_t s = 0; s < n; ++s) {
    const std::uint64_t i = static_cast<std::uint64_t>(s);
    const double sign = (std::popcount(i & z_mask) & 1) ? -1.0 : 1.0;
    const Complex term = std::conj(a[i ^ x_mask]) * a[i] * sign;
    re += term.real();
    im += term.imag();
  }
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kIPow[y_count & 3] * Complex(re, im);
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
  assert(a.size() == b.size());
  const std::int64_t n = static_cast<std::int64_t>(a.size());
  double re = 0.0, im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im) if (go_parallel(a.size()))
  for (std::int64_t i = 0; i < n; ++i) {
    const Complex term = std::conj(a[i]) * b[i];
    re += term.real();
    im += term.imag();
  }
  return {re, im};
}

double norm_squared(std::span<const Complex> amps) {
  const std::int64_t n = static_cast<std::int64_t>(amps.size());
  double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc) if (go_parallel(amps.size()))
  for (std::int64_t i = 0; i < n; ++i) acc += std::norm(amps[i]);
  return acc;
}

}  // namespace qdsim::kernels
