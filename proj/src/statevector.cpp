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

#include "qdsim/statevector.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "qdsim/kernels.hpp"

namespace qdsim {

namespace {

using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_bits(int n_qubits, std::string_view bits) {
  if (static_cast<int>(bits.size()) != n_qubits) {
    throw InputError(fmt::format("bitstring '{}' has length {}, register has {} qubits",
                                 bits, bits.size(), n_qubits));
  }
  for (char c : bits) {
    if (c != '0' && c != '1') throw InputError(fmt::format("bad bit '{}' in '{}'", c, bits));
  }
}

std::uint64_t bits_to_index(std::string_view bits) {
  std::uint64_t idx = 0;
  for (char c : bits) idx = (idx << 1) | (c == '1' ? 1U : 0U);
  return idx;
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw InputError("register needs at least one qubit");
  if (n_qubits > kMaxQubits) {
    throw ResourceError(fmt::format("statevector limited to {} qubits", kMaxQubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Complex> amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes, double norm_tol) {
  const std::size_t size = amplitudes.size();
  if (size < 2 || !std::has_single_bit(size)) {
    throw InputError(fmt::format("amplitude count {} is not a power of two >= 2", size));
  }
  const double n2 = kernels::norm_squared(amplitudes);
  if (std::abs(std::sqrt(n2) - 1.0) > norm_tol) {
    throw InputError(fmt::format("amplitudes are not normalised (norm {})", std::sqrt(n2)));
  }
  return StateVector(std::countr_zero(size), std::move(amplitudes));
}

double StateVector::norm() const { return std::sqrt(kernels::norm_squared(amps_)); }

void StateVector::check_qubits(const std::vector<int>& targets,
                               const std::vector<int>& controls) const {
  for (const auto* list : {&targets, &controls}) {
    for (int q : *list) {
      if (q < 1 || q > n_qubits_) {
        throw InputError(fmt::format("qubit {} outside register of {} qubits", q, n_qubits_));
      }
    }
  }
}

std::vector<int> StateVector::bit_positions(const std::vector<int>& qubits) const {
  std::vector<int> bits;
  bits.reserve(qubits.size());
  for (int q : qubits) bits.push_back(n_qubits_ - q);
  return bits;
}

std::uint64_t StateVector::control_mask(const std::vector<int>& controls) const {
  std::uint64_t m = 0;
  for (int q : controls) m |= std::uint64_t{1} << (n_qubits_ - q);
  return m;
}

void StateVector::apply(const GateOp& op) {
  op.validate();
  check_qubits(op.targets, op.controls);
  const RowMajor m = gate_matrix(op);
  const auto bits = bit_positions(op.targets);
  kernels::apply_matrix(amps_, bits, {m.data(), static_cast<std::size_t>(m.size())},
                        control_mask(op.controls));
}

void StateVector::apply_reference(const GateOp& op) {
  op.validate();
  check_qubits(op.targets, op.controls);
  const RowMajor m = gate_matrix(op);
  const auto bits = bit_positions(op.targets);
  kernels::serial::apply_matrix(amps_, bits,
                                {m.data(), static_cast<std::size_t>(m.size())},
                                control_mask(op.controls));
}

void StateVector::apply_matrix(const DenseUnitary& m, const std::vector<int>& targets,
                               const std::vector<int>& controls) {
  check_qubits(targets, controls);
  if (m.rows() != (Eigen::Index{1} << targets.size()) || m.cols() != m.rows()) {
    throw InputError("matrix size does not match target count");
  }
  if (!is_unitary(m, 1e-10)) throw InputError("matrix is not unitary within 1e-10");
  std::vector<int> all = targets;
  all.insert(all.end(), controls.begin(), controls.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw InputError("repeated qubit among targets and controls");
  }
  const RowMajor rm = m;
  kernels::apply_matrix(amps_, bit_positions(targets),
                        {rm.data(), static_cast<std::size_t>(rm.size())},
                        control_mask(controls));
}

StateVector StateVector::extended(int extra_qubits) const {
  if (extra_qubits < 0) throw InputError("negative qubit count");
  const int n = n_qubits_ + extra_qubits;
  if (n > kMaxQubits) {
    throw ResourceError(fmt::format("statevector limited to {} qubits", kMaxQubits));
  }
  std::vector<Complex> amps(std::size_t{1} << n, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < amps_.size(); ++i) amps[i << extra_qubits] = amps_[i];
  return StateVector(n, std::move(amps));
}

StateVector basis_state(int n_qubits, std::string_view bits) {
  check_bits(n_qubits, bits);
  std::vector<Complex> amps(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amps[bits_to_index(bits)] = 1.0;
  return StateVector::from_amplitudes(std::move(amps));
}

StateVector product_state(std::string_view labels) {
  const int n = static_cast<int>(labels.size());
  if (n < 1) throw InputError("empty product-state label");
  if (n > kMaxQubits) {
    throw ResourceError(fmt::format("statevector limited to {} qubits", kMaxQubits));
  }
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<std::array<Complex, 2>> factors;
  for (char c : labels) {
    switch (c) {
      case '0':
        factors.push_back({1.0, 0.0});
        break;
      case '1':
        factors.push_back({0.0, 1.0});
        break;
      case '+':
        factors.push_back({r, r});
        break;
      case '-':
        factors.push_back({r, -r});
        break;
      case 'r':
        factors.push_back({r, kI * r});
        break;
      case 'l':
        factors.push_back({r, -kI * r});
        break;
      default:
        throw InputError(fmt::format("unknown state label '{}' in '{}'", c, labels));
    }
  }
  std::vector<Complex> amps(std::size_t{1} << n);
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    Complex a = 1.0;
    for (int q = 0; q < n; ++q) a *= factors[q][(idx >> (n - 1 - q)) & 1U];
    amps[idx] = a;
  }
  return StateVector::from_amplitudes(std::move(amps));
}

StateVector apply_gate(StateVector state, const GateOp& op) {
  state.apply(op);
  return state;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw InputError(fmt::format("inner product of {}- and {}-qubit states", a.n_qubits(),
                                 b.n_qubits()));
  }
  return kernels::inner_product(a.amplitudes(), b.amplitudes());
}

double pauli_expectation(const StateVector& state, const PauliString& p) {
  if (p.n_qubits() != state.n_qubits()) {
    throw InputError(fmt::format("Pauli string '{}' does not fit a {}-qubit register",
                                 p.letters, state.n_qubits()));
  }
  if (std::abs(p.coefficient.imag()) > 1e-12) {
    throw InputError("expectation needs a real Pauli coefficient");
  }
  const Complex e =
      kernels::pauli_expectation(state.amplitudes(), p.x_mask(), p.z_mask(), p.y_count());
  return p.coefficient.real() * e.real();
}

double probability(const StateVector& state, std::string_view bits) {
  check_bits(state.n_qubits(), bits);
  return std::norm(state.amplitude(bits_to_index(bits)));
}

}  // namespace qdsim
