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

#include <span>
#include <string_view>
#include <vector>

#include "qdsim/common.hpp"
#include "qdsim/gates.hpp"
#include "qdsim/pauli.hpp"

namespace qdsim {

inline constexpr int kMaxQubits = 30;

/// Amplitudes of an n-qubit register. Qubit 1 is the most significant bit of
/// the amplitude index; |0> is spin up (sigma_z = +1).
///
/// A StateVector has a single writer. Gate application may fan out over
/// OpenMP threads internally; distinct instances are independent.
class StateVector {
 public:
  // |0...0>
  explicit StateVector(int n_qubits);

  // Takes ownership of amplitudes; the length must be a power of two. The
  // norm is checked, never rescaled.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes,
                                     double norm_tol = 1e-10);

  int n_qubits() const { return n_qubits_; }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex amplitude(std::size_t index) const { return amps_[index]; }
  double norm() const;

  // In-place update by the gate's unitary on its targets, honouring controls.
  void apply(const GateOp& op);

  // Serial reference path; same result as apply().
  void apply_reference(const GateOp& op);

  // Applies an explicit 2^k matrix to 1-based targets.
  void apply_matrix(const DenseUnitary& m, const std::vector<int>& targets,
                    const std::vector<int>& controls = {});

  // Appends fresh qubits in |0> after the existing ones (new least significant bits).
  StateVector extended(int extra_qubits) const;

 private:
  StateVector(int n_qubits, std::vector<Complex> amps);
  void check_qubits(const std::vector<int>& targets, const std::vector<int>& controls) const;
  std::vector<int> bit_positions(const std::vector<int>& qubits) const;
  std::uint64_t control_mask(const std::vector<int>& controls) const;

  int n_qubits_;
  std::vector<Complex> amps_;
};

/// |b_1 ... b_N>, qubit 1 being the leftmost character.
StateVector basis_state(int n_qubits, std::string_view bits);

/// Product state from per-qubit labels: '0', '1', '+', '-', 'r' (+i), 'l' (-i).
StateVector product_state(std::string_view labels);

StateVector apply_gate(StateVector state, const GateOp& op);

Complex inner_product(const StateVector& a, const StateVector& b);

// <state|P|state> for a real-coefficient Pauli string.
double pauli_expectation(const StateVector& state, const PauliString& p);

double probability(const StateVector& state, std::string_view bits);

}  // namespace qdsim
