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

#include <functional>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "qdsim/gates.hpp"
#include "qdsim/statevector.hpp"

namespace qdsim {

/// Ordered gate list on a fixed register. List order is temporal order: the
/// first op acts first, so the circuit unitary is e^{i phase} * U_last ... U_first.
class Circuit {
 public:
  explicit Circuit(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<GateOp>& ops() const { return ops_; }
  double global_phase() const { return global_phase_; }

  // Validates the op and its qubit range.
  void add(GateOp op);
  void add(GateKind kind, std::vector<int> targets, std::vector<double> params = {});
  void add_phase(double phase) { global_phase_ += phase; }
  void append(const Circuit& other);

  Circuit inverse() const;

  std::size_t size() const { return ops_.size(); }
  std::size_t count(GateKind kind) const;
  // Ops with two or more targets (entangling primitives).
  std::size_t multi_qubit_gate_count() const;

 private:
  int n_qubits_;
  std::vector<GateOp> ops_;
  double global_phase_ = 0.0;
};

/// Copy of `c` on a register of `n_qubits` (>= c.n_qubits()) where every op is
/// additionally conditioned on `control`, and the global phase becomes a
/// PHASE gate on the control.
Circuit controlled(const Circuit& c, int control, int n_qubits);

// Runs every op on the state, then applies the global phase.
void run(const Circuit& c, StateVector& state);

void multiply_phase(StateVector& state, double phase);

enum class GateSet { kS1, kS2, kS3, kS4 };

std::string_view gate_set_name(GateSet set);
GateSet gate_set_from_name(std::string_view name);

// Whether the op belongs to the native gate family of `set`.
bool in_gate_set(const GateOp& op, GateSet set);

struct CompileOptions {
  // Smallest controlled-phase angle the S3 hardware realises in one gate; ZZ
  // blocks needing less switch to the two-CPHASE construction. Clamped to >= 0.
  double min_cphase = 0.0;
};

/// exp(-i delta sigma_a^(i) sigma_b^(j)) over the native gates of `set`.
Circuit decompose_pauli_pair(Axis a, Axis b, double delta, int i, int j, GateSet set,
                             int n_qubits, const CompileOptions& options = {});

// Individual S3 constructions for the sigma_z sigma_z core.
Circuit zz_single_cphase(double delta, int i, int j, int n_qubits);
Circuit zz_two_cphase(double delta, int i, int j, int n_qubits, double min_cphase = 0.0);

/// exp(-i delta (x)_k sigma_{axes[k]}^(qubits[k])) for three or more qubits:
/// basis changes, a CNOT ladder onto the last qubit, Rz, and the mirrored ladder.
Circuit decompose_multi_pauli(const std::vector<Axis>& axes, double delta,
                              const std::vector<int>& qubits, GateSet set, int n_qubits);

/// exp(-i theta sigma_axis) on one qubit, lowered to `set`.
Circuit single_qubit_exponential(Axis axis, double delta, int q, GateSet set, int n_qubits);

/// CNOT lowered to `set` (native in S1; via a z-x pair exponential otherwise).
Circuit lowered_cnot(int control, int target, GateSet set, int n_qubits);

enum class HeisenbergVariant { kSixCnot, kThreeCnot, kThreeUxy, kThreeCPhase, kS4 };

std::string_view heisenberg_variant_name(HeisenbergVariant v);
HeisenbergVariant heisenberg_variant_from_name(std::string_view name);

/// exp(-i delta (XX + YY + ZZ)) on qubits (i, j).
Circuit heisenberg2_circuit(double delta, int i, int j, HeisenbergVariant variant,
                            int n_qubits);

/// Dense unitary of the circuit (n_qubits <= 12), built from Kronecker
/// embeddings of each gate matrix.
DenseUnitary circuit_unitary(const Circuit& c);

// Same product with a caller-supplied matrix for each op (fault-injection hook).
using GateMatrixFn = std::function<DenseUnitary(const GateOp&)>;
DenseUnitary circuit_unitary(const Circuit& c, const GateMatrixFn& matrix_of);

bool equal_up_to_global_phase(const DenseUnitary& u, const DenseUnitary& v, double tol);

// Text form: a `qubits N` header, one `NAME(p, ...) t1 t2 [ctrl c ...]` per op,
// and a `phase <radians>` footer.
std::string format_circuit(const Circuit& c);
Circuit parse_circuit(std::istream& in);

}  // namespace qdsim
