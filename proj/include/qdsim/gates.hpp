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

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qdsim/common.hpp"

namespace qdsim {

using DenseUnitary = Eigen::MatrixXcd;

enum class GateKind {
  kU3,
  kH,
  kPhase,
  kRx,
  kRy,
  kRz,
  kX,
  kCnot,
  kCPhase,
  kZZ,
  kXX,
  kYY,
  kUxy,
  kMsT1,
  kMsT2,
  kMsT3,
  kMsT4,
};

std::string_view gate_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);

// Number of real parameters a kind takes.
int gate_param_count(GateKind kind);

// True for gates acting on exactly two targets (CNOT, CPhase, ZZ/XX/YY, Uxy).
bool is_two_qubit_kind(GateKind kind);

/// A named gate bound to 1-based target qubits, optionally conditioned on
/// control qubits being |1>. Targets are ordered: the first target is the
/// most significant factor of the gate matrix (CNOT: control, then target).
struct GateOp {
  GateKind kind;
  std::vector<double> params;
  std::vector<int> targets;
  std::vector<int> controls;

  // Throws InputError on arity or parameter-count mismatch.
  void validate() const;

  friend bool operator==(const GateOp&, const GateOp&) = default;
};

GateOp make_gate(GateKind kind, std::vector<int> targets,
                 std::vector<double> params = {});

// The inverse operation; same kind where the family is closed under inversion.
GateOp inverse(const GateOp& op);

/// Matrix of the gate on its own targets (dim 2^targets), controls ignored.
DenseUnitary gate_matrix(const GateOp& op);

// Single-qubit matrices, with the exact phases of their defining formulas.
DenseUnitary u3(double theta, double phi, double lambda);
DenseUnitary hadamard();
DenseUnitary phase_gate(double delta);
DenseUnitary rotation(Axis axis, double theta);  // exp(-i theta sigma/2)
DenseUnitary pauli_matrix(Axis axis);
DenseUnitary pauli_x();

DenseUnitary named_single_qubit(GateKind kind, const std::vector<double>& params);

DenseUnitary cnot();
DenseUnitary cphase(double delta);
DenseUnitary uxy(double delta);  // exp(-i delta (XX + YY))

/// exp(-i delta sigma_a (x) sigma_b).
DenseUnitary pauli_pair_exponential(Axis a, Axis b, double delta);

enum class MsKind { kT1, kT2, kT3, kT4 };

/// Trapped-ion native gates on an addressed subset (size = target_count),
/// returned as a 2^target_count matrix:
///   T1 = exp(-i theta Z)               (one target)
///   T2 = exp(-i theta sum_j Z_j)
///   T3 = exp(-i theta sum_j sigma_phi^(j)),  sigma_phi = cos(phi) X + sin(phi) Y
///   T4 = exp(-i theta sum_{i<j} sigma_phi^(i) sigma_phi^(j))   (>= 2 targets)
DenseUnitary ms_gate(MsKind kind, double theta, double phi, int target_count);

/// ms_gate embedded on `targets` of an n_qubits register.
DenseUnitary ms_gate(MsKind kind, double theta, double phi,
                     const std::vector<int>& targets, int n_qubits);

// exp(-i H) for Hermitian H via eigendecomposition.
DenseUnitary expm_hermitian(const Eigen::MatrixXcd& h, double scale);

/// Kronecker embedding of a k-qubit matrix onto 1-based `targets` of an
/// n-qubit register, identity elsewhere; `controls` restrict the action to the
/// subspace where all of them are |1>.
DenseUnitary embed(const DenseUnitary& local, const std::vector<int>& targets,
                   int n_qubits, const std::vector<int>& controls = {});

bool is_unitary(const DenseUnitary& u, double tol = 1e-10);

}  // namespace qdsim
