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

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qdsim/common.hpp"

namespace qdsim {

/// A coefficient times a tensor product of I/X/Y/Z letters. letters[0] acts
/// on qubit 1.
struct PauliString {
  Complex coefficient{1.0, 0.0};
  std::string letters;

  PauliString() = default;
  PauliString(Complex c, std::string l);

  int n_qubits() const { return static_cast<int>(letters.size()); }
  bool is_identity() const;
  // 1-based qubits carrying a non-identity letter, ascending.
  std::vector<int> support() const;
  int weight() const;

  // Bit masks over the amplitude index (qubit 1 = most significant bit).
  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;
  int y_count() const;
};

/// Letters of a single-qubit or few-qubit operator placed in an n-qubit register.
PauliString pauli_on(int n_qubits, const std::vector<std::pair<int, char>>& sites,
                     Complex coefficient = 1.0);

bool commutes(const PauliString& a, const PauliString& b);

// Operator product a * b including the phase from single-site algebra.
PauliString multiply(const PauliString& a, const PauliString& b);

Eigen::MatrixXcd dense_matrix(const PauliString& p);

/// Sum of real-weighted Pauli strings on a fixed register. Terms with equal
/// letters are merged on insertion; exact zeros are dropped.
class PauliHamiltonian {
 public:
  explicit PauliHamiltonian(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<PauliString>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  // Throws InputError for a non-real coefficient or wrong register size.
  void add(double coefficient, std::string_view letters);
  void add(const PauliString& term);

  // Sum of |coefficient| over non-identity terms; bounds the spectral radius
  // of H minus its identity part.
  double gershgorin_bound() const;
  double identity_offset() const;

  // Largest |coefficient| among non-identity terms.
  double coupling_scale() const;

 private:
  int n_qubits_;
  std::vector<PauliString> terms_;
};

Eigen::MatrixXcd dense_matrix(const PauliHamiltonian& h);

/// Complex-weighted sum of strings produced by operator algebra (products,
/// commutators). Merges equal letters and prunes magnitudes below `tol`.
std::vector<PauliString> simplify(std::vector<PauliString> terms, double tol = 1e-14);

// [A, B] in Pauli-sum form.
std::vector<PauliString> commutator(const std::vector<PauliString>& a,
                                    const std::vector<PauliString>& b);

// Spin-model builders. Field terms come first, then bonds in chain order.
PauliHamiltonian heisenberg_chain(int n, const std::vector<double>& couplings,
                                  double field);
PauliHamiltonian xyz_chain(int n, double jxx, double jyy, double jzz);
PauliHamiltonian tim_chain(int n, const std::vector<double>& fields, double jzz);

/// Groups of term indices for parallel emission. Terms are first collected
/// into blocks sharing one support and commuting pairwise; blocks are then
/// placed first-fit into layers whose blocks have disjoint supports.
std::vector<std::vector<std::size_t>> disjoint_layers(const PauliHamiltonian& h);

// Text format: one `coef LETTERS` per line; '#' starts a comment.
PauliHamiltonian parse_hamiltonian(std::istream& in);
std::string format_hamiltonian(const PauliHamiltonian& h);

}  // namespace qdsim
