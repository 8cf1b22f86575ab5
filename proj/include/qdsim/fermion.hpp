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

#include <vector>

#include "qdsim/pauli.hpp"

namespace qdsim {

struct LadderOp {
  int mode;     // 1-based
  bool dagger;  // creation if true

  friend bool operator==(const LadderOp&, const LadderOp&) = default;
};

struct FermionTerm {
  double coefficient;
  std::vector<LadderOp> ops;  // operator product, leftmost first
};

class FermionHamiltonian {
 public:
  explicit FermionHamiltonian(int n_modes);

  int n_modes() const { return n_modes_; }
  const std::vector<FermionTerm>& terms() const { return terms_; }

  void add(double coefficient, std::vector<LadderOp> ops);
  // Adds c * (term + term^dagger).
  void add_with_conjugate(double coefficient, const std::vector<LadderOp>& ops);

 private:
  int n_modes_;
  std::vector<FermionTerm> terms_;
};

inline LadderOp create(int mode) { return {mode, true}; }
inline LadderOp annihilate(int mode) { return {mode, false}; }

enum class Spin { kUp, kDown };

// Mode index used by hubbard_2site: qubits 1..4 hold (2 up, 1 up, 1 down, 2 down).
int hubbard_mode(int site, Spin spin);

// -V (c+_{1d} c_{2d} + c+_{1u} c_{2u} + h.c.) + U (n_{1d} n_{1u} + n_{2d} n_{2u})
FermionHamiltonian hubbard_2site(double v, double u);

struct JwOptions {
  // mode_order[m-1] is the qubit carrying mode m; empty means mode m on qubit m.
  std::vector<int> mode_order;
  // Sign of each sigma_z in the parity string. The string runs over the qubits
  // after the mode's own qubit.
  int tail_sign = +1;
};

// Pauli expansion of a single ladder operator (two strings, complex weights).
std::vector<PauliString> jw_ladder(LadderOp op, int n_modes, const JwOptions& options = {});

// Throws InputError when the mapped operator is not Hermitian.
PauliHamiltonian jordan_wigner(const FermionHamiltonian& fh, const JwOptions& options = {});

// Dense 2^n matrix of a Pauli sum with complex weights.
Eigen::MatrixXcd dense_matrix(const std::vector<PauliString>& sum, int n_qubits);

}  // namespace qdsim
