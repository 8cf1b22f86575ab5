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


// Random generators and independent dense oracles shared by the test binaries.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdsim/compiler.hpp"
#include "qdsim/pauli.hpp"
#include "qdsim/statevector.hpp"

namespace qdsim::testing {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t salt = 0) { return Rng(0x5eed1234abcdULL ^ salt); }

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline StateVector random_state(Rng& rng, int n) {
  std::normal_distribution<double> g;
  std::vector<Complex> a(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& x : a) {
    x = {g(rng), g(rng)};
    norm += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(norm);
  return StateVector::from_amplitudes(std::move(a));
}

inline std::string random_letters(Rng& rng, int n, bool allow_identity = true) {
  static const char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::string s;
  do {
    s.clear();
    for (int q = 0; q < n; ++q) s += kLetters[uniform_int(rng, allow_identity ? 0 : 1, 3)];
  } while (s.find_first_not_of('I') == std::string::npos);
  return s;
}

inline PauliHamiltonian random_hamiltonian(Rng& rng, int n, int terms) {
  PauliHamiltonian h(n);
  while (static_cast<int>(h.terms().size()) < terms) h.add(uniform(rng, -1.5, 1.5), random_letters(rng, n));
  return h;
}

// Random op of any kind on random distinct qubits, with an optional control.
inline GateOp random_gate(Rng& rng, int n, bool allow_control) {
  const auto kind = static_cast<GateKind>(uniform_int(rng, 0, static_cast<int>(GateKind::kMsT4)));
  std::vector<int> qubits(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) qubits[static_cast<std::size_t>(q)] = q + 1;
  std::shuffle(qubits.begin(), qubits.end(), rng);
  int arity = is_two_qubit_kind(kind) ? 2 : 1;
  if (kind == GateKind::kMsT4) arity = std::min(n, uniform_int(rng, 2, 3));
  if ((kind == GateKind::kMsT2 || kind == GateKind::kMsT3) && n >= 2) arity = uniform_int(rng, 1, 2);
  GateOp op{kind, {}, {qubits.begin(), qubits.begin() + arity}, {}};
  for (int p = 0; p < gate_param_count(kind); ++p) op.params.push_back(uniform(rng, -kPi, kPi));
  if (allow_control && arity < n && uniform_int(rng, 0, 2) == 0) {
    op.controls.push_back(qubits[static_cast<std::size_t>(arity)]);
  }
  return op;
}

// --- Oracles built from explicit Kronecker products, independent of embed(). ---

inline Eigen::Matrix2cd pauli2(char letter) {
  Eigen::Matrix2cd m;
  switch (letter) {
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      m.setIdentity();
  }
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Eigen::MatrixXcd kron_string(const std::string& letters) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : letters) m = kron(m, pauli2(c));
  return m;
}

inline Eigen::MatrixXcd oracle_matrix(const PauliHamiltonian& h) {
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms()) m += t.coefficient * kron_string(t.letters);
  return m;
}

// exp(-i t H) for Hermitian H from its unitary eigenbasis.
inline Eigen::MatrixXcd oracle_expm(const Eigen::MatrixXcd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::MatrixXcd& v = es.eigenvectors();
  Eigen::VectorXcd phases(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) phases(k) = std::exp(Complex(0, -t * es.eigenvalues()(k)));
  return v * phases.asDiagonal() * v.adjoint();
}

inline Eigen::VectorXcd to_vector(const StateVector& s) {
  const auto a = s.amplitudes();
  return Eigen::Map<const Eigen::VectorXcd>(a.data(), static_cast<Eigen::Index>(a.size()));
}

inline double max_abs_diff(const StateVector& a, const Eigen::VectorXcd& b) {
  return (to_vector(a) - b).cwiseAbs().maxCoeff();
}

inline double phase_aligned_distance(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
  const Complex tr = (u.adjoint() * v).trace();
  const Complex ph = std::abs(tr) > 0 ? tr / std::abs(tr) : Complex(1.0);
  return (v - ph * u).cwiseAbs().maxCoeff();
}

}  // namespace qdsim::testing
