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


#include "qdsim/fermion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace qdsim {

FermionHamiltonian::FermionHamiltonian(int n_modes) : n_modes_(n_modes) {
  if (n_modes < 1) throw InputError("fermion Hamiltonian needs at least one mode");
  if (n_modes > 62) throw ResourceError("at most 62 fermionic modes are supported");
}

void FermionHamiltonian::add(double coefficient, std::vector<LadderOp> ops) {
  if (ops.empty()) throw InputError("fermion term needs at least one ladder operator");
  for (const auto& op : ops) {
    if (op.mode < 1 || op.mode > n_modes_) {
      throw InputError(fmt::format("mode {} outside 1..{}", op.mode, n_modes_));
    }
  }
  if (coefficient != 0.0) terms_.push_back({coefficient, std::move(ops)});
}

void FermionHamiltonian::add_with_conjugate(double coefficient, const std::vector<LadderOp>& ops) {
  std::vector<LadderOp> adjoint(ops.rbegin(), ops.rend());
  for (auto& op : adjoint) op.dagger = !op.dagger;
  add(coefficient, ops);
  add(coefficient, std::move(adjoint));
}

int hubbard_mode(int site, Spin spin) {
  if (site != 1 && site != 2) throw InputError(fmt::format("Hubbard site {} not in {{1, 2}}", site));
  if (spin == Spin::kUp) return site == 2 ? 1 : 2;
  return site == 1 ? 3 : 4;
}

FermionHamiltonian hubbard_2site(double v, double u) {
  FermionHamiltonian fh(4);
  const int u1 = hubbard_mode(1, Spin::kUp), u2 = hubbard_mode(2, Spin::kUp);
  const int d1 = hubbard_mode(1, Spin::kDown), d2 = hubbard_mode(2, Spin::kDown);
  if (v != 0.0) {
    fh.add_with_conjugate(-v, {create(d1), annihilate(d2)});
    fh.add_with_conjugate(-v, {create(u1), annihilate(u2)});
  }
  if (u != 0.0) {
    fh.add(u, {create(d1), annihilate(d1), create(u1), annihilate(u1)});
    fh.add(u, {create(d2), annihilate(d2), create(u2), annihilate(u2)});
  }
  return fh;
}

namespace {

std::vector<int> resolve_order(const JwOptions& options, int n_modes) {
  if (options.mode_order.empty()) {
    std::vector<int> id(static_cast<std::size_t>(n_modes));
    std::iota(id.begin(), id.end(), 1);
    return id;
  }
  if (static_cast<int>(options.mode_order.size()) != n_modes) {
    throw InputError(fmt::format("mode order has {} entries for {} modes",
                                 options.mode_order.size(), n_modes));
  }
  std::vector<int> sorted = options.mode_order;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < n_modes; ++k) {
    if (sorted[static_cast<std::size_t>(k)] != k + 1) {
      throw InputError("mode order is not a permutation of 1..n");
    }
  }
  return options.mode_order;
}

std::vector<PauliString> ladder_on_qubit(bool dagger, int qubit, int n, int tail_sign) {
  std::string base(static_cast<std::size_t>(n), 'I');
  for (int q = qubit + 1; q <= n; ++q) base[static_cast<std::size_t>(q - 1)] = 'Z';
  const double sign = std::pow(static_cast<double>(tail_sign), n - qubit);
  std::string x = base, y = base;
  x[static_cast<std::size_t>(qubit - 1)] = 'X';
  y[static_cast<std::size_t>(qubit - 1)] = 'Y';
  // sigma_+ = |0><1| = (X + iY)/2, sigma_- = (X - iY)/2
  const Complex ycoef = dagger ? Complex(0.0, 0.5) : Complex(0.0, -0.5);
  return {PauliString(0.5 * sign, x), PauliString(ycoef * sign, y)};
}

std::vector<PauliString> multiply_sums(const std::vector<PauliString>& a,
                                       const std::vector<PauliString>& b) {
  std::vector<PauliString> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(multiply(x, y));
  }
  return simplify(std::move(out));
}

}  // namespace

std::vector<PauliString> jw_ladder(LadderOp op, int n_modes, const JwOptions& options) {
  if (options.tail_sign != 1 && options.tail_sign != -1) {
    throw InputError("parity string sign must be +1 or -1");
  }
  if (op.mode < 1 || op.mode > n_modes) {
    throw InputError(fmt::format("mode {} outside 1..{}", op.mode, n_modes));
  }
  const auto order = resolve_order(options, n_modes);
  return ladder_on_qubit(op.dagger, order[static_cast<std::size_t>(op.mode - 1)], n_modes,
                         options.tail_sign);
}

PauliHamiltonian jordan_wigner(const FermionHamiltonian& fh, const JwOptions& options) {
  const int n = fh.n_modes();
  std::vector<PauliString> total;
  for (const auto& term : fh.terms()) {
    std::vector<PauliString> product{PauliString(term.coefficient, std::string(n, 'I'))};
    for (const auto& op : term.ops) product = multiply_sums(product, jw_ladder(op, n, options));
    total.insert(total.end(), product.begin(), product.end());
  }
  total = simplify(std::move(total), 1e-14);
  PauliHamiltonian h(n);
  for (const auto& p : total) {
    if (std::abs(p.coefficient.imag()) > 1e-12) {
      throw InputError(fmt::format("fermion operator is not Hermitian: term {} has weight {}{:+}i",
                                   p.letters, p.coefficient.real(), p.coefficient.imag()));
    }
    h.add(p.coefficient.real(), p.letters);
  }
  return h;
}

Eigen::MatrixXcd dense_matrix(const std::vector<PauliString>& sum, int n_qubits) {
  if (n_qubits > kMaxDenseQubits) throw ResourceError("dense matrix register too large");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& p : sum) {
    if (p.n_qubits() != n_qubits) throw InputError("Pauli string size mismatch");
    m += dense_matrix(p);
  }
  return m;
}

}  // namespace qdsim
