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

#include "qdsim/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

#include <fmt/format.h>

namespace qdsim {

namespace {

bool valid_letter(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

// Product of two single-site letters: returns the phase and writes the letter.
Complex letter_product(char a, char b, char& out) {
  if (a == 'I') {
    out = b;
    return 1.0;
  }
  if (b == 'I') {
    out = a;
    return 1.0;
  }
  if (a == b) {
    out = 'I';
    return 1.0;
  }
  // Cyclic X->Y->Z gives +i, anticyclic gives -i.
  const std::string_view cyc = "XYZ";
  const auto ia = cyc.find(a), ib = cyc.find(b);
  out = cyc[3 - ia - ib];
  return ((ib + 3 - ia) % 3 == 1) ? kI : -kI;
}

void check_same_size(const PauliString& a, const PauliString& b) {
  if (a.letters.size() != b.letters.size()) {
    throw InputError(fmt::format("Pauli strings of different length ({} vs {})",
                                 a.letters.size(), b.letters.size()));
  }
}

}  // namespace

PauliString::PauliString(Complex c, std::string l)
    : coefficient(c), letters(std::move(l)) {
  for (char& ch : letters) {
    ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (!valid_letter(ch)) {
      throw InputError(fmt::format("invalid Pauli letter '{}'", ch));
    }
  }
}

bool PauliString::is_identity() const {
  return std::all_of(letters.begin(), letters.end(), [](char c) { return c == 'I'; });
}

std::vector<int> PauliString::support() const {
  std::vector<int> s;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] != 'I') s.push_back(static_cast<int>(i) + 1);
  }
  return s;
}

int PauliString::weight() const { return static_cast<int>(support().size()); }

std::uint64_t PauliString::x_mask() const {
  std::uint64_t m = 0;
  const int n = n_qubits();
  for (int i = 0; i < n; ++i) {
    if (letters[i] == 'X' || letters[i] == 'Y') m |= std::uint64_t{1} << (n - 1 - i);
  }
  return m;
}

std::uint64_t PauliString::z_mask() const {
  std::uint64_t m = 0;
  const int n = n_qubits();
  for (int i = 0; i < n; ++i) {
    if (letters[i] == 'Z' || letters[i] == 'Y') m |= std::uint64_t{1} << (n - 1 - i);
  }
  return m;
}

int PauliString::y_count() const {
  return static_cast<int>(std::count(letters.begin(), letters.end(), 'Y'));
}

PauliString pauli_on(int n_qubits, const std::vector<std::pair<int, char>>& sites,
                     Complex coefficient) {
  std::string letters(static_cast<std::size_t>(n_qubits), 'I');
  for (const auto& [q, c] : sites) {
    if (q < 1 || q > n_qubits) throw InputError(fmt::format("qubit {} out of range", q));
    letters[q - 1] = c;
  }
  return PauliString(coefficient, letters);
}

bool commutes(const PauliString& a, const PauliString& b) {
  check_same_size(a, b);
  int clashes = 0;
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    const char x = a.letters[i], y = b.letters[i];
    if (x != 'I' && y != 'I' && x != y) ++clashes;
  }
  return clashes % 2 == 0;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  check_same_size(a, b);
  PauliString out;
  out.letters.resize(a.letters.size());
  Complex phase = a.coefficient * b.coefficient;
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    phase *= letter_product(a.letters[i], b.letters[i], out.letters[i]);
  }
  out.coefficient = phase;
  return out;
}

Eigen::MatrixXcd dense_matrix(const PauliString& p) {
  const int n = p.n_qubits();
  if (n > kMaxDenseQubits) {
    throw ResourceError(fmt::format("dense matrix limited to {} qubits", kMaxDenseQubits));
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t xm = p.x_mask(), zm = p.z_mask();
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex yphase = kIPow[p.y_count() & 3] * p.coefficient;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t col = 0; col < dim; ++col) {
    // Y = iXZ acting on |b>: Z first, then the flip.
    const double sign = (std::popcount(col & zm) & 1) ? -1.0 : 1.0;
    m(col ^ xm, col) = yphase * sign;
  }
  return m;
}

PauliHamiltonian::PauliHamiltonian(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw InputError("Hamiltonian needs at least one qubit");
}

void PauliHamiltonian::add(double coefficient, std::string_view letters) {
  add(PauliString(coefficient, std::string(letters)));
}

void PauliHamiltonian::add(const PauliString& term) {
  if (term.n_qubits() != n_qubits_) {
    throw InputError(fmt::format("term '{}' does not match register of {} qubits",
                                 term.letters, n_qubits_));
  }
  if (std::abs(term.coefficient.imag()) > 1e-12 * std::max(1.0, std::abs(term.coefficient))) {
    throw InputError(fmt::format("term '{}' has a non-real coefficient", term.letters));
  }
  const double c = term.coefficient.real();
  auto it = std::find_if(terms_.begin(), terms_.end(),
                         [&](const PauliString& t) { return t.letters == term.letters; });
  if (it != terms_.end()) {
    it->coefficient += c;
    if (it->coefficient == 0.0) terms_.erase(it);
    return;
  }
  if (c == 0.0) return;
  terms_.emplace_back(c, term.letters);
}

double PauliHamiltonian::gershgorin_bound() const {
  double s = 0.0;
  for (const auto& t : terms_) {
    if (!t.is_identity()) s += std::abs(t.coefficient);
  }
  return s;
}

double PauliHamiltonian::identity_offset() const {
  for (const auto& t : terms_) {
    if (t.is_identity()) return t.coefficient.real();
  }
  return 0.0;
}

double PauliHamiltonian::coupling_scale() const {
  double s = 0.0;
  for (const auto& t : terms_) {
    if (!t.is_identity()) s = std::max(s, std::abs(t.coefficient));
  }
  return s;
}

Eigen::MatrixXcd dense_matrix(const PauliHamiltonian& h) {
  if (h.n_qubits() > kMaxDenseQubits) {
    throw ResourceError(fmt::format("dense matrix limited to {} qubits", kMaxDenseQubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms()) m += dense_matrix(t);
  return m;
}

std::vector<PauliString> simplify(std::vector<PauliString> terms, double tol) {
  std::map<std::string, Complex> acc;
  std::vector<std::string> order;
  for (const auto& t : terms) {
    auto [it, inserted] = acc.try_emplace(t.letters, 0.0);
    if (inserted) order.push_back(t.letters);
    it->second += t.coefficient;
  }
  std::vector<PauliString> out;
  for (const auto& l : order) {
    const Complex c = acc[l];
    if (std::abs(c) > tol) out.emplace_back(c, l);
  }
  return out;
}

std::vector<PauliString> commutator(const std::vector<PauliString>& a,
                                    const std::vector<PauliString>& b) {
  std::vector<PauliString> out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (commutes(x, y)) continue;
      // Anticommuting strings: [x, y] = 2 x y.
      PauliString p = multiply(x, y);
      p.coefficient *= 2.0;
      out.push_back(std::move(p));
    }
  }
  return simplify(std::move(out));
}

PauliHamiltonian heisenberg_chain(int n, const std::vector<double>& couplings,
                                  double field) {
  if (n < 2) throw InputError("Heisenberg chain needs at least two spins");
  if (static_cast<int>(couplings.size()) != n - 1) {
    throw InputError(fmt::format("Heisenberg chain of {} spins needs {} couplings, got {}",
                                 n, n - 1, couplings.size()));
  }
  PauliHamiltonian h(n);
  for (int i = 1; i <= n; ++i) h.add(pauli_on(n, {{i, 'Z'}}, field / 2));
  for (int i = 1; i < n; ++i) {
    for (char a : {'X', 'Y', 'Z'}) h.add(pauli_on(n, {{i, a}, {i + 1, a}}, couplings[i - 1]));
  }
  return h;
}

PauliHamiltonian xyz_chain(int n, double jxx, double jyy, double jzz) {
  if (n < 2) throw InputError("XYZ chain needs at least two spins");
  PauliHamiltonian h(n);
  for (int i = 1; i < n; ++i) {
    h.add(pauli_on(n, {{i, 'X'}, {i + 1, 'X'}}, jxx));
    h.add(pauli_on(n, {{i, 'Y'}, {i + 1, 'Y'}}, jyy));
    h.add(pauli_on(n, {{i, 'Z'}, {i + 1, 'Z'}}, jzz));
  }
  return h;
}

PauliHamiltonian tim_chain(int n, const std::vector<double>& fields, double jzz) {
  if (n < 2) throw InputError("Ising chain needs at least two spins");
  if (static_cast<int>(fields.size()) != n) {
    throw InputError(fmt::format("Ising chain of {} spins needs {} fields, got {}", n, n,
                                 fields.size()));
  }
  PauliHamiltonian h(n);
  for (int i = 1; i <= n; ++i) h.add(pauli_on(n, {{i, 'X'}}, fields[i - 1]));
  for (int i = 1; i < n; ++i) h.add(pauli_on(n, {{i, 'Z'}, {i + 1, 'Z'}}, jzz));
  return h;
}

std::vector<std::vector<std::size_t>> disjoint_layers(const PauliHamiltonian& h) {
  struct Block {
    std::vector<int> support;
    std::vector<std::size_t> members;
  };
  const auto& terms = h.terms();
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto sup = terms[i].support();
    auto it = std::find_if(blocks.begin(), blocks.end(), [&](const Block& b) {
      return b.support == sup &&
             std::all_of(b.members.begin(), b.members.end(),
                         [&](std::size_t m) { return commutes(terms[m], terms[i]); });
    });
    if (it != blocks.end()) {
      it->members.push_back(i);
    } else {
      blocks.push_back({sup, {i}});
    }
  }

  std::vector<std::vector<std::size_t>> layers;
  std::vector<std::vector<bool>> used;
  for (const auto& b : blocks) {
    std::size_t target = layers.size();
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const bool clash = std::any_of(b.support.begin(), b.support.end(),
                                     [&](int q) { return used[l][q]; });
      if (!clash) {
        target = l;
        break;
      }
    }
    if (target == layers.size()) {
      layers.emplace_back();
      used.emplace_back(static_cast<std::size_t>(h.n_qubits()) + 1, false);
    }
    layers[target].insert(layers[target].end(), b.members.begin(), b.members.end());
    for (int q : b.support) used[target][q] = true;
  }
  return layers;
}

PauliHamiltonian parse_hamiltonian(std::istream& in) {
  std::vector<std::pair<double, std::string>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string coef_text, letters, extra;
    if (!(ls >> coef_text)) continue;
    if (!(ls >> letters) || (ls >> extra)) {
      throw InputError(fmt::format("line {}: expected `coef LETTERS`", line_no));
    }
    double coef = 0.0;
    try {
      std::size_t used = 0;
      coef = std::stod(coef_text, &used);
      if (used != coef_text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InputError(fmt::format("line {}: bad coefficient '{}'", line_no, coef_text));
    }
    rows.emplace_back(coef, letters);
  }
  if (rows.empty()) throw InputError("Hamiltonian file has no terms");
  PauliHamiltonian h(static_cast<int>(rows.front().second.size()));
  for (const auto& [c, l] : rows) h.add(c, l);
  return h;
}

std::string format_hamiltonian(const PauliHamiltonian& h) {
  std::string out;
  for (const auto& t : h.terms()) {
    out += fmt::format("{:.17g} {}\n", t.coefficient.real(), t.letters);
  }
  return out;
}

}  // namespace qdsim
