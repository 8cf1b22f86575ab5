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

#include "qdsim/gates.hpp"

#include <array>
#include <cmath>
#include <set>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

namespace qdsim {

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  int params;
  int arity;  // 0 means "one or more"
};

constexpr std::array<KindInfo, 17> kKinds = {{
    {GateKind::kU3, "U3", 3, 1},
    {GateKind::kH, "H", 0, 1},
    {GateKind::kPhase, "PHASE", 1, 1},
    {GateKind::kRx, "RX", 1, 1},
    {GateKind::kRy, "RY", 1, 1},
    {GateKind::kRz, "RZ", 1, 1},
    {GateKind::kX, "X", 0, 1},
    {GateKind::kCnot, "CNOT", 0, 2},
    {GateKind::kCPhase, "CPHASE", 1, 2},
    {GateKind::kZZ, "ZZ", 1, 2},
    {GateKind::kXX, "XX", 1, 2},
    {GateKind::kYY, "YY", 1, 2},
    {GateKind::kUxy, "UXY", 1, 2},
    {GateKind::kMsT1, "MS_T1", 1, 1},
    {GateKind::kMsT2, "MS_T2", 1, 0},
    {GateKind::kMsT3, "MS_T3", 2, 0},
    {GateKind::kMsT4, "MS_T4", 2, 0},
}};

const KindInfo& info(GateKind kind) {
  return kKinds[static_cast<std::size_t>(kind)];
}

DenseUnitary pauli_exp(const DenseUnitary& p, double delta) {
  // exp(-i delta P) for an involutory P.
  const auto id = DenseUnitary::Identity(p.rows(), p.cols());
  return std::cos(delta) * id - kI * std::sin(delta) * p;
}

DenseUnitary kron(const DenseUnitary& a, const DenseUnitary& b) {
  DenseUnitary out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DenseUnitary sigma_phi(double phi) {
  return std::cos(phi) * pauli_matrix(Axis::kX) + std::sin(phi) * pauli_matrix(Axis::kY);
}

// Single-site operator `op` at position `site` (0-based) of a k-site product.
DenseUnitary site_operator(const DenseUnitary& op, int site, int k) {
  DenseUnitary out = DenseUnitary::Identity(1, 1);
  for (int s = 0; s < k; ++s) {
    out = kron(out, s == site ? op : DenseUnitary::Identity(2, 2));
  }
  return out;
}

}  // namespace

char axis_letter(Axis a) {
  switch (a) {
    case Axis::kX:
      return 'X';
    case Axis::kY:
      return 'Y';
    case Axis::kZ:
      return 'Z';
  }
  return '?';
}

Axis axis_from_letter(char c) {
  switch (c) {
    case 'x':
    case 'X':
      return Axis::kX;
    case 'y':
    case 'Y':
      return Axis::kY;
    case 'z':
    case 'Z':
      return Axis::kZ;
    default:
      throw InputError(fmt::format("invalid axis '{}'", c));
  }
}

std::string_view gate_name(GateKind kind) { return info(kind).name; }

GateKind gate_kind_from_name(std::string_view name) {
  for (const auto& k : kKinds) {
    if (k.name == name) return k.kind;
  }
  throw InputError(fmt::format("unknown gate '{}'", name));
}

int gate_param_count(GateKind kind) { return info(kind).params; }

bool is_two_qubit_kind(GateKind kind) { return info(kind).arity == 2; }

void GateOp::validate() const {
  const auto& k = info(kind);
  if (static_cast<int>(params.size()) != k.params) {
    throw InputError(fmt::format("{} takes {} parameter(s), got {}", k.name,
                                 k.params, params.size()));
  }
  if (k.arity > 0 && static_cast<int>(targets.size()) != k.arity) {
    throw InputError(fmt::format("{} acts on {} qubit(s), got {}", k.name,
                                 k.arity, targets.size()));
  }
  if (targets.empty()) throw InputError(fmt::format("{} needs targets", k.name));
  if (kind == GateKind::kMsT4 && targets.size() < 2) {
    throw InputError("MS_T4 needs at least two targets");
  }
  std::set<int> seen;
  for (int q : targets) {
    if (!seen.insert(q).second) {
      throw InputError(fmt::format("{}: duplicate target qubit {}", k.name, q));
    }
  }
  for (int q : controls) {
    if (!seen.insert(q).second) {
      throw InputError(fmt::format("{}: control {} overlaps a target or control",
                                   k.name, q));
    }
  }
}

GateOp make_gate(GateKind kind, std::vector<int> targets, std::vector<double> params) {
  GateOp op{kind, std::move(params), std::move(targets), {}};
  op.validate();
  return op;
}

GateOp inverse(const GateOp& op) {
  GateOp inv = op;
  switch (op.kind) {
    case GateKind::kH:
    case GateKind::kX:
    case GateKind::kCnot:
      break;
    case GateKind::kU3:
      inv.params = {-op.params[0], -op.params[2], -op.params[1]};
      break;
    case GateKind::kMsT3:
    case GateKind::kMsT4:
      inv.params[0] = -op.params[0];
      break;
    default:
      inv.params[0] = -op.params[0];
      break;
  }
  return inv;
}

DenseUnitary u3(double theta, double phi, double lambda) {
  DenseUnitary m(2, 2);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m(0, 0) = c;
  m(0, 1) = -std::polar(1.0, lambda) * s;
  m(1, 0) = std::polar(1.0, phi) * s;
  m(1, 1) = std::polar(1.0, lambda + phi) * c;
  return m;
}

DenseUnitary hadamard() {
  DenseUnitary m(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  m << r, r, r, -r;
  return m;
}

DenseUnitary phase_gate(double delta) {
  DenseUnitary m = DenseUnitary::Identity(2, 2);
  m(1, 1) = std::polar(1.0, delta);
  return m;
}

DenseUnitary pauli_matrix(Axis axis) {
  DenseUnitary m = DenseUnitary::Zero(2, 2);
  switch (axis) {
    case Axis::kX:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Axis::kY:
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    case Axis::kZ:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
  }
  return m;
}

DenseUnitary pauli_x() { return pauli_matrix(Axis::kX); }

DenseUnitary rotation(Axis axis, double theta) {
  return pauli_exp(pauli_matrix(axis), theta / 2);
}

DenseUnitary named_single_qubit(GateKind kind, const std::vector<double>& params) {
  if (static_cast<int>(params.size()) != gate_param_count(kind)) {
    throw InputError(fmt::format("{} takes {} parameter(s), got {}", gate_name(kind),
                                 gate_param_count(kind), params.size()));
  }
  switch (kind) {
    case GateKind::kU3:
      return u3(params[0], params[1], params[2]);
    case GateKind::kH:
      return hadamard();
    case GateKind::kPhase:
      return phase_gate(params[0]);
    case GateKind::kRx:
      return rotation(Axis::kX, params[0]);
    case GateKind::kRy:
      return rotation(Axis::kY, params[0]);
    case GateKind::kRz:
      return rotation(Axis::kZ, params[0]);
    case GateKind::kX:
      return pauli_x();
    case GateKind::kMsT1:
      return ms_gate(MsKind::kT1, params[0], 0.0, 1);
    default:
      throw InputError(fmt::format("{} is not a single-qubit gate", gate_name(kind)));
  }
}

DenseUnitary cnot() {
  DenseUnitary m = DenseUnitary::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return m;
}

DenseUnitary cphase(double delta) {
  DenseUnitary m = DenseUnitary::Identity(4, 4);
  m(3, 3) = std::polar(1.0, delta);
  return m;
}

DenseUnitary uxy(double delta) {
  DenseUnitary m = DenseUnitary::Identity(4, 4);
  m(1, 1) = std::cos(2 * delta);
  m(2, 2) = std::cos(2 * delta);
  m(1, 2) = -kI * std::sin(2 * delta);
  m(2, 1) = -kI * std::sin(2 * delta);
  return m;
}

DenseUnitary pauli_pair_exponential(Axis a, Axis b, double delta) {
  return pauli_exp(kron(pauli_matrix(a), pauli_matrix(b)), delta);
}

DenseUnitary ms_gate(MsKind kind, double theta, double phi, int target_count) {
  if (target_count < 1) throw InputError("MS gate needs at least one target");
  switch (kind) {
    case MsKind::kT1:
      if (target_count != 1) throw InputError("MS_T1 addresses exactly one qubit");
      return pauli_exp(pauli_matrix(Axis::kZ), theta);
    case MsKind::kT2:
    case MsKind::kT3: {
      // Sum of commuting single-site terms: the exponential factorises.
      const DenseUnitary single = kind == MsKind::kT2
                                      ? pauli_exp(pauli_matrix(Axis::kZ), theta)
                                      : pauli_exp(sigma_phi(phi), theta);
      DenseUnitary out = DenseUnitary::Identity(1, 1);
      for (int s = 0; s < target_count; ++s) out = kron(out, single);
      return out;
    }
    case MsKind::kT4: {
      if (target_count < 2) throw InputError("MS_T4 needs at least two targets");
      const Eigen::Index dim = Eigen::Index{1} << target_count;
      const DenseUnitary sp = sigma_phi(phi);
      Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(dim, dim);
      std::vector<DenseUnitary> sites;
      for (int s = 0; s < target_count; ++s) sites.push_back(site_operator(sp, s, target_count));
      for (int i = 0; i < target_count; ++i) {
        for (int j = i + 1; j < target_count; ++j) gen += sites[i] * sites[j];
      }
      return expm_hermitian(gen, theta);
    }
  }
  throw InputError("unknown MS gate kind");
}

DenseUnitary ms_gate(MsKind kind, double theta, double phi,
                     const std::vector<int>& targets, int n_qubits) {
  return embed(ms_gate(kind, theta, phi, static_cast<int>(targets.size())), targets,
               n_qubits);
}

DenseUnitary expm_hermitian(const Eigen::MatrixXcd& h, double scale) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigendecomposition failed");
  }
  const Eigen::VectorXcd phases =
      (-kI * scale * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

DenseUnitary gate_matrix(const GateOp& op) {
  op.validate();
  const auto& p = op.params;
  const int k = static_cast<int>(op.targets.size());
  switch (op.kind) {
    case GateKind::kCnot:
      return cnot();
    case GateKind::kCPhase:
      return cphase(p[0]);
    case GateKind::kZZ:
      return pauli_pair_exponential(Axis::kZ, Axis::kZ, p[0]);
    case GateKind::kXX:
      return pauli_pair_exponential(Axis::kX, Axis::kX, p[0]);
    case GateKind::kYY:
      return pauli_pair_exponential(Axis::kY, Axis::kY, p[0]);
    case GateKind::kUxy:
      return uxy(p[0]);
    case GateKind::kMsT1:
      return ms_gate(MsKind::kT1, p[0], 0.0, 1);
    case GateKind::kMsT2:
      return ms_gate(MsKind::kT2, p[0], 0.0, k);
    case GateKind::kMsT3:
      return ms_gate(MsKind::kT3, p[0], p[1], k);
    case GateKind::kMsT4:
      return ms_gate(MsKind::kT4, p[0], p[1], k);
    default:
      return named_single_qubit(op.kind, p);
  }
}

DenseUnitary embed(const DenseUnitary& local, const std::vector<int>& targets,
                   int n_qubits, const std::vector<int>& controls) {
  const int k = static_cast<int>(targets.size());
  if (local.rows() != (Eigen::Index{1} << k)) {
    throw InputError("local matrix size does not match target count");
  }
  if (n_qubits > kMaxDenseQubits) {
    throw ResourceError(fmt::format("dense embedding limited to {} qubits",
                                    kMaxDenseQubits));
  }
  for (int q : targets) {
    if (q < 1 || q > n_qubits) throw InputError(fmt::format("qubit {} out of range", q));
  }
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  auto bit_of = [n_qubits](int q) { return std::uint64_t{1} << (n_qubits - q); };
  std::uint64_t target_mask = 0, control_mask = 0;
  for (int q : targets) target_mask |= bit_of(q);
  for (int q : controls) control_mask |= bit_of(q);

  DenseUnitary out = DenseUnitary::Zero(dim, dim);
  for (std::uint64_t col = 0; col < dim; ++col) {
    if ((col & control_mask) != control_mask) {
      out(col, col) = 1.0;
      continue;
    }
    std::uint64_t local_col = 0;
    for (int r = 0; r < k; ++r) {
      local_col = (local_col << 1) | ((col & bit_of(targets[r])) ? 1U : 0U);
    }
    const std::uint64_t rest = col & ~target_mask;
    for (std::uint64_t local_row = 0; local_row < (std::uint64_t{1} << k); ++local_row) {
      std::uint64_t row = rest;
      for (int r = 0; r < k; ++r) {
        if ((local_row >> (k - 1 - r)) & 1U) row |= bit_of(targets[r]);
      }
      out(row, col) = local(local_row, local_col);
    }
  }
  return out;
}

bool is_unitary(const DenseUnitary& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const DenseUnitary prod = u.adjoint() * u;
  return (prod - DenseUnitary::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace qdsim
