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

#include "qdsim/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

namespace qdsim {

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw InputError("circuit needs at least one qubit");
}

void Circuit::add(GateOp op) {
  op.validate();
  for (const auto* list : {&op.targets, &op.controls}) {
    for (int q : *list) {
      if (q < 1 || q > n_qubits_) {
        throw InputError(fmt::format("{}: qubit {} outside register of {} qubits",
                                     gate_name(op.kind), q, n_qubits_));
      }
    }
  }
  ops_.push_back(std::move(op));
}

void Circuit::add(GateKind kind, std::vector<int> targets, std::vector<double> params) {
  add(GateOp{kind, std::move(params), std::move(targets), {}});
}

void Circuit::append(const Circuit& other) {
  if (other.n_qubits_ > n_qubits_) {
    throw InputError("appended circuit is wider than the register");
  }
  for (const auto& op : other.ops_) add(op);
  global_phase_ += other.global_phase_;
}

Circuit Circuit::inverse() const {
  Circuit inv(n_qubits_);
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) inv.ops_.push_back(qdsim::inverse(*it));
  inv.global_phase_ = -global_phase_;
  return inv;
}

std::size_t Circuit::count(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(ops_.begin(), ops_.end(), [kind](const GateOp& op) { return op.kind == kind; }));
}

std::size_t Circuit::multi_qubit_gate_count() const {
  return static_cast<std::size_t>(std::count_if(
      ops_.begin(), ops_.end(), [](const GateOp& op) { return op.targets.size() >= 2; }));
}

Circuit controlled(const Circuit& c, int control, int n_qubits) {
  if (n_qubits < c.n_qubits()) throw InputError("controlled register is too small");
  Circuit out(n_qubits);
  for (GateOp op : c.ops()) {
    op.controls.push_back(control);
    out.add(std::move(op));
  }
  if (c.global_phase() != 0.0) out.add(GateKind::kPhase, {control}, {c.global_phase()});
  return out;
}

void multiply_phase(StateVector& state, double phase) {
  if (phase == 0.0) return;
  // A diagonal phase on every basis state, expressed through an identity-controlled gate.
  const DenseUnitary m = std::polar(1.0, phase) * DenseUnitary::Identity(2, 2);
  state.apply_matrix(m, {1});
}

void run(const Circuit& c, StateVector& state) {
  if (c.n_qubits() != state.n_qubits()) {
    throw InputError(fmt::format("{}-qubit circuit on a {}-qubit state", c.n_qubits(),
                                 state.n_qubits()));
  }
  for (const auto& op : c.ops()) state.apply(op);
  multiply_phase(state, c.global_phase());
}

std::string_view gate_set_name(GateSet set) {
  switch (set) {
    case GateSet::kS1:
      return "S1";
    case GateSet::kS2:
      return "S2";
    case GateSet::kS3:
      return "S3";
    case GateSet::kS4:
      return "S4";
  }
  return "?";
}

GateSet gate_set_from_name(std::string_view name) {
  for (GateSet s : {GateSet::kS1, GateSet::kS2, GateSet::kS3, GateSet::kS4}) {
    if (gate_set_name(s) == name) return s;
  }
  throw InputError(fmt::format("unknown gate set '{}' (expected S1, S2, S3 or S4)", name));
}

bool in_gate_set(const GateOp& op, GateSet set) {
  if (!op.controls.empty()) return false;
  const bool rotation =
      op.kind == GateKind::kRx || op.kind == GateKind::kRy || op.kind == GateKind::kRz;
  switch (set) {
    case GateSet::kS1:
      return rotation || op.kind == GateKind::kCnot;
    case GateSet::kS2:
      return rotation || op.kind == GateKind::kUxy;
    case GateSet::kS3:
      return rotation || op.kind == GateKind::kCPhase;
    case GateSet::kS4:
      return op.kind == GateKind::kMsT1 || op.kind == GateKind::kMsT2 ||
             op.kind == GateKind::kMsT3 || op.kind == GateKind::kMsT4;
  }
  return false;
}

namespace {

// Rotation exp(-i theta/2 sigma_axis) in the native vocabulary of `set`.
void add_rotation(Circuit& c, Axis axis, double theta, int q, GateSet set) {
  if (set != GateSet::kS4) {
    const GateKind k = axis == Axis::kX   ? GateKind::kRx
                       : axis == Axis::kY ? GateKind::kRy
                                          : GateKind::kRz;
    c.add(k, {q}, {theta});
    return;
  }
  switch (axis) {
    case Axis::kZ:
      c.add(GateKind::kMsT1, {q}, {theta / 2});
      break;
    case Axis::kX:
      c.add(GateKind::kMsT3, {q}, {theta / 2, 0.0});
      break;
    case Axis::kY:
      c.add(GateKind::kMsT3, {q}, {theta / 2, kPi / 2});
      break;
  }
}

// Basis change F with F sigma_ref F^dag = sigma_axis, as (axis of rotation, angle).
// `reference` is Z for CNOT/CPHASE cores and X for Uxy/MS cores.
struct FrameRotation {
  bool needed = false;
  Axis axis = Axis::kZ;
  double angle = 0.0;
};

FrameRotation frame_from_z(Axis target) {
  switch (target) {
    case Axis::kZ:
      return {};
    case Axis::kX:
      return {true, Axis::kY, kPi / 2};  // Ry(pi/2) Z Ry(-pi/2) = X
    case Axis::kY:
      return {true, Axis::kX, -kPi / 2};  // Rx(-pi/2) Z Rx(pi/2) = Y
  }
  return {};
}

FrameRotation frame_from_x(Axis target) {
  switch (target) {
    case Axis::kX:
      return {};
    case Axis::kY:
      return {true, Axis::kZ, kPi / 2};  // Rz(pi/2) X Rz(-pi/2) = Y
    case Axis::kZ:
      return {true, Axis::kY, -kPi / 2};  // Ry(-pi/2) X Ry(pi/2) = Z
  }
  return {};
}

void add_frame_in(Circuit& c, const FrameRotation& f, int q, GateSet set) {
  if (f.needed) add_rotation(c, f.axis, -f.angle, q, set);
}

void add_frame_out(Circuit& c, const FrameRotation& f, int q, GateSet set) {
  if (f.needed) add_rotation(c, f.axis, f.angle, q, set);
}

// exp(+i gamma ZZ) = e^{-i gamma} CPHASE(4 gamma) Rz_i(-2 gamma) Rz_j(-2 gamma).
void add_plain_cphase_core(Circuit& c, double gamma_plus, int i, int j) {
  c.add(GateKind::kRz, {i}, {-2 * gamma_plus});
  c.add(GateKind::kRz, {j}, {-2 * gamma_plus});
  c.add(GateKind::kCPhase, {i, j}, {4 * gamma_plus});
  c.add_phase(-gamma_plus);
}

void check_pair(int i, int j, int n_qubits) {
  if (i == j) throw InputError("pair exponential needs two distinct qubits");
  for (int q : {i, j}) {
    if (q < 1 || q > n_qubits) throw InputError(fmt::format("qubit {} out of range", q));
  }
}

}  // namespace

Circuit zz_single_cphase(double delta, int i, int j, int n_qubits) {
  check_pair(i, j, n_qubits);
  // X_i exp(+i delta ZZ) X_i = exp(-i delta ZZ); Rx(pi) M Rx(-pi) = X M X.
  Circuit c(n_qubits);
  c.add(GateKind::kRx, {i}, {-kPi});
  add_plain_cphase_core(c, delta, i, j);
  c.add(GateKind::kRx, {i}, {kPi});
  return c;
}

Circuit zz_two_cphase(double delta, int i, int j, int n_qubits, double min_cphase) {
  check_pair(i, j, n_qubits);
  const double floor = std::max(0.0, min_cphase);
  // ZZ(delta) = ZZ(g1) ZZ(g2); g1 through the X-conjugated core (phase 4 g1),
  // g2 directly (phase -4 g2). Both phases end up >= floor.
  const double shift = std::abs(delta) / 2 + floor / 4;
  const double g1 = delta / 2 + shift;
  const double g2 = delta / 2 - shift;
  Circuit c = zz_single_cphase(g1, i, j, n_qubits);
  add_plain_cphase_core(c, -g2, i, j);
  return c;
}

Circuit single_qubit_exponential(Axis axis, double delta, int q, GateSet set, int n_qubits) {
  if (q < 1 || q > n_qubits) throw InputError(fmt::format("qubit {} out of range", q));
  Circuit c(n_qubits);
  add_rotation(c, axis, 2 * delta, q, set);
  return c;
}

Circuit decompose_pauli_pair(Axis a, Axis b, double delta, int i, int j, GateSet set,
                             int n_qubits, const CompileOptions& options) {
  check_pair(i, j, n_qubits);
  Circuit c(n_qubits);
  switch (set) {
    case GateSet::kS1:
    case GateSet::kS3: {
      const auto fa = frame_from_z(a), fb = frame_from_z(b);
      add_frame_in(c, fa, i, set);
      add_frame_in(c, fb, j, set);
      if (set == GateSet::kS1) {
        c.add(GateKind::kCnot, {i, j});
        c.add(GateKind::kRz, {j}, {2 * delta});
        c.add(GateKind::kCnot, {i, j});
      } else {
        const double floor = std::max(0.0, options.min_cphase);
        const bool single = delta >= 0.0 && 4 * delta >= floor;
        c.append(single ? zz_single_cphase(delta, i, j, n_qubits)
                        : zz_two_cphase(delta, i, j, n_qubits, floor));
      }
      add_frame_out(c, fa, i, set);
      add_frame_out(c, fb, j, set);
      break;
    }
    case GateSet::kS2:
    case GateSet::kS4: {
      const auto fa = frame_from_x(a), fb = frame_from_x(b);
      add_frame_in(c, fa, i, set);
      add_frame_in(c, fb, j, set);
      if (set == GateSet::kS2) {
        // XX(d) = Uxy(d/2) X_j Uxy(d/2) X_j, since X_j (XX + YY) X_j = XX - YY.
        c.add(GateKind::kRx, {j}, {-kPi});
        c.add(GateKind::kUxy, {i, j}, {delta / 2});
        c.add(GateKind::kRx, {j}, {kPi});
        c.add(GateKind::kUxy, {i, j}, {delta / 2});
      } else {
        c.add(GateKind::kMsT4, {i, j}, {delta, 0.0});
      }
      add_frame_out(c, fa, i, set);
      add_frame_out(c, fb, j, set);
      break;
    }
  }
  return c;
}

Circuit lowered_cnot(int control, int target, GateSet set, int n_qubits) {
  check_pair(control, target, n_qubits);
  Circuit c(n_qubits);
  if (set == GateSet::kS1) {
    c.add(GateKind::kCnot, {control, target});
    return c;
  }
  // CNOT = exp(i pi/4 (I - Z_c)(I - X_t)) = e^{i pi/4} Rz_c(pi/2) Rx_t(pi/2) exp(+i pi/4 Z_c X_t)
  add_rotation(c, Axis::kZ, kPi / 2, control, set);
  add_rotation(c, Axis::kX, kPi / 2, target, set);
  c.append(decompose_pauli_pair(Axis::kZ, Axis::kX, -kPi / 4, control, target, set, n_qubits));
  c.add_phase(kPi / 4);
  return c;
}

Circuit decompose_multi_pauli(const std::vector<Axis>& axes, double delta,
                              const std::vector<int>& qubits, GateSet set, int n_qubits) {
  if (qubits.size() < 3) {
    throw InputError("multi-qubit exponential needs at least three qubits; use "
                     "decompose_pauli_pair for two");
  }
  if (axes.size() != qubits.size()) throw InputError("axes and qubits differ in length");
  std::vector<int> sorted = qubits;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("repeated qubit in multi-qubit exponential");
  }
  Circuit c(n_qubits);
  const std::size_t k = qubits.size();
  std::vector<FrameRotation> frames;
  for (std::size_t r = 0; r < k; ++r) {
    frames.push_back(frame_from_z(axes[r]));
    add_frame_in(c, frames.back(), qubits[r], set);
  }
  for (std::size_t r = 0; r + 1 < k; ++r) c.append(lowered_cnot(qubits[r], qubits[r + 1], set, n_qubits));
  add_rotation(c, Axis::kZ, 2 * delta, qubits.back(), set);
  for (std::size_t r = k - 1; r-- > 0;) c.append(lowered_cnot(qubits[r], qubits[r + 1], set, n_qubits));
  for (std::size_t r = 0; r < k; ++r) add_frame_out(c, frames[r], qubits[r], set);
  return c;
}

std::string_view heisenberg_variant_name(HeisenbergVariant v) {
  switch (v) {
    case HeisenbergVariant::kSixCnot:
      return "6cnot";
    case HeisenbergVariant::kThreeCnot:
      return "3cnot";
    case HeisenbergVariant::kThreeUxy:
      return "3uxy";
    case HeisenbergVariant::kThreeCPhase:
      return "3cphase";
    case HeisenbergVariant::kS4:
      return "s4";
  }
  return "?";
}

HeisenbergVariant heisenberg_variant_from_name(std::string_view name) {
  for (auto v : {HeisenbergVariant::kSixCnot, HeisenbergVariant::kThreeCnot,
                 HeisenbergVariant::kThreeUxy, HeisenbergVariant::kThreeCPhase,
                 HeisenbergVariant::kS4}) {
    if (heisenberg_variant_name(v) == name) return v;
  }
  throw InputError(fmt::format("unknown Heisenberg variant '{}'", name));
}

Circuit heisenberg2_circuit(double delta, int i, int j, HeisenbergVariant variant,
                            int n_qubits) {
  check_pair(i, j, n_qubits);
  Circuit c(n_qubits);
  switch (variant) {
    case HeisenbergVariant::kSixCnot:
    case HeisenbergVariant::kThreeCPhase: {
      const GateSet set =
          variant == HeisenbergVariant::kSixCnot ? GateSet::kS1 : GateSet::kS3;
      for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
        c.append(decompose_pauli_pair(a, a, delta, i, j, set, n_qubits));
      }
      break;
    }
    case HeisenbergVariant::kThreeCnot:
      // Canonical three-CNOT form of exp(i(a XX + b YY + c ZZ)) with a = b = c = -delta.
      c.add(GateKind::kRz, {j}, {-kPi / 2});
      c.add(GateKind::kCnot, {j, i});
      c.add(GateKind::kRz, {i}, {-kPi / 2 + 2 * delta});
      c.add(GateKind::kRy, {j}, {kPi / 2 - 2 * delta});
      c.add(GateKind::kCnot, {i, j});
      c.add(GateKind::kRy, {j}, {-kPi / 2 + 2 * delta});
      c.add(GateKind::kCnot, {j, i});
      c.add(GateKind::kRz, {i}, {kPi / 2});
      c.add_phase(-kPi / 4);
      break;
    case HeisenbergVariant::kThreeUxy: {
      // XX+YY+ZZ = ((XX+YY) + (XX+ZZ) + (ZZ+YY)) / 2, three commuting pieces.
      c.add(GateKind::kUxy, {i, j}, {delta / 2});
      for (int q : {i, j}) c.add(GateKind::kRx, {q}, {-kPi / 2});
      c.add(GateKind::kUxy, {i, j}, {delta / 2});
      for (int q : {i, j}) c.add(GateKind::kRx, {q}, {kPi / 2});
      for (int q : {i, j}) c.add(GateKind::kRy, {q}, {kPi / 2});
      c.add(GateKind::kUxy, {i, j}, {delta / 2});
      for (int q : {i, j}) c.add(GateKind::kRy, {q}, {-kPi / 2});
      break;
    }
    case HeisenbergVariant::kS4:
      // A B C A C^dag with A = T4(d, 0), B = T4(d, pi/2), C = T3(pi/4, pi/2);
      // listed in temporal order.
      c.add(GateKind::kMsT3, {i, j}, {-kPi / 4, kPi / 2});
      c.add(GateKind::kMsT4, {i, j}, {delta, 0.0});
      c.add(GateKind::kMsT3, {i, j}, {kPi / 4, kPi / 2});
      c.add(GateKind::kMsT4, {i, j}, {delta, kPi / 2});
      c.add(GateKind::kMsT4, {i, j}, {delta, 0.0});
      break;
  }
  return c;
}

DenseUnitary circuit_unitary(const Circuit& c) {
  return circuit_unitary(c, [](const GateOp& op) { return gate_matrix(op); });
}

DenseUnitary circuit_unitary(const Circuit& c, const GateMatrixFn& matrix_of) {
  if (c.n_qubits() > kMaxDenseQubits) {
    throw ResourceError(fmt::format("circuit unitary limited to {} qubits", kMaxDenseQubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << c.n_qubits();
  DenseUnitary u = DenseUnitary::Identity(dim, dim);
  for (const auto& op : c.ops()) {
    u = embed(matrix_of(op), op.targets, c.n_qubits(), op.controls) * u;
  }
  return std::polar(1.0, c.global_phase()) * u;
}

bool equal_up_to_global_phase(const DenseUnitary& u, const DenseUnitary& v, double tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw InputError("unitaries of different dimension");
  }
  const double dim = static_cast<double>(u.rows());
  return std::abs((u.adjoint() * v).trace()) >= dim * (1.0 - tol);
}

std::string format_circuit(const Circuit& c) {
  std::string out = fmt::format("qubits {}\n", c.n_qubits());
  for (const auto& op : c.ops()) {
    std::string params;
    for (std::size_t k = 0; k < op.params.size(); ++k) {
      params += fmt::format("{}{:.17g}", k ? "," : "", op.params[k]);
    }
    out += fmt::format("{}({})", gate_name(op.kind), params);
    for (int q : op.targets) out += fmt::format(" {}", q);
    if (!op.controls.empty()) {
      out += " ctrl";
      for (int q : op.controls) out += fmt::format(" {}", q);
    }
    out += '\n';
  }
  out += fmt::format("phase {:.17g}\n", c.global_phase());
  return out;
}

Circuit parse_circuit(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos && line[first] != '#') return true;
    }
    return false;
  };
  auto fail = [&](std::string_view why) {
    return InputError(fmt::format("circuit line {}: {}", line_no, why));
  };

  if (!next_line()) throw InputError("empty circuit text");
  int n = 0;
  {
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word >> n) || word != "qubits") throw fail("expected `qubits N`");
  }
  Circuit c(n);
  bool saw_phase = false;
  while (next_line()) {
    if (saw_phase) throw fail("content after the phase footer");
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "phase") {
      double p = 0.0;
      if (!(ls >> p)) throw fail("bad phase value");
      c.add_phase(p);
      saw_phase = true;
      continue;
    }
    const auto open = head.find('(');
    if (open == std::string::npos || head.back() != ')') throw fail("expected NAME(params)");
    GateOp op{gate_kind_from_name(head.substr(0, open)), {}, {}, {}};
    const std::string plist = head.substr(open + 1, head.size() - open - 2);
    std::istringstream ps(plist);
    for (std::string tok; std::getline(ps, tok, ',');) {
      try {
        op.params.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw fail(fmt::format("bad parameter '{}'", tok));
      }
    }
    bool in_controls = false;
    for (std::string tok; ls >> tok;) {
      if (tok == "ctrl") {
        in_controls = true;
        continue;
      }
      int q = 0;
      try {
        q = std::stoi(tok);
      } catch (const std::exception&) {
        throw fail(fmt::format("bad qubit '{}'", tok));
      }
      (in_controls ? op.controls : op.targets).push_back(q);
    }
    c.add(std::move(op));
  }
  if (!saw_phase) throw InputError("circuit text lacks the `phase` footer");
  return c;
}

}  // namespace qdsim
