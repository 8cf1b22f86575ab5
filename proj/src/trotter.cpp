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


#include "qdsim/trotter.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

namespace qdsim {

std::string_view growth_name(Growth g) { return g == Growth::kLinear ? "linear" : "quadratic"; }

Growth growth_from_name(std::string_view name) {
  if (name == "linear") return Growth::kLinear;
  if (name == "quadratic") return Growth::kQuadratic;
  throw InputError(fmt::format("unknown growth '{}' (expected linear or quadratic)", name));
}

TrotterPlan TrotterPlan::fixed_n(int n, int order) {
  TrotterPlan p;
  p.order = order;
  p.schedule = Schedule::kFixedN;
  p.n = n;
  p.validate();
  return p;
}

TrotterPlan TrotterPlan::fixed_eps(double eps, Growth growth, int order) {
  TrotterPlan p;
  p.order = order;
  p.schedule = Schedule::kFixedEps;
  p.eps = eps;
  p.growth = growth;
  p.validate();
  return p;
}

void TrotterPlan::validate() const {
  if (order != 1 && order != 2) throw InputError(fmt::format("order must be 1 or 2, got {}", order));
  if (schedule == Schedule::kFixedN && n < 1) {
    throw InputError(fmt::format("step count must be >= 1, got {}", n));
  }
  if (schedule == Schedule::kFixedEps && !(eps > 0.0 && eps < 1.0)) {
    throw InputError(fmt::format("eps must lie in (0, 1), got {}", eps));
  }
}

int steps_for_phase(double delta, double eps, Growth growth) {
  if (!(delta >= 0.0)) throw InputError(fmt::format("phase must be >= 0, got {}", delta));
  if (!(eps > 0.0 && eps < 1.0)) throw InputError(fmt::format("eps must lie in (0, 1), got {}", eps));
  const double raw = growth == Growth::kQuadratic ? delta * delta / (2 * eps) : delta / (2 * eps);
  // Guard against 20.000000000000004 style round-up.
  const double n = std::ceil(raw - 1e-12 * std::max(1.0, raw));
  if (n > 1e9) throw ResourceError(fmt::format("schedule asks for {:.3g} Trotter steps", n));
  return std::max(1, static_cast<int>(n));
}

std::string_view bond_fusion_name(BondFusion f) {
  switch (f) {
    case BondFusion::kAuto:
      return "auto";
    case BondFusion::kNone:
      return "none";
    case BondFusion::kSixCnot:
      return "6cnot";
    case BondFusion::kThreeCnot:
      return "3cnot";
    case BondFusion::kThreeUxy:
      return "3uxy";
    case BondFusion::kThreeCPhase:
      return "3cphase";
    case BondFusion::kS4:
      return "s4";
  }
  return "?";
}

BondFusion bond_fusion_from_name(std::string_view name) {
  for (auto f : {BondFusion::kAuto, BondFusion::kNone, BondFusion::kSixCnot,
                 BondFusion::kThreeCnot, BondFusion::kThreeUxy, BondFusion::kThreeCPhase,
                 BondFusion::kS4}) {
    if (bond_fusion_name(f) == name) return f;
  }
  throw InputError(fmt::format(
      "unknown bond variant '{}' (expected auto, none, 6cnot, 3cnot, 3uxy, 3cphase or s4)", name));
}

namespace {

std::optional<HeisenbergVariant> resolve_fusion(BondFusion f, GateSet set) {
  auto require = [&](GateSet needed, HeisenbergVariant v) {
    if (set != needed) {
      throw InputError(fmt::format("bond variant {} needs gate set {}, not {}",
                                   heisenberg_variant_name(v), gate_set_name(needed),
                                   gate_set_name(set)));
    }
    return v;
  };
  switch (f) {
    case BondFusion::kNone:
      return std::nullopt;
    case BondFusion::kAuto:
      switch (set) {
        case GateSet::kS1:
          return HeisenbergVariant::kThreeCnot;
        case GateSet::kS2:
          return HeisenbergVariant::kThreeUxy;
        case GateSet::kS3:
          return std::nullopt;
        case GateSet::kS4:
          return HeisenbergVariant::kS4;
      }
      return std::nullopt;
    case BondFusion::kSixCnot:
      return require(GateSet::kS1, HeisenbergVariant::kSixCnot);
    case BondFusion::kThreeCnot:
      return require(GateSet::kS1, HeisenbergVariant::kThreeCnot);
    case BondFusion::kThreeUxy:
      return require(GateSet::kS2, HeisenbergVariant::kThreeUxy);
    case BondFusion::kThreeCPhase:
      return require(GateSet::kS3, HeisenbergVariant::kThreeCPhase);
    case BondFusion::kS4:
      return require(GateSet::kS4, HeisenbergVariant::kS4);
  }
  return std::nullopt;
}

// Terms sharing one support and commuting pairwise; their exponentials are exact.
using Block = std::vector<PauliString>;

class StepEmitter {
 public:
  StepEmitter(int n_qubits, GateSet set, std::optional<HeisenbergVariant> fusion,
              const CompileOptions& options)
      : n_qubits_(n_qubits), set_(set), fusion_(fusion), options_(options) {}

  void emit(Circuit& c, const Block& block, double tau) const {
    std::vector<bool> done(block.size(), false);
    if (fusion_ && block.front().weight() == 2) {
      std::array<int, 3> idx{-1, -1, -1};
      for (std::size_t k = 0; k < block.size(); ++k) {
        const auto sup = block[k].support();
        const char a = block[k].letters[sup[0] - 1];
        const char b = block[k].letters[sup[1] - 1];
        if (a == b) idx[static_cast<std::size_t>(a - 'X')] = static_cast<int>(k);
      }
      const bool all = std::all_of(idx.begin(), idx.end(), [](int k) { return k >= 0; });
      if (all) {
        const double cx = block[idx[0]].coefficient.real();
        const double cy = block[idx[1]].coefficient.real();
        const double cz = block[idx[2]].coefficient.real();
        if (cx == cy && cy == cz) {
          const auto sup = block[idx[0]].support();
          c.append(heisenberg2_circuit(cx * tau, sup[0], sup[1], *fusion_, n_qubits_));
          for (int k : idx) done[k] = true;
        }
      }
    }
    for (std::size_t k = 0; k < block.size(); ++k) {
      if (!done[k]) c.append(term_exponential(block[k], tau, set_, options_));
    }
  }

 private:
  int n_qubits_;
  GateSet set_;
  std::optional<HeisenbergVariant> fusion_;
  CompileOptions options_;
};

std::vector<Block> blocks_in_layer_order(const PauliHamiltonian& rest) {
  std::vector<Block> blocks;
  for (const auto& layer : disjoint_layers(rest)) {
    for (std::size_t k = 0; k < layer.size(); ++k) {
      const auto& term = rest.terms()[layer[k]];
      if (k > 0 && rest.terms()[layer[k - 1]].support() == term.support()) {
        blocks.back().push_back(term);
      } else {
        blocks.push_back({term});
      }
    }
  }
  return blocks;
}

bool all_pairwise_commute(const std::vector<PauliString>& terms) {
  for (std::size_t a = 0; a < terms.size(); ++a) {
    for (std::size_t b = a + 1; b < terms.size(); ++b) {
      if (!commutes(terms[a], terms[b])) return false;
    }
  }
  return true;
}

}  // namespace

Circuit term_exponential(const PauliString& term, double tau, GateSet set,
                         const CompileOptions& options) {
  const int n = term.n_qubits();
  const double angle = term.coefficient.real() * tau;
  const auto sup = term.support();
  auto axis_at = [&](int q) { return axis_from_letter(term.letters[q - 1]); };
  if (sup.empty()) {
    Circuit c(n);
    c.add_phase(-angle);
    return c;
  }
  if (sup.size() == 1) return single_qubit_exponential(axis_at(sup[0]), angle, sup[0], set, n);
  if (sup.size() == 2) {
    return decompose_pauli_pair(axis_at(sup[0]), axis_at(sup[1]), angle, sup[0], sup[1], set, n,
                                options);
  }
  std::vector<Axis> axes;
  for (int q : sup) axes.push_back(axis_at(q));
  return decompose_multi_pauli(axes, angle, sup, set, n);
}

EvolutionResult trotterize(const PauliHamiltonian& h, double t, const TrotterPlan& plan,
                           GateSet set, const TrotterOptions& options) {
  plan.validate();
  if (h.empty()) throw InputError("cannot trotterize an empty Hamiltonian");
  if (!std::isfinite(t)) throw InputError("evolution time must be finite");
  if (t < 0.0) {
    // Backward evolution is the exact inverse of the forward circuit.
    EvolutionResult fwd = trotterize(h, -t, plan, set, options);
    fwd.circuit = fwd.circuit.inverse();
    return fwd;
  }

  const int n_qubits = h.n_qubits();
  const auto fusion = resolve_fusion(options.fusion, set);

  std::vector<PauliString> fields, others;
  double identity = 0.0;
  for (const auto& term : h.terms()) {
    if (term.is_identity()) {
      identity += term.coefficient.real();
    } else if (term.weight() == 1) {
      fields.push_back(term);
    } else {
      others.push_back(term);
    }
  }

  std::vector<PauliString> hoisted, rest = others;
  if (options.hoist_fields && !fields.empty()) {
    if (all_pairwise_commute(fields) && commutator(fields, others).empty()) {
      hoisted = fields;
    } else {
      std::vector<PauliString> non_identity = fields;
      non_identity.insert(non_identity.end(), others.begin(), others.end());
      std::vector<PauliString> kept;
      for (const auto& f : fields) {
        const bool free = std::all_of(non_identity.begin(), non_identity.end(),
                                      [&](const PauliString& o) { return commutes(f, o); });
        (free ? hoisted : kept).push_back(f);
      }
      rest.insert(rest.begin(), kept.begin(), kept.end());
    }
  } else {
    rest.insert(rest.begin(), fields.begin(), fields.end());
  }
  // Restore Hamiltonian term order among the looped terms.
  {
    std::vector<PauliString> ordered;
    for (const auto& term : h.terms()) {
      if (std::any_of(rest.begin(), rest.end(),
                      [&](const PauliString& r) { return r.letters == term.letters; })) {
        ordered.push_back(term);
      }
    }
    rest = std::move(ordered);
  }

  EvolutionResult result{Circuit(n_qubits), 1, h.coupling_scale() * t,
                         static_cast<int>(hoisted.size())};
  if (plan.schedule == TrotterPlan::Schedule::kFixedN) {
    result.n_steps_used = plan.n;
  } else {
    result.n_steps_used = steps_for_phase(result.phase, plan.eps, plan.growth);
  }
  if (all_pairwise_commute(rest)) result.n_steps_used = 1;

  Circuit& c = result.circuit;
  c.add_phase(-identity * t);
  for (const auto& f : hoisted) c.append(term_exponential(f, t, set, options.compile));
  if (rest.empty()) return result;

  PauliHamiltonian rest_h(n_qubits);
  for (const auto& term : rest) rest_h.add(term);
  const auto blocks = blocks_in_layer_order(rest_h);
  const StepEmitter emitter(n_qubits, set, fusion, options.compile);
  const double tau = t / result.n_steps_used;

  Circuit step(n_qubits);
  if (plan.order == 1 || blocks.size() == 1) {
    for (const auto& b : blocks) emitter.emit(step, b, tau);
  } else {
    const std::size_t last = blocks.size() - 1;
    for (std::size_t k = 0; k < last; ++k) emitter.emit(step, blocks[k], tau / 2);
    emitter.emit(step, blocks[last], tau);
    for (std::size_t k = last; k-- > 0;) emitter.emit(step, blocks[k], tau / 2);
  }
  for (int s = 0; s < result.n_steps_used; ++s) c.append(step);
  return result;
}

DenseUnitary exact_propagator(const PauliHamiltonian& h, double t) {
  if (h.n_qubits() > kMaxDenseQubits) {
    throw ResourceError(fmt::format("exact propagator limited to {} qubits, got {}",
                                    kMaxDenseQubits, h.n_qubits()));
  }
  return expm_hermitian(dense_matrix(h), t);
}

StateVector evolve_exact(const StateVector& psi, const PauliHamiltonian& h, double t) {
  if (psi.n_qubits() != h.n_qubits()) throw InputError("state and Hamiltonian sizes differ");
  const DenseUnitary u = exact_propagator(h, t);
  const auto amps = psi.amplitudes();
  const Eigen::VectorXcd out =
      u * Eigen::Map<const Eigen::VectorXcd>(amps.data(), static_cast<Eigen::Index>(amps.size()));
  return StateVector::from_amplitudes(std::vector<Complex>(out.data(), out.data() + out.size()),
                                      1e-8);
}

double digital_fidelity(const StateVector& psi0, const PauliHamiltonian& h, double t,
                        const TrotterPlan& plan, GateSet set, const TrotterOptions& options) {
  if (psi0.n_qubits() != h.n_qubits()) throw InputError("state and Hamiltonian sizes differ");
  const StateVector exact = evolve_exact(psi0, h, t);
  StateVector digital = psi0;
  run(trotterize(h, t, plan, set, options).circuit, digital);
  return std::min(1.0, std::abs(inner_product(exact, digital)));
}

double commutator_error_bound(const PauliHamiltonian& o1, const PauliHamiltonian& o2,
                              double delta, int n) {
  if (o1.n_qubits() != o2.n_qubits()) throw InputError("operators act on different registers");
  if (o1.n_qubits() > 8) throw ResourceError("commutator bound limited to 8 qubits");
  if (n < 1) throw InputError("step count must be >= 1");
  const Eigen::MatrixXcd a = dense_matrix(o1), b = dense_matrix(o2);
  const Eigen::MatrixXcd hermitian = kI * (a * b - b * a);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian, Eigen::EigenvaluesOnly);
  const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
  return delta * delta / (2.0 * n) * norm;
}

}  // namespace qdsim
