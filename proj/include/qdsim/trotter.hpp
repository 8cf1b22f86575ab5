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

#include <optional>
#include <string_view>

#include "qdsim/compiler.hpp"
#include "qdsim/pauli.hpp"
#include "qdsim/statevector.hpp"

namespace qdsim {

enum class Growth { kLinear, kQuadratic };

std::string_view growth_name(Growth g);
Growth growth_from_name(std::string_view name);

struct TrotterPlan {
  enum class Schedule { kFixedN, kFixedEps };

  int order = 1;
  Schedule schedule = Schedule::kFixedN;
  int n = 1;
  double eps = 0.1;
  Growth growth = Growth::kQuadratic;

  static TrotterPlan fixed_n(int n, int order = 1);
  static TrotterPlan fixed_eps(double eps, Growth growth, int order = 1);

  void validate() const;
};

// Number of Trotter steps for phase delta at error target eps.
int steps_for_phase(double delta, double eps, Growth growth);

// How equal-coefficient XX+YY+ZZ bonds are compiled.
enum class BondFusion { kAuto, kNone, kSixCnot, kThreeCnot, kThreeUxy, kThreeCPhase, kS4 };

std::string_view bond_fusion_name(BondFusion f);
BondFusion bond_fusion_from_name(std::string_view name);

struct TrotterOptions {
  BondFusion fusion = BondFusion::kAuto;
  bool hoist_fields = true;
  CompileOptions compile;
};

struct EvolutionResult {
  Circuit circuit;
  int n_steps_used = 1;
  double phase = 0.0;
  // Number of terms applied once outside the step loop.
  int hoisted_terms = 0;
};

EvolutionResult trotterize(const PauliHamiltonian& h, double t, const TrotterPlan& plan,
                           GateSet set, const TrotterOptions& options = {});

// exp(-i c tau P) for one Pauli string in the native gates of `set`.
Circuit term_exponential(const PauliString& term, double tau, GateSet set,
                         const CompileOptions& options = {});

DenseUnitary exact_propagator(const PauliHamiltonian& h, double t);

// exact_propagator applied to a copy of psi.
StateVector evolve_exact(const StateVector& psi, const PauliHamiltonian& h, double t);

double digital_fidelity(const StateVector& psi0, const PauliHamiltonian& h, double t,
                        const TrotterPlan& plan, GateSet set,
                        const TrotterOptions& options = {});

// (delta^2 / 2n) * || [O1, O2] ||_2
double commutator_error_bound(const PauliHamiltonian& o1, const PauliHamiltonian& o2,
                              double delta, int n);

}  // namespace qdsim
