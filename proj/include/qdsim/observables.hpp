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

#include <ostream>
#include <string_view>
#include <vector>

#include "qdsim/pauli.hpp"
#include "qdsim/statevector.hpp"
#include "qdsim/trotter.hpp"

namespace qdsim {

// <s_z^(i)> = <sigma_z^(i)> / 2
double magnetization(const StateVector& psi, int site);

// A single-qubit Pauli (or the identity when letter == 'I').
struct SiteOperator {
  char letter = 'I';
  int qubit = 1;
};

struct Evolution {
  enum class Kind { kExact, kTrotter };

  Kind kind = Kind::kExact;
  TrotterPlan plan;
  GateSet set = GateSet::kS1;
  TrotterOptions options;

  static Evolution exact() { return {}; }
  static Evolution trotter(const TrotterPlan& plan, GateSet set, const TrotterOptions& options = {});
};

struct CorrelationSpec {
  SiteOperator v;
  SiteOperator w;
  StateVector initial{1};
  PauliHamiltonian h{1};
  std::vector<double> times;
  Evolution evolution;

  void validate() const;
};

// C_VW(t) = <psi| U^dag(t) V^dag U(t) W |psi> by plain state-vector algebra.
std::vector<Complex> correlation_direct(const CorrelationSpec& spec);

// Same quantity read from an extra ancilla qubit: <sigma_x> + i <sigma_y>.
std::vector<Complex> correlation_ancilla(const CorrelationSpec& spec);

// <s_a(t) s_b> = C / 4 for Pauli operators.
inline Complex spin_correlation(Complex pauli_correlation) { return 0.25 * pauli_correlation; }

struct SpectrumSpec {
  PauliHamiltonian q{1};
  StateVector initial{1};
  int points = 1024;
  // 0 selects default_theta_step(q).
  double theta_step = 0.0;
  // Plan for each controlled exp(-i Q theta_step) increment.
  TrotterPlan plan = TrotterPlan::fixed_n(1);
  GateSet set = GateSet::kS1;
  TrotterOptions options;

  double resolved_step() const;
  void validate() const;
};

// Keeps the spectrum of Q inside the Nyquist band with a 1.5x margin.
double default_theta_step(const PauliHamiltonian& q);

// <psi| exp(-i Q theta_k) |psi> for theta_k = k * step, k = 0..points-1.
std::vector<Complex> unitary_expectation_series(const SpectrumSpec& spec);

struct SpectralPeak {
  double q;
  double weight;
};

enum class SpectralWindow { kRectangular, kHann };

// Peaks are runs of adjacent bins above relative_threshold * max, reported at
// their modulus-weighted centroid with weight sqrt(run energy / total window energy).
std::vector<SpectralPeak> spectrum_from_series(const std::vector<Complex>& series,
                                               double theta_step,
                                               double relative_threshold = 0.01,
                                               SpectralWindow window = SpectralWindow::kRectangular);

void write_series_csv(std::ostream& out, std::string_view axis, const std::vector<double>& x,
                      const std::vector<Complex>& values);
void write_peaks_csv(std::ostream& out, const std::vector<SpectralPeak>& peaks);

}  // namespace qdsim
