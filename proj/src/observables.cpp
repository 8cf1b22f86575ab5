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


#include "qdsim/observables.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include <fftw3.h>
#include <fmt/format.h>

#include "parallel.hpp"

namespace qdsim {

double magnetization(const StateVector& psi, int site) {
  if (site < 1 || site > psi.n_qubits()) {
    throw InputError(fmt::format("site {} outside 1..{}", site, psi.n_qubits()));
  }
  return 0.5 * pauli_expectation(psi, pauli_on(psi.n_qubits(), {{site, 'Z'}}));
}

Evolution Evolution::trotter(const TrotterPlan& plan, GateSet set, const TrotterOptions& options) {
  plan.validate();
  Evolution e;
  e.kind = Kind::kTrotter;
  e.plan = plan;
  e.set = set;
  e.options = options;
  return e;
}

namespace {

void check_site_operator(const SiteOperator& op, int n, std::string_view name) {
  if (op.letter != 'I' && op.letter != 'X' && op.letter != 'Y' && op.letter != 'Z') {
    throw InputError(fmt::format("{}: '{}' is not one of I, X, Y, Z", name, op.letter));
  }
  if (op.qubit < 1 || op.qubit > n) {
    throw InputError(fmt::format("{}: qubit {} outside 1..{}", name, op.qubit, n));
  }
}

void evolve(StateVector& state, const CorrelationSpec& spec, double t,
            const DenseUnitary* exact_u) {
  const int n = spec.h.n_qubits();
  std::vector<int> system(static_cast<std::size_t>(n));
  std::iota(system.begin(), system.end(), 1);
  if (spec.evolution.kind == Evolution::Kind::kExact) {
    state.apply_matrix(*exact_u, system);
    return;
  }
  if (t == 0.0) return;
  const auto& e = spec.evolution;
  const Circuit c = trotterize(spec.h, t, e.plan, e.set, e.options).circuit;
  if (state.n_qubits() == n) {
    run(c, state);
  } else {
    Circuit wide(state.n_qubits());
    wide.append(c);
    run(wide, state);
  }
}

void apply_pauli(StateVector& state, const SiteOperator& op) {
  if (op.letter == 'I') return;
  state.apply_matrix(pauli_matrix(axis_from_letter(op.letter)), {op.qubit});
}

void apply_controlled_pauli(StateVector& state, const SiteOperator& op, int control) {
  switch (op.letter) {
    case 'X':
      state.apply(GateOp{GateKind::kCnot, {}, {control, op.qubit}, {}});
      break;
    case 'Y':
      state.apply(GateOp{GateKind::kU3, {kPi, kPi / 2, kPi / 2}, {op.qubit}, {control}});
      break;
    case 'Z':
      state.apply(GateOp{GateKind::kCPhase, {kPi}, {control, op.qubit}, {}});
      break;
    default:
      break;
  }
}

Complex ancilla_readout(const StateVector& state, int ancilla) {
  const int n = state.n_qubits();
  const double x = pauli_expectation(state, pauli_on(n, {{ancilla, 'X'}}));
  const double y = pauli_expectation(state, pauli_on(n, {{ancilla, 'Y'}}));
  return {x, y};
}

std::vector<DenseUnitary> exact_propagators(const CorrelationSpec& spec) {
  std::vector<DenseUnitary> us;
  if (spec.evolution.kind != Evolution::Kind::kExact) return us;
  us.reserve(spec.times.size());
  for (double t : spec.times) us.push_back(exact_propagator(spec.h, t));
  return us;
}

}  // namespace

void CorrelationSpec::validate() const {
  const int n = h.n_qubits();
  if (initial.n_qubits() != n) {
    throw InputError(fmt::format("initial state has {} qubits, Hamiltonian {}",
                                 initial.n_qubits(), n));
  }
  check_site_operator(v, n, "V");
  check_site_operator(w, n, "W");
  if (evolution.kind == Evolution::Kind::kTrotter) {
    evolution.plan.validate();
    if (h.empty()) throw InputError("cannot trotterize an empty Hamiltonian");
  }
  for (double t : times) {
    if (!std::isfinite(t)) throw InputError("time grid contains a non-finite value");
  }
}

std::vector<Complex> correlation_direct(const CorrelationSpec& spec) {
  spec.validate();
  const auto us = exact_propagators(spec);
  std::vector<Complex> out(spec.times.size());
  detail::for_each_point(spec.times.size(), [&](std::size_t k) {
    const DenseUnitary* u = us.empty() ? nullptr : &us[k];
    StateVector ket = spec.initial;
    apply_pauli(ket, spec.w);
    evolve(ket, spec, spec.times[k], u);
    apply_pauli(ket, spec.v);  // Pauli letters are Hermitian: V^dag = V
    StateVector bra = spec.initial;
    evolve(bra, spec, spec.times[k], u);
    out[k] = inner_product(bra, ket);
  });
  return out;
}

std::vector<Complex> correlation_ancilla(const CorrelationSpec& spec) {
  spec.validate();
  const auto us = exact_propagators(spec);
  const int ancilla = spec.h.n_qubits() + 1;
  std::vector<Complex> out(spec.times.size());
  detail::for_each_point(spec.times.size(), [&](std::size_t k) {
    StateVector state = spec.initial.extended(1);
    state.apply(GateOp{GateKind::kH, {}, {ancilla}, {}});
    apply_controlled_pauli(state, spec.w, ancilla);
    evolve(state, spec, spec.times[k], us.empty() ? nullptr : &us[k]);
    state.apply(GateOp{GateKind::kX, {}, {ancilla}, {}});
    apply_controlled_pauli(state, spec.v, ancilla);
    state.apply(GateOp{GateKind::kX, {}, {ancilla}, {}});
    out[k] = ancilla_readout(state, ancilla);
  });
  return out;
}

double default_theta_step(const PauliHamiltonian& q) {
  const double range = std::abs(q.identity_offset()) + q.gershgorin_bound();
  if (range == 0.0) return kPi / 1.5;
  return kPi / (1.5 * range);
}

double SpectrumSpec::resolved_step() const {
  return theta_step > 0.0 ? theta_step : default_theta_step(q);
}

void SpectrumSpec::validate() const {
  if (initial.n_qubits() != q.n_qubits()) {
    throw InputError(fmt::format("initial state has {} qubits, operator {}", initial.n_qubits(),
                                 q.n_qubits()));
  }
  if (points < 2 || !std::has_single_bit(static_cast<unsigned>(points))) {
    throw InputError(fmt::format("theta grid size must be a power of two, got {}", points));
  }
  if (theta_step < 0.0 || !std::isfinite(theta_step)) {
    throw InputError(fmt::format("theta step must be positive, got {}", theta_step));
  }
  if (q.empty()) throw InputError("spectrum operator is empty");
  plan.validate();
}

std::vector<Complex> unitary_expectation_series(const SpectrumSpec& spec) {
  spec.validate();
  const int n = spec.q.n_qubits();
  const int ancilla = n + 1;
  const double step = spec.resolved_step();
  const Circuit increment = controlled(
      trotterize(spec.q, step, spec.plan, spec.set, spec.options).circuit, ancilla, n + 1);

  StateVector state = spec.initial.extended(1);
  state.apply(GateOp{GateKind::kH, {}, {ancilla}, {}});
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(spec.points));
  for (int k = 0; k < spec.points; ++k) {
    if (k > 0) run(increment, state);
    out.push_back(ancilla_readout(state, ancilla));
  }
  return out;
}

std::vector<SpectralPeak> spectrum_from_series(const std::vector<Complex>& series,
                                               double theta_step, double relative_threshold,
                                               SpectralWindow window_kind) {
  const std::size_t m = series.size();
  if (m < 2 || !std::has_single_bit(m)) {
    throw InputError(fmt::format("series length must be a power of two, got {}", m));
  }
  if (!(theta_step > 0.0)) throw InputError("theta step must be positive");
  if (!(relative_threshold > 0.0 && relative_threshold < 1.0)) {
    throw InputError("peak threshold must lie in (0, 1)");
  }

  std::vector<double> window(m);
  double window_energy = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    window[k] = window_kind == SpectralWindow::kHann
                    ? 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(k) /
                                            static_cast<double>(m)))
                    : 1.0;
    window_energy += window[k] * window[k];
  }
  std::vector<Complex> in(m), spectrum(m);
  for (std::size_t k = 0; k < m; ++k) in[k] = series[k] * window[k];

  const int len = static_cast<int>(m);
  fftw_plan plan = fftw_plan_dft_1d(len, reinterpret_cast<fftw_complex*>(in.data()),
                                    reinterpret_cast<fftw_complex*>(spectrum.data()),
                                    FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  std::vector<double> modulus(m);
  for (std::size_t k = 0; k < m; ++k) modulus[k] = std::abs(spectrum[k]);
  const double peak_max = *std::max_element(modulus.begin(), modulus.end());
  if (peak_max == 0.0) return {};
  const double cut = relative_threshold * peak_max;
  auto above = [&](std::size_t k) { return modulus[k % m] >= cut; };

  // Start scanning just after a below-threshold bin so runs never wrap mid-cluster.
  std::size_t start = 0;
  while (start < m && above(start)) ++start;
  if (start == m) start = 0;

  const double resolution = 2.0 * kPi / (static_cast<double>(m) * theta_step);
  auto frequency = [&](std::size_t bin) {
    long long s = static_cast<long long>(bin % m);
    if (s >= static_cast<long long>(m / 2)) s -= static_cast<long long>(m);
    return static_cast<double>(s) * resolution;
  };

  std::vector<SpectralPeak> peaks;
  for (std::size_t off = 0; off < m;) {
    const std::size_t k = start + off;
    if (!above(k)) {
      ++off;
      continue;
    }
    double mass = 0.0, centroid = 0.0, energy = 0.0;
    while (off < m && above(start + off)) {
      const std::size_t bin = (start + off) % m;
      mass += modulus[bin];
      centroid += modulus[bin] * frequency(bin);
      energy += modulus[bin] * modulus[bin];
      ++off;
    }
    peaks.push_back({centroid / mass, std::sqrt(energy / (static_cast<double>(m) * window_energy))});
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const SpectralPeak& a, const SpectralPeak& b) { return a.q < b.q; });
  return peaks;
}

void write_series_csv(std::ostream& out, std::string_view axis, const std::vector<double>& x,
                      const std::vector<Complex>& values) {
  if (x.size() != values.size()) throw InputError("axis and values differ in length");
  out << axis << ",re,im\n";
  for (std::size_t k = 0; k < x.size(); ++k) {
    out << fmt::format("{:.17g},{:.17g},{:.17g}\n", x[k], values[k].real(), values[k].imag());
  }
}

void write_peaks_csv(std::ostream& out, const std::vector<SpectralPeak>& peaks) {
  out << "q,weight\n";
  for (const auto& p : peaks) out << fmt::format("{:.17g},{:.17g}\n", p.q, p.weight);
}

}  // namespace qdsim
