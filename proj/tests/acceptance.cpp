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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails or exceeds its time budget.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "qdsim/fermion.hpp"
#include "qdsim/observables.hpp"
#include "qdsim/runner.hpp"
#include "support.hpp"

namespace qdsim {
namespace {

using testing::kron_string;
using testing::oracle_expm;
using testing::phase_aligned_distance;
using testing::to_vector;

struct Outcome {
  bool ok = true;
  std::string detail;
};

const std::array<GateSet, 4> kSets = {GateSet::kS1, GateSet::kS2, GateSet::kS3, GateSet::kS4};
const std::array<Axis, 3> kAxes = {Axis::kX, Axis::kY, Axis::kZ};

double spectral_norm(const Eigen::MatrixXcd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

Eigen::MatrixXcd heis2_matrix() { return kron_string("XX") + kron_string("YY") + kron_string("ZZ"); }

Outcome decomposition_soundness() {
  auto rng = testing::make_rng(1);
  double worst = 0;
  for (GateSet set : kSets) {
    for (Axis a : kAxes) {
      for (Axis b : kAxes) {
        const std::string letters{axis_letter(a), axis_letter(b)};
        for (int k = 0; k < 25; ++k) {
          const double delta = testing::uniform(rng, -kPi, kPi);
          const auto c = decompose_pauli_pair(a, b, delta, 1, 2, set, 2);
          worst = std::max(worst, phase_aligned_distance(circuit_unitary(c), oracle_expm(kron_string(letters), delta)));
        }
      }
    }
  }
  return {worst < 1e-10, fmt::format("900 circuits, max_err={:.2e}", worst)};
}

Outcome heisenberg_variants() {
  auto rng = testing::make_rng(2);
  struct Want {
    HeisenbergVariant v;
    GateKind two_qubit;
    int count;  // 0: not fixed
  };
  const std::vector<Want> wants = {{HeisenbergVariant::kSixCnot, GateKind::kCnot, 6},
                                   {HeisenbergVariant::kThreeCnot, GateKind::kCnot, 3},
                                   {HeisenbergVariant::kThreeUxy, GateKind::kUxy, 3},
                                   {HeisenbergVariant::kS4, GateKind::kMsT4, 0}};
  double worst = 0;
  bool counts = true;
  std::string seen;
  for (const auto& w : wants) {
    std::size_t last = 0;
    for (int k = 0; k < 25; ++k) {
      const double delta = testing::uniform(rng, -kPi, kPi);
      const auto c = heisenberg2_circuit(delta, 1, 2, w.v, 2);
      worst = std::max(worst, phase_aligned_distance(circuit_unitary(c), oracle_expm(heis2_matrix(), delta)));
      last = c.multi_qubit_gate_count();
      if (w.count > 0) {
        counts = counts && c.count(w.two_qubit) == static_cast<std::size_t>(w.count) &&
                 last == static_cast<std::size_t>(w.count);
      }
    }
    seen += fmt::format("{}{}={}", seen.empty() ? "" : " ", heisenberg_variant_name(w.v), last);
  }
  return {worst < 1e-10 && counts, fmt::format("max_err={:.2e}, gates {}", worst, seen)};
}

// Oracle fidelity |<psi_exact|psi_n>| for the two-spin transverse Ising model.
Outcome figure_two() {
  const auto h = tim_chain(2, {1.0, 1.0}, 1.0);
  const Eigen::MatrixXcd hm = kron_string("XI") + kron_string("IX") + kron_string("ZZ");
  const auto psi0 = basis_state(2, "00");
  auto fidelity = [&](double delta, const TrotterPlan& plan) {
    auto psi = psi0;
    const auto r = trotterize(h, delta, plan, GateSet::kS1);
    run(r.circuit, psi);
    const Eigen::VectorXcd ex = oracle_expm(hm, delta) * to_vector(psi0);
    return std::abs(ex.dot(to_vector(psi)));
  };
  const auto fixed = TrotterPlan::fixed_n(5);
  const auto lin = TrotterPlan::fixed_eps(0.1, Growth::kLinear);
  const auto quad = TrotterPlan::fixed_eps(0.1, Growth::kQuadratic);
  double quad_min = 1, fixed_min_early = 1;
  double lin_sum = 0, fixed_sum = 0, quad_sum = 0;
  int late = 0;
  for (int k = 0; k <= 90; ++k) {
    const double d = 0.5 * k;
    const double fq = fidelity(d, quad), ff = fidelity(d, fixed);
    quad_min = std::min(quad_min, fq);
    if (d < 10) fixed_min_early = std::min(fixed_min_early, ff);
    if (d >= 20) {
      lin_sum += fidelity(d, lin);
      fixed_sum += ff;
      quad_sum += fq;
      ++late;
    }
  }
  const double fl = lin_sum / late, ff = fixed_sum / late, fq = quad_sum / late;
  const bool ok = quad_min >= 0.9 && fixed_min_early < 0.9 && ff < fl && fl < fq;
  return {ok, fmt::format("quadratic min={:.4f}, fixed5 min(delta<10)={:.4f}, mean(delta>=20) fixed/linear/quadratic="
                          "{:.3f}/{:.3f}/{:.3f}, max n={}",
                          quad_min, fixed_min_early, ff, fl, fq, steps_for_phase(45, 0.1, Growth::kQuadratic))};
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome order_scaling() {
  const auto h = tim_chain(2, {1.0, 1.0}, 1.0);
  const Eigen::MatrixXcd exact = oracle_expm(testing::oracle_matrix(h), 2.0);
  std::vector<double> ns;
  for (int n = 4; n <= 64; ++n) ns.push_back(n);
  bool ok = true;
  std::string detail;
  for (int order : {1, 2}) {
    std::vector<double> errs;
    for (double n : ns) {
      const auto r = trotterize(h, 2.0, TrotterPlan::fixed_n(static_cast<int>(n), order), GateSet::kS1);
      errs.push_back(spectral_norm(circuit_unitary(r.circuit) - exact));
    }
    const double slope = fitted_slope(ns, errs);
    ok = ok && std::abs(slope + order) <= 0.15;
    detail += fmt::format("{}order {} slope={:.3f}", detail.empty() ? "" : ", ", order, slope);
  }
  return {ok, detail};
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<double> column(const std::string& name) const {
    const auto c = static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
    if (c == header.size()) throw std::runtime_error("missing column " + name);
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
  }
};

Csv run_csv(const ExperimentConfig& cfg) {
  std::ostringstream out;
  run_experiment(cfg, out);
  std::istringstream in(out.str());
  Csv csv;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (csv.header.empty()) {
      csv.header = cells;
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(std::stod(c));
    csv.rows.push_back(row);
  }
  return csv;
}

// Dense operator for a magnetization, total magnetization or probability observable.
Eigen::MatrixXcd observable_matrix(const ObservableConfig& o, int n) {
  auto z_at = [n](int site) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[static_cast<std::size_t>(site - 1)] = 'Z';
    return kron_string(s);
  };
  if (o.kind == "magnetization") return 0.5 * z_at(o.site);
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (o.kind == "total_magnetization") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int s = 1; s <= n; ++s) m += 0.5 * z_at(s);
    return m;
  }
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
  const auto idx = static_cast<Eigen::Index>(std::stoull(o.bits, nullptr, 2));
  p(idx, idx) = 1.0;
  return p;
}

Outcome figure_four() {
  double exact_err = 0, digital_err = 0, drift = 0;
  for (const std::string id : {"fig4a", "fig4b", "fig4c"}) {
    const auto cfg = figure_preset(id);
    const Csv csv = run_csv(cfg);
    const int n = cfg.model.n_qubits;
    const Eigen::MatrixXcd h = testing::oracle_matrix(build_hamiltonian(cfg));
    const Eigen::VectorXcd psi = to_vector(build_initial_state(cfg));
    const auto ts = csv.column(cfg.axis);
    for (const auto& o : cfg.observables) {
      const Eigen::MatrixXcd op = observable_matrix(o, n);
      const auto ex = csv.column(o.label + "_ex");
      for (std::size_t k = 0; k < ts.size(); ++k) {
        const Eigen::VectorXcd v = oracle_expm(h, ts[k]) * psi;
        exact_err = std::max(exact_err, std::abs(v.dot(op * v).real() - ex[k]));
      }
      if (id == "fig4a") {
        const auto dig = csv.column(o.label);
        for (std::size_t k = 0; k < ts.size(); ++k) digital_err = std::max(digital_err, std::abs(dig[k] - ex[k]));
        if (o.kind == "total_magnetization") {
          for (const auto& name : {o.label, o.label + "_ex"}) {
            const auto col = csv.column(name);
            for (double x : col) drift = std::max(drift, std::abs(x - col[0]));
          }
        }
      }
    }
  }
  return {exact_err < 1e-8 && digital_err < 1e-10 && drift < 1e-10,
          fmt::format("exact vs oracle {:.2e}, fig4a digital vs exact {:.2e}, sz_total drift {:.2e}", exact_err,
                      digital_err, drift)};
}

// Spin correlation <psi| U(t)^dagger V U(t) W |psi> / 4 from dense matrices.
std::vector<Complex> oracle_correlation(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi,
                                        const Eigen::MatrixXcd& v, const Eigen::MatrixXcd& w,
                                        const std::vector<double>& ts) {
  std::vector<Complex> out;
  for (double t : ts) {
    const Eigen::MatrixXcd u = oracle_expm(h, t);
    out.push_back(spin_correlation((u * psi).dot(v * (u * (w * psi)))));
  }
  return out;
}

Outcome figure_six() {
  bool ok = true;
  std::string detail;
  for (const std::string id : {"fig6a", "fig6b", "fig6c"}) {
    const auto cfg = figure_preset(id);
    const auto& o = cfg.observables.at(0);
    const int n = cfg.model.n_qubits;
    CorrelationSpec spec;
    spec.v = {o.v, o.i};
    spec.w = {o.w, o.j};
    spec.initial = build_initial_state(cfg);
    spec.h = build_hamiltonian(cfg);
    spec.times = time_grid(cfg);
    TrotterOptions opt;
    opt.fusion = cfg.bond;
    auto site_matrix = [n](char letter, int q) {
      std::string s(static_cast<std::size_t>(n), 'I');
      s[static_cast<std::size_t>(q - 1)] = letter;
      return kron_string(s);
    };
    const auto exact = oracle_correlation(testing::oracle_matrix(spec.h), to_vector(spec.initial),
                                          site_matrix(o.v, o.i), site_matrix(o.w, o.j), spec.times);
    double route5 = 0, conv64 = 0;
    for (int steps : {5, 64}) {
      spec.evolution = Evolution::trotter(TrotterPlan::fixed_n(steps, cfg.plan.order), cfg.gateset, opt);
      auto a = correlation_ancilla(spec);
      auto d = correlation_direct(spec);
      for (auto& x : a) x = spin_correlation(x);
      for (auto& x : d) x = spin_correlation(x);
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (steps == 5) route5 = std::max(route5, std::abs(a[k] - d[k]));
        if (steps == 64) conv64 = std::max({conv64, std::abs(a[k] - exact[k]), std::abs(d[k] - exact[k])});
      }
    }
    ok = ok && route5 < 1e-10 && conv64 < 2e-3;
    detail += fmt::format("{}{}: routes(n=5) {:.1e}, n=64 vs exact {:.1e}", detail.empty() ? "" : "; ", id, route5,
                          conv64);
  }
  return {ok, detail};
}

Eigen::MatrixXcd fock_ladder(LadderOp op, int n_modes) {
  const Eigen::Index dim = Eigen::Index{1} << n_modes;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const int bit = n_modes - op.mode;
  for (Eigen::Index s = 0; s < dim; ++s) {
    const bool occupied = (s >> bit) & 1;
    if (occupied == op.dagger) continue;
    int before = 0;
    for (int b = bit + 1; b < n_modes; ++b) before += static_cast<int>((s >> b) & 1);
    m(s ^ (Eigen::Index{1} << bit), s) = (before % 2) ? -1.0 : 1.0;
  }
  return m;
}

Outcome jordan_wigner_hubbard() {
  auto rng = testing::make_rng(7);
  double term_err = 0, spec_err = 0, anti_err = 0;
  bool same_terms = true;
  for (int k = 0; k < 5; ++k) {
    const double v = testing::uniform(rng, -2, 2), u = testing::uniform(rng, -2, 2);
    const auto fh = hubbard_2site(v, u);
    const auto h = jordan_wigner(fh);
    std::map<std::string, double> want = {{"XXII", v / 2}, {"YYII", v / 2}, {"IIXX", v / 2}, {"IIYY", v / 2},
                                          {"ZIIZ", u / 4}, {"ZIII", u / 4}, {"IIIZ", u / 4}, {"IZZI", u / 4},
                                          {"IZII", u / 4}, {"IIZI", u / 4}, {"IIII", u / 2}};
    same_terms = same_terms && h.terms().size() == want.size();
    for (const auto& t : h.terms()) {
      const auto it = want.find(t.letters);
      if (it == want.end()) {
        same_terms = false;
        continue;
      }
      term_err = std::max({term_err, std::abs(t.coefficient.real() - it->second), std::abs(t.coefficient.imag())});
    }
    Eigen::MatrixXcd fock = Eigen::MatrixXcd::Zero(16, 16);
    for (const auto& t : fh.terms()) {
      Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(16, 16);
      for (const auto& op : t.ops) p = p * fock_ladder(op, 4);
      fock += t.coefficient * p;
    }
    const Eigen::VectorXd a = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(fock).eigenvalues();
    const Eigen::VectorXd b = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(testing::oracle_matrix(h)).eigenvalues();
    spec_err = std::max(spec_err, (a - b).cwiseAbs().maxCoeff());
  }
  for (int j = 1; j <= 4; ++j) {
    for (int k = 1; k <= 4; ++k) {
      const Eigen::MatrixXcd c = dense_matrix(jw_ladder(annihilate(j), 4), 4);
      const Eigen::MatrixXcd cd = dense_matrix(jw_ladder(create(k), 4), 4);
      const Eigen::MatrixXcd want =
          (j == k ? 1.0 : 0.0) * Eigen::MatrixXcd::Identity(16, 16);
      anti_err = std::max(anti_err, (c * cd + cd * c - want).cwiseAbs().maxCoeff());
      const Eigen::MatrixXcd cc = dense_matrix(jw_ladder(annihilate(k), 4), 4);
      anti_err = std::max(anti_err, (c * cc + cc * c).cwiseAbs().maxCoeff());
    }
  }
  return {same_terms && term_err < 1e-14 && anti_err < 1e-12 && spec_err < 1e-10,
          fmt::format("terms {} (max err {:.1e}), anticommutators {:.1e}, spectra {:.1e}",
                      same_terms ? "match" : "differ", term_err, anti_err, spec_err)};
}

Outcome spectrum_extraction() {
  SpectrumSpec spec;
  spec.q = heisenberg_chain(2, {1.0}, 0.0);
  spec.initial = basis_state(2, "01");
  const double step = spec.resolved_step();
  const double bin = 2 * kPi / (spec.points * step);
  const auto peaks = spectrum_from_series(unitary_expectation_series(spec), step);
  if (peaks.size() != 2) return {false, fmt::format("{} peaks found", peaks.size())};
  const bool ok = std::abs(peaks[0].q + 3) <= bin && std::abs(peaks[1].q - 1) <= bin &&
                  std::abs(peaks[0].weight - 0.5) <= 0.02 && std::abs(peaks[1].weight - 0.5) <= 0.02;
  return {ok, fmt::format("q={:.4f} (w={:.4f}), q={:.4f} (w={:.4f}), bin={:.4f}", peaks[0].q, peaks[0].weight,
                          peaks[1].q, peaks[1].weight, bin)};
}

Outcome kernel_performance() {
  auto rng = testing::make_rng(9);
  double worst = 0;
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k < 60; ++k) {
      GateOp op = n >= 2 ? testing::random_gate(rng, n, true)
                         : make_gate(GateKind::kU3, {1}, {testing::uniform(rng, -kPi, kPi),
                                                          testing::uniform(rng, -kPi, kPi),
                                                          testing::uniform(rng, -kPi, kPi)});
      auto psi = testing::random_state(rng, n);
      const Eigen::VectorXcd want = embed(gate_matrix(op), op.targets, n, op.controls) * to_vector(psi);
      psi.apply(op);
      worst = std::max(worst, testing::max_abs_diff(psi, want));
    }
  }
  std::vector<GateOp> circuit;
  for (int k = 0; k < 100; ++k) circuit.push_back(testing::random_gate(rng, 20, true));
  const int threads = omp_get_max_threads();
  omp_set_num_threads(1);
  StateVector psi(20);
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& op : circuit) psi.apply(op);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  omp_set_num_threads(threads);
  const bool ok = worst < 1e-12 && secs < 1.0 && std::abs(psi.norm() - 1) < 1e-10;
  return {ok, fmt::format("strided vs dense max_err={:.1e}, 20 qubits x 100 gates single-threaded {:.3f} s", worst,
                          secs)};
}

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> check;
};

}  // namespace
}  // namespace qdsim

int main() {
  using namespace qdsim;
  const std::vector<Criterion> criteria = {
      {1, "decomposition soundness", 5, decomposition_soundness},
      {2, "Heisenberg bond variants", 2, heisenberg_variants},
      {3, "two-spin Ising fidelity schedules", 60, figure_two},
      {4, "Trotter order scaling", 5, order_scaling},
      {5, "fig4 preset curves", 5, figure_four},
      {6, "fig6 correlations", 30, figure_six},
      {7, "Jordan-Wigner Hubbard mapping", 2, jordan_wigner_hubbard},
      {8, "spectrum extraction", 10, spectrum_extraction},
      {9, "kernel performance", 1e9, kernel_performance},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.ok && in_time;
    failed += pass ? 0 : 1;
    const std::string budget = c.budget_s < 1e8 ? fmt::format("{:.3f} s / {:g} s", secs, c.budget_s)
                                                : fmt::format("{:.3f} s", secs);
    std::printf("%s %d %s: %s [%s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(),
                budget.c_str(), in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
