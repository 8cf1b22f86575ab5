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

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qdsim/compiler.hpp"
#include "qdsim/observables.hpp"
#include "qdsim/pauli.hpp"
#include "qdsim/trotter.hpp"

namespace qdsim {

struct ModelConfig {
  std::string type = "heisenberg";  // heisenberg, xyz, xy, tim, hubbard2, custom
  int n_qubits = 2;
  std::vector<double> couplings;  // heisenberg bonds; empty means uniform j
  double j = 1.0;
  double field = 0.0;             // Bg
  std::vector<double> fields;     // tim per-site x fields; empty means field / 2 each
  double jxx = 1.0, jyy = 1.0, jzz = 1.0;
  double v = 1.0, u = 1.0;        // hubbard2
  std::string file;               // custom: Pauli-term file
  std::string hamiltonian_text;   // custom: file contents, read at load time
};

struct ObservableConfig {
  std::string kind;  // magnetization, total_magnetization, probability, correlation, fidelity, spectrum
  std::string label;
  int site = 1;
  std::string bits;
  char v = 'X', w = 'X';
  int i = 1, j = 1;
  std::string route = "ancilla";
  bool exact = false;
  // fidelity
  TrotterPlan plan;
  // spectrum
  int points = 1024;
  double theta_step = 0.0;
  double threshold = 0.01;
};

struct ExperimentConfig {
  std::vector<std::string> notes;
  ModelConfig model;
  std::string initial = "0";
  GateSet gateset = GateSet::kS1;
  TrotterPlan plan;
  BondFusion bond = BondFusion::kAuto;
  double min_cphase = 0.0;
  std::string axis = "t";  // "t" or "delta" (phase = coupling scale * t)
  double t_min = 0.0;
  double t_max = 1.0;
  int points = 11;
  std::vector<ObservableConfig> observables;
};

// Sectioned key = value text; see README for the grammar. Relative custom-model
// paths resolve against base_dir.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);
std::string format_config(const ExperimentConfig& cfg);

struct Overrides {
  std::optional<std::string> gateset;
  std::optional<int> order;
  std::optional<int> steps;
  std::optional<double> eps;
  std::optional<std::string> growth;
};

void apply_overrides(ExperimentConfig& cfg, const Overrides& o);

// Throws InputError naming the offending field, e.g. `observables[0].site`.
void validate(const ExperimentConfig& cfg);

PauliHamiltonian build_hamiltonian(const ExperimentConfig& cfg);
StateVector build_initial_state(const ExperimentConfig& cfg);
std::vector<double> time_grid(const ExperimentConfig& cfg);

void run_experiment(const ExperimentConfig& cfg, std::ostream& out);

std::string dump_circuit(const ExperimentConfig& cfg);

const std::vector<std::string>& figure_ids();
std::string figure_config_text(std::string_view id);
ExperimentConfig figure_preset(std::string_view id);

struct VerifyCheck {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  std::uint64_t seed = 20190901;
  int samples = 25;
  // Replaces gate matrices in the unitary checks; empty uses gate_matrix.
  GateMatrixFn matrix_override;
};

std::vector<VerifyCheck> verify_suite(const VerifyOptions& options = {});
bool print_verify_report(std::ostream& out, const std::vector<VerifyCheck>& checks);

}  // namespace qdsim
