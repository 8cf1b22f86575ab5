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


#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qdsim/runner.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;

void add_overrides(CLI::App* cmd, qdsim::Overrides& o) {
  cmd->add_option("--gateset", o.gateset, "Gate set: S1, S2, S3 or S4");
  cmd->add_option("--order", o.order, "Trotter order (1 or 2)");
  cmd->add_option("--steps", o.steps, "Fixed number of Trotter steps");
  cmd->add_option("--eps", o.eps, "Error target for the phase-dependent schedule");
  cmd->add_option("--growth", o.growth, "Schedule growth: linear or quadratic");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw qdsim::InputError("cannot write '" + out_path + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Digital quantum simulation of spin and fermion models"};
  app.require_subcommand(1);

  qdsim::Overrides overrides;
  std::string config_path, figure_id, out_path;
  bool print_config = false;

  auto* run = app.add_subcommand("run", "Run an experiment config and print CSV");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--out", out_path, "Write CSV to this file");
  add_overrides(run, overrides);

  auto* figure = app.add_subcommand("figure", "Run a built-in figure preset");
  figure->add_option("id", figure_id, "fig2, fig4a, fig4b, fig4c, fig6a, fig6b or fig6c")->required();
  figure->add_option("--out", out_path, "Write CSV to this file");
  figure->add_flag("--print-config", print_config, "Print the preset config instead of running it");
  add_overrides(figure, overrides);

  auto* verify = app.add_subcommand("verify", "Check every gate identity and decomposition");

  auto* dump = app.add_subcommand("dump-circuit", "Print the compiled circuit for time.max");
  dump->add_option("config", config_path, "Config file")->required();
  add_overrides(dump, overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*verify) {
      const bool ok = qdsim::print_verify_report(std::cout, qdsim::verify_suite());
      return ok ? 0 : 1;
    }
    qdsim::ExperimentConfig cfg;
    if (*figure) {
      if (print_config) {
        emit(qdsim::figure_config_text(figure_id), out_path);
        return 0;
      }
      cfg = qdsim::figure_preset(figure_id);
    } else {
      cfg = qdsim::load_config(config_path);
    }
    qdsim::apply_overrides(cfg, overrides);
    if (*dump) {
      std::cout << qdsim::dump_circuit(cfg);
      return 0;
    }
    std::ostringstream csv;
    qdsim::run_experiment(cfg, csv);
    emit(csv.str(), out_path);
    return 0;
  } catch (const qdsim::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const qdsim::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
