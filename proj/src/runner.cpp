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


#include "qdsim/runner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "qdsim/fermion.hpp"
#include "qdsim/kernels.hpp"
#include "parallel.hpp"

namespace qdsim {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

InputError field_error(std::string_view path, std::string_view why) {
  return InputError(fmt::format("{}: {}", path, why));
}

// Accepts plain numbers and multiples of pi: "pi", "2pi", "0.5*pi", "pi/2", "-3pi/4".
double parse_real(const std::string& text, std::string_view path) {
  static const std::regex pi_form(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi(?:\s*/\s*(\d+\.?\d*))?$)");
  const std::string t = lower(trim(text));
  std::smatch m;
  if (std::regex_match(t, m, pi_form)) {
    double factor = 1.0;
    if (m[1].matched) {
      const std::string f = m[1].str();
      factor = (f == "+" || f.empty()) ? 1.0 : (f == "-" ? -1.0 : std::stod(f));
    }
    if (t[0] == '-' && !m[1].matched) factor = -1.0;
    double r = factor * kPi;
    if (m[2].matched) r /= std::stod(m[2].str());
    return r;
  }
  if (t == "-pi") return -kPi;
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("trailing");
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite");
    return v;
  } catch (const std::exception&) {
    throw field_error(path, fmt::format("'{}' is not a number", text));
  }
}

int parse_int(const std::string& text, std::string_view path) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    const long v = std::stol(t, &used);
    if (used != t.size()) throw std::invalid_argument("trailing");
    if (v < -1'000'000'000L || v > 1'000'000'000L) throw std::out_of_range("range");
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw field_error(path, fmt::format("'{}' is not an integer", text));
  }
}

bool parse_bool(const std::string& text, std::string_view path) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
  if (t == "false" || t == "no" || t == "0" || t == "off") return false;
  throw field_error(path, fmt::format("'{}' is not a boolean", text));
}

std::vector<double> parse_list(const std::string& text, std::string_view path) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    out.push_back(parse_real(item, path));
  }
  if (out.empty()) throw field_error(path, "empty list");
  return out;
}

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

std::string format_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + format_real(v[k]);
  return out;
}

// One INI section; rejects keys that were never read.
class Section {
 public:
  Section(const pt::ptree* node, std::string path) : node_(node), path_(std::move(path)) {}

  bool has(const std::string& key) const { return node_ && node_->find(key) != node_->not_found(); }

  std::string path(const std::string& key) const { return path_ + "." + key; }

  std::optional<std::string> raw(const std::string& key) {
    used_.insert(key);
    if (!has(key)) return std::nullopt;
    return trim(node_->get<std::string>(key));
  }
  std::string text(const std::string& key, std::string fallback) {
    auto v = raw(key);
    return v ? *v : std::move(fallback);
  }
  double real(const std::string& key, double fallback) {
    auto v = raw(key);
    return v ? parse_real(*v, path(key)) : fallback;
  }
  int integer(const std::string& key, int fallback) {
    auto v = raw(key);
    return v ? parse_int(*v, path(key)) : fallback;
  }
  bool boolean(const std::string& key, bool fallback) {
    auto v = raw(key);
    return v ? parse_bool(*v, path(key)) : fallback;
  }
  std::vector<double> list(const std::string& key) {
    auto v = raw(key);
    return v ? parse_list(*v, path(key)) : std::vector<double>{};
  }

  void finish() const {
    if (!node_) return;
    for (const auto& [key, child] : *node_) {
      if (!used_.count(key)) throw field_error(path(key), "unknown key");
      if (!child.empty()) throw field_error(path(key), "nested keys are not supported");
    }
  }

 private:
  const pt::ptree* node_;
  std::string path_;
  std::set<std::string> used_;
};

char parse_letter(const std::string& text, std::string_view path) {
  const std::string t = trim(text);
  if (t.size() == 1) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(t[0])));
    if (c == 'I' || c == 'X' || c == 'Y' || c == 'Z') return c;
  }
  throw field_error(path, fmt::format("'{}' is not one of I, X, Y, Z", text));
}

TrotterPlan parse_schedule(Section& s, const std::string& path_prefix) {
  const std::string schedule = lower(s.text("schedule", "fixed"));
  const int order = s.integer("order", 1);
  TrotterPlan p;
  p.order = order;
  if (schedule == "fixed") {
    p.schedule = TrotterPlan::Schedule::kFixedN;
    p.n = s.integer("steps", 1);
  } else if (schedule == "linear" || schedule == "quadratic") {
    p.schedule = TrotterPlan::Schedule::kFixedEps;
    p.eps = s.real("eps", 0.1);
    p.growth = growth_from_name(schedule);
  } else {
    throw field_error(path_prefix + ".schedule",
                      fmt::format("'{}' is not fixed, linear or quadratic", schedule));
  }
  return p;
}

const std::set<std::string>& model_types() {
  static const std::set<std::string> t{"heisenberg", "xyz", "xy", "tim", "hubbard2", "custom"};
  return t;
}

const std::set<std::string>& observable_kinds() {
  static const std::set<std::string> k{"magnetization", "total_magnetization", "probability",
                                       "correlation", "fidelity", "spectrum"};
  return k;
}

std::string default_label(const ObservableConfig& o) {
  if (o.kind == "magnetization") return fmt::format("sz{}", o.site);
  if (o.kind == "total_magnetization") return "sz_total";
  if (o.kind == "probability") return "p" + o.bits;
  if (o.kind == "correlation") {
    return fmt::format("c{}{}{}{}", static_cast<char>(std::tolower(o.v)), o.i,
                       static_cast<char>(std::tolower(o.w)), o.j);
  }
  if (o.kind == "fidelity") {
    if (o.plan.schedule == TrotterPlan::Schedule::kFixedN) return fmt::format("fid_fixed{}", o.plan.n);
    return fmt::format("fid_{}", growth_name(o.plan.growth));
  }
  return "spectrum";
}

std::string initial_labels(const std::string& state) {
  std::string out;
  for (char c : state) {
    if (c == 'u' || c == 'U') {
      out += '0';
    } else if (c == 'd' || c == 'D') {
      out += '1';
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InputError(fmt::format("config line {}: {}", e.line(), e.message()));
  }
  static const std::set<std::string> sections{"meta", "model", "initial", "circuit", "time"};
  for (const auto& [name, node] : tree) {
    if (!sections.count(name) && name != "observable" && name.rfind("observable.", 0) != 0) {
      throw field_error(name, "unknown section");
    }
    if (node.empty() && !node.data().empty()) {
      throw field_error(name, "key outside any section");
    }
  }
  auto section = [&](const std::string& name) {
    auto it = tree.find(name);
    return Section(it == tree.not_found() ? nullptr : &it->second, name);
  };

  ExperimentConfig cfg;
  if (auto it = tree.find("meta"); it != tree.not_found()) {
    for (const auto& [key, value] : it->second) {
      if (key.rfind("note", 0) != 0) throw field_error("meta." + key, "unknown key");
      cfg.notes.push_back(trim(value.data()));
    }
  }
  {
    Section s = section("model");
    auto& m = cfg.model;
    m.type = lower(s.text("type", "heisenberg"));
    if (!model_types().count(m.type)) {
      throw field_error("model.type", fmt::format("'{}' is not one of heisenberg, xyz, xy, tim, "
                                                  "hubbard2, custom", m.type));
    }
    const bool n_given = s.has("n_qubits");
    m.n_qubits = s.integer("n_qubits", m.type == "hubbard2" ? 4 : 2);
    m.j = s.real("j", 1.0);
    m.couplings = s.list("couplings");
    m.field = s.real("field", 0.0);
    m.fields = s.list("fields");
    m.jxx = s.real("jxx", m.j);
    m.jyy = s.real("jyy", m.j);
    m.jzz = s.real("jzz", m.type == "xy" ? 0.0 : m.j);
    m.v = s.real("v", 1.0);
    m.u = s.real("u", 1.0);
    m.file = s.text("file", "");
    if (m.type == "custom") {
      if (m.file.empty()) throw field_error("model.file", "custom model needs a term file");
      std::filesystem::path p = m.file;
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      std::ifstream f(p);
      if (!f) throw field_error("model.file", fmt::format("cannot open '{}'", p.string()));
      std::stringstream buf;
      buf << f.rdbuf();
      m.hamiltonian_text = buf.str();
      std::istringstream hs(m.hamiltonian_text);
      PauliHamiltonian h(1);
      try {
        h = parse_hamiltonian(hs);
      } catch (const InputError& e) {
        throw field_error("model.file", e.what());
      }
      if (n_given && h.n_qubits() != m.n_qubits) {
        throw field_error("model.n_qubits", fmt::format("is {} but '{}' has {} qubits", m.n_qubits,
                                                        m.file, h.n_qubits()));
      }
      m.n_qubits = h.n_qubits();
    }
    s.finish();
  }
  {
    Section s = section("initial");
    cfg.initial = s.text("state", std::string(static_cast<std::size_t>(std::max(cfg.model.n_qubits, 1)), '0'));
    s.finish();
  }
  {
    Section s = section("circuit");
    const std::string set = s.text("gateset", "S1");
    try {
      cfg.gateset = gate_set_from_name(set);
    } catch (const InputError& e) {
      throw field_error("circuit.gateset", e.what());
    }
    cfg.plan.order = s.integer("order", 1);
    const bool has_eps = s.has("eps") || s.has("growth");
    cfg.plan.n = s.integer("steps", 1);
    cfg.plan.eps = s.real("eps", 0.1);
    const std::string growth = s.text("growth", "quadratic");
    try {
      cfg.plan.growth = growth_from_name(lower(growth));
    } catch (const InputError& e) {
      throw field_error("circuit.growth", e.what());
    }
    cfg.plan.schedule = has_eps ? TrotterPlan::Schedule::kFixedEps : TrotterPlan::Schedule::kFixedN;
    if (has_eps && s.has("steps")) {
      throw field_error("circuit.steps", "give either steps or eps/growth, not both");
    }
    try {
      cfg.bond = bond_fusion_from_name(lower(s.text("bond", "auto")));
    } catch (const InputError& e) {
      throw field_error("circuit.bond", e.what());
    }
    cfg.min_cphase = s.real("min_cphase", 0.0);
    s.finish();
  }
  {
    Section s = section("time");
    cfg.axis = lower(s.text("axis", "t"));
    cfg.t_min = s.real("min", 0.0);
    cfg.t_max = s.real("max", 1.0);
    cfg.points = s.integer("points", 11);
    s.finish();
  }
  for (const auto& [name, node] : tree) {
    if (name != "observable" && name.rfind("observable.", 0) != 0) continue;
    const std::string path = fmt::format("observables[{}]", cfg.observables.size());
    Section s(&node, path);
    ObservableConfig o;
    o.kind = lower(s.text("kind", ""));
    if (!observable_kinds().count(o.kind)) {
      throw field_error(path + ".kind",
                        fmt::format("'{}' is not one of magnetization, total_magnetization, "
                                    "probability, correlation, fidelity, spectrum", o.kind));
    }
    o.label = s.text("label", "");
    o.exact = s.boolean("exact", false);
    if (o.kind == "magnetization") {
      o.site = s.integer("site", 1);
    } else if (o.kind == "probability") {
      o.bits = s.text("bits", "");
    } else if (o.kind == "correlation") {
      o.v = parse_letter(s.text("v", "X"), path + ".v");
      o.w = parse_letter(s.text("w", "X"), path + ".w");
      o.i = s.integer("i", 1);
      o.j = s.integer("j", 1);
      o.route = lower(s.text("route", "ancilla"));
    } else if (o.kind == "fidelity") {
      o.plan = parse_schedule(s, path);
    } else if (o.kind == "spectrum") {
      o.points = s.integer("points", 1024);
      o.theta_step = s.real("theta_step", 0.0);
      o.threshold = s.real("threshold", 0.01);
    }
    s.finish();
    if (o.label.empty()) o.label = default_label(o);
    cfg.observables.push_back(std::move(o));
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open config '{}'", path.string()));
  return parse_config(in, path.parent_path());
}

std::string format_config(const ExperimentConfig& cfg) {
  std::string out;
  auto line = [&](std::string_view k, const std::string& v) { out += fmt::format("{} = {}\n", k, v); };
  if (!cfg.notes.empty()) {
    out += "[meta]\n";
    for (std::size_t k = 0; k < cfg.notes.size(); ++k) {
      line(k == 0 ? std::string("note") : fmt::format("note{}", k + 1), cfg.notes[k]);
    }
    out += '\n';
  }
  const auto& m = cfg.model;
  out += "[model]\n";
  line("type", m.type);
  line("n_qubits", std::to_string(m.n_qubits));
  if (m.type == "heisenberg") {
    if (m.couplings.empty()) {
      line("j", format_real(m.j));
    } else {
      line("couplings", format_list(m.couplings));
    }
    line("field", format_real(m.field));
  } else if (m.type == "xyz") {
    line("jxx", format_real(m.jxx));
    line("jyy", format_real(m.jyy));
    line("jzz", format_real(m.jzz));
  } else if (m.type == "xy") {
    line("jxx", format_real(m.jxx));
    line("jyy", format_real(m.jyy));
  } else if (m.type == "tim") {
    line("jzz", format_real(m.jzz));
    if (m.fields.empty()) {
      line("field", format_real(m.field));
    } else {
      line("fields", format_list(m.fields));
    }
  } else if (m.type == "hubbard2") {
    line("v", format_real(m.v));
    line("u", format_real(m.u));
  } else if (m.type == "custom") {
    line("file", m.file);
  }
  out += "\n[initial]\n";
  line("state", cfg.initial);
  out += "\n[circuit]\n";
  line("gateset", std::string(gate_set_name(cfg.gateset)));
  line("order", std::to_string(cfg.plan.order));
  if (cfg.plan.schedule == TrotterPlan::Schedule::kFixedN) {
    line("steps", std::to_string(cfg.plan.n));
  } else {
    line("eps", format_real(cfg.plan.eps));
    line("growth", std::string(growth_name(cfg.plan.growth)));
  }
  line("bond", std::string(bond_fusion_name(cfg.bond)));
  if (cfg.min_cphase != 0.0) line("min_cphase", format_real(cfg.min_cphase));
  out += "\n[time]\n";
  line("axis", cfg.axis);
  line("min", format_real(cfg.t_min));
  line("max", format_real(cfg.t_max));
  line("points", std::to_string(cfg.points));
  for (std::size_t k = 0; k < cfg.observables.size(); ++k) {
    const auto& o = cfg.observables[k];
    out += fmt::format("\n[observable.{}]\n", k + 1);
    line("kind", o.kind);
    line("label", o.label);
    if (o.kind == "magnetization") line("site", std::to_string(o.site));
    if (o.kind == "probability") line("bits", o.bits);
    if (o.kind == "correlation") {
      line("v", std::string(1, o.v));
      line("i", std::to_string(o.i));
      line("w", std::string(1, o.w));
      line("j", std::to_string(o.j));
      line("route", o.route);
    }
    if (o.kind == "fidelity") {
      line("order", std::to_string(o.plan.order));
      if (o.plan.schedule == TrotterPlan::Schedule::kFixedN) {
        line("schedule", "fixed");
        line("steps", std::to_string(o.plan.n));
      } else {
        line("schedule", std::string(growth_name(o.plan.growth)));
        line("eps", format_real(o.plan.eps));
      }
    }
    if (o.kind == "spectrum") {
      line("points", std::to_string(o.points));
      if (o.theta_step > 0.0) line("theta_step", format_real(o.theta_step));
      line("threshold", format_real(o.threshold));
    }
    if (o.kind != "fidelity" && o.kind != "spectrum") line("exact", o.exact ? "true" : "false");
  }
  return out;
}

void apply_overrides(ExperimentConfig& cfg, const Overrides& o) {
  if (o.gateset) {
    try {
      cfg.gateset = gate_set_from_name(*o.gateset);
    } catch (const InputError& e) {
      throw field_error("--gateset", e.what());
    }
  }
  if (o.order) cfg.plan.order = *o.order;
  if (o.steps && (o.eps || o.growth)) throw InputError("--steps cannot be combined with --eps/--growth");
  if (o.steps) {
    cfg.plan.schedule = TrotterPlan::Schedule::kFixedN;
    cfg.plan.n = *o.steps;
  }
  if (o.eps || o.growth) {
    cfg.plan.schedule = TrotterPlan::Schedule::kFixedEps;
    if (o.eps) cfg.plan.eps = *o.eps;
    if (o.growth) {
      try {
        cfg.plan.growth = growth_from_name(*o.growth);
      } catch (const InputError& e) {
        throw field_error("--growth", e.what());
      }
    }
  }
}

void validate(const ExperimentConfig& cfg) {
  const auto& m = cfg.model;
  const int n = m.n_qubits;
  if (!model_types().count(m.type)) throw field_error("model.type", "unknown model type");
  if (n < 1 || n > kMaxQubits) {
    throw field_error("model.n_qubits", fmt::format("{} is outside 1..{}", n, kMaxQubits));
  }
  if ((m.type == "heisenberg" || m.type == "xyz" || m.type == "xy" || m.type == "tim") && n < 2) {
    throw field_error("model.n_qubits", fmt::format("a {} chain needs at least 2 spins", m.type));
  }
  if (m.type == "hubbard2" && n != 4) {
    throw field_error("model.n_qubits", "the two-site Hubbard model uses exactly 4 qubits");
  }
  if (m.type == "heisenberg" && !m.couplings.empty() &&
      static_cast<int>(m.couplings.size()) != n - 1) {
    throw field_error("model.couplings",
                      fmt::format("needs {} entries for {} spins, got {}", n - 1, n, m.couplings.size()));
  }
  if (m.type == "tim" && !m.fields.empty() && static_cast<int>(m.fields.size()) != n) {
    throw field_error("model.fields",
                      fmt::format("needs {} entries, got {}", n, m.fields.size()));
  }
  if (static_cast<int>(cfg.initial.size()) != n) {
    throw field_error("initial.state", fmt::format("'{}' has {} labels for {} qubits", cfg.initial,
                                                   cfg.initial.size(), n));
  }
  for (char c : initial_labels(cfg.initial)) {
    if (std::string_view("01+-rl").find(c) == std::string_view::npos) {
      throw field_error("initial.state", fmt::format("unknown label '{}' (use 0 1 + - r l u d)", c));
    }
  }
  try {
    cfg.plan.validate();
  } catch (const InputError& e) {
    throw field_error("circuit", e.what());
  }
  if (cfg.min_cphase < 0.0) throw field_error("circuit.min_cphase", "must be >= 0");
  if (cfg.axis != "t" && cfg.axis != "delta") {
    throw field_error("time.axis", fmt::format("'{}' is not t or delta", cfg.axis));
  }
  if (cfg.points < 1 || cfg.points > 1'000'000) {
    throw field_error("time.points", fmt::format("{} is outside 1..1000000", cfg.points));
  }
  if (cfg.t_max < cfg.t_min) throw field_error("time.max", "is smaller than time.min");
  if (cfg.axis == "delta" && cfg.t_min < 0.0) throw field_error("time.min", "phase must be >= 0");
  if (cfg.observables.empty()) throw field_error("observables", "at least one observable is required");

  std::set<std::string> labels;
  const bool has_spectrum = std::any_of(cfg.observables.begin(), cfg.observables.end(),
                                        [](const ObservableConfig& o) { return o.kind == "spectrum"; });
  for (std::size_t k = 0; k < cfg.observables.size(); ++k) {
    const auto& o = cfg.observables[k];
    const std::string path = fmt::format("observables[{}]", k);
    if (!observable_kinds().count(o.kind)) throw field_error(path + ".kind", "unknown kind");
    if (!labels.insert(o.label).second) {
      throw field_error(path + ".label", fmt::format("'{}' is used twice", o.label));
    }
    if (has_spectrum && cfg.observables.size() > 1) {
      throw field_error(path + ".kind", "a spectrum observable must be the only observable");
    }
    auto check_site = [&](int q, std::string_view key) {
      if (q < 1 || q > n) {
        throw field_error(fmt::format("{}.{}", path, key),
                          fmt::format("{} is outside 1..{}", q, n));
      }
    };
    if (o.kind == "magnetization") check_site(o.site, "site");
    if (o.kind == "probability") {
      if (static_cast<int>(o.bits.size()) != n ||
          o.bits.find_first_not_of("01") != std::string::npos) {
        throw field_error(path + ".bits",
                          fmt::format("'{}' is not a {}-character bitstring", o.bits, n));
      }
    }
    if (o.kind == "correlation") {
      check_site(o.i, "i");
      check_site(o.j, "j");
      if (o.route != "ancilla" && o.route != "direct") {
        throw field_error(path + ".route", fmt::format("'{}' is not ancilla or direct", o.route));
      }
    }
    if (o.kind == "fidelity") {
      try {
        o.plan.validate();
      } catch (const InputError& e) {
        throw field_error(path, e.what());
      }
    }
    if (o.kind == "spectrum") {
      if (o.points < 2 || (o.points & (o.points - 1)) != 0) {
        throw field_error(path + ".points", fmt::format("{} is not a power of two", o.points));
      }
      if (o.theta_step < 0.0) throw field_error(path + ".theta_step", "must be positive");
      if (!(o.threshold > 0.0 && o.threshold < 1.0)) {
        throw field_error(path + ".threshold", "must lie in (0, 1)");
      }
    }
  }
}

PauliHamiltonian build_hamiltonian(const ExperimentConfig& cfg) {
  const auto& m = cfg.model;
  const int n = m.n_qubits;
  if (m.type == "heisenberg") {
    const std::vector<double> bonds =
        m.couplings.empty() ? std::vector<double>(static_cast<std::size_t>(n - 1), m.j) : m.couplings;
    return heisenberg_chain(n, bonds, m.field);
  }
  if (m.type == "xyz" || m.type == "xy") return xyz_chain(n, m.jxx, m.jyy, m.jzz);
  if (m.type == "tim") {
    const std::vector<double> fields =
        m.fields.empty() ? std::vector<double>(static_cast<std::size_t>(n), m.field / 2) : m.fields;
    return tim_chain(n, fields, m.jzz);
  }
  if (m.type == "hubbard2") return jordan_wigner(hubbard_2site(m.v, m.u));
  std::istringstream hs(m.hamiltonian_text);
  return parse_hamiltonian(hs);
}

StateVector build_initial_state(const ExperimentConfig& cfg) {
  return product_state(initial_labels(cfg.initial));
}

std::vector<double> time_grid(const ExperimentConfig& cfg) {
  std::vector<double> grid(static_cast<std::size_t>(cfg.points));
  for (int k = 0; k < cfg.points; ++k) {
    grid[static_cast<std::size_t>(k)] =
        cfg.points == 1 ? cfg.t_max
                        : cfg.t_min + (cfg.t_max - cfg.t_min) * k / (cfg.points - 1);
  }
  return grid;
}

namespace {

TrotterOptions trotter_options(const ExperimentConfig& cfg) {
  TrotterOptions o;
  o.fusion = cfg.bond;
  o.compile.min_cphase = cfg.min_cphase;
  return o;
}

std::vector<double> physical_times(const ExperimentConfig& cfg, const PauliHamiltonian& h,
                                   const std::vector<double>& grid) {
  if (cfg.axis == "t") return grid;
  const double scale = h.coupling_scale();
  if (scale == 0.0) throw field_error("time.axis", "phase axis needs a non-zero coupling");
  std::vector<double> ts;
  for (double d : grid) ts.push_back(d / scale);
  return ts;
}

void write_header(std::ostream& out, const ExperimentConfig& cfg) {
  out << "# qdsim run\n";
  for (const auto& note : cfg.notes) out << "# note: " << note << '\n';
  std::istringstream echo(format_config(cfg));
  for (std::string line; std::getline(echo, line);) {
    if (!line.empty()) out << "# config: " << line << '\n';
  }
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
  return s;
}

void run_spectrum(const ExperimentConfig& cfg, const ObservableConfig& o,
                  const PauliHamiltonian& h, std::ostream& out) {
  SpectrumSpec spec;
  spec.q = h;
  spec.initial = build_initial_state(cfg);
  spec.points = o.points;
  spec.theta_step = o.theta_step;
  spec.plan = cfg.plan;
  spec.set = cfg.gateset;
  spec.options = trotter_options(cfg);
  const auto series = unitary_expectation_series(spec);
  const auto peaks = spectrum_from_series(series, spec.resolved_step(), o.threshold);
  out << fmt::format("# theta_step: {:.17g}\n", spec.resolved_step());
  out << fmt::format("# resolution: {:.17g}\n",
                     2 * kPi / (spec.points * spec.resolved_step()));
  write_peaks_csv(out, peaks);
}

}  // namespace

void run_experiment(const ExperimentConfig& cfg, std::ostream& out) {
  validate(cfg);
  const PauliHamiltonian h = build_hamiltonian(cfg);
  const StateVector psi0 = build_initial_state(cfg);
  const TrotterOptions options = trotter_options(cfg);
  write_header(out, cfg);

  if (cfg.observables.front().kind == "spectrum") {
    run_spectrum(cfg, cfg.observables.front(), h, out);
    return;
  }

  const std::vector<double> grid = time_grid(cfg);
  const std::vector<double> ts = physical_times(cfg, h, grid);
  const std::size_t points = ts.size();
  const bool need_states =
      std::any_of(cfg.observables.begin(), cfg.observables.end(), [](const ObservableConfig& o) {
        return o.kind == "magnetization" || o.kind == "total_magnetization" ||
               o.kind == "probability";
      });
  const bool need_exact =
      std::any_of(cfg.observables.begin(), cfg.observables.end(), [](const ObservableConfig& o) {
        return o.exact && o.kind != "fidelity";
      });
  if ((need_exact || std::any_of(cfg.observables.begin(), cfg.observables.end(),
                                 [](const ObservableConfig& o) { return o.kind == "fidelity"; })) &&
      h.n_qubits() > kMaxDenseQubits) {
    throw ResourceError(fmt::format("exact columns need <= {} qubits", kMaxDenseQubits));
  }

  std::vector<StateVector> digital, exact;
  std::vector<int> steps(points, 0);
  if (need_states) {
    digital.assign(points, psi0);
    if (need_exact) exact.assign(points, psi0);
    detail::for_each_point(points, [&](std::size_t k) {
      const auto r = trotterize(h, ts[k], cfg.plan, cfg.gateset, options);
      steps[k] = r.n_steps_used;
      run(r.circuit, digital[k]);
      if (need_exact) exact[k] = evolve_exact(psi0, h, ts[k]);
    });
  } else {
    for (std::size_t k = 0; k < points; ++k) {
      steps[k] = trotterize(h, ts[k], cfg.plan, cfg.gateset, options).n_steps_used;
    }
  }
  out << "# steps_used: " << join_ints(steps) << '\n';

  std::vector<std::string> header{cfg.axis};
  std::vector<std::vector<double>> columns;
  auto state_column = [&](const std::vector<StateVector>& states, auto&& f) {
    std::vector<double> col(points);
    for (std::size_t k = 0; k < points; ++k) col[k] = f(states[k]);
    columns.push_back(std::move(col));
  };

  for (const auto& o : cfg.observables) {
    if (o.kind == "magnetization" || o.kind == "total_magnetization" || o.kind == "probability") {
      auto f = [&](const StateVector& s) {
        if (o.kind == "magnetization") return magnetization(s, o.site);
        if (o.kind == "probability") return probability(s, o.bits);
        double total = 0.0;
        for (int q = 1; q <= s.n_qubits(); ++q) total += magnetization(s, q);
        return total;
      };
      header.push_back(o.label);
      state_column(digital, f);
      if (o.exact) {
        header.push_back(o.label + "_ex");
        state_column(exact, f);
      }
    } else if (o.kind == "correlation") {
      CorrelationSpec spec;
      spec.v = {o.v, o.i};
      spec.w = {o.w, o.j};
      spec.initial = psi0;
      spec.h = h;
      spec.times = ts;
      auto emit = [&](const std::vector<Complex>& c, const std::string& label) {
        std::vector<double> re(points), im(points);
        for (std::size_t k = 0; k < points; ++k) {
          const Complex s = spin_correlation(c[k]);
          re[k] = s.real();
          im[k] = s.imag();
        }
        header.push_back(label + "_re");
        header.push_back(label + "_im");
        columns.push_back(std::move(re));
        columns.push_back(std::move(im));
      };
      spec.evolution = Evolution::trotter(cfg.plan, cfg.gateset, options);
      emit(o.route == "ancilla" ? correlation_ancilla(spec) : correlation_direct(spec), o.label);
      if (o.exact) {
        spec.evolution = Evolution::exact();
        emit(correlation_direct(spec), o.label + "_ex");
      }
    } else if (o.kind == "fidelity") {
      std::vector<double> col(points);
      std::vector<int> fid_steps(points);
      detail::for_each_point(points, [&](std::size_t k) {
        col[k] = digital_fidelity(psi0, h, ts[k], o.plan, cfg.gateset, options);
        fid_steps[k] = trotterize(h, ts[k], o.plan, cfg.gateset, options).n_steps_used;
      });
      out << fmt::format("# steps_used[{}]: {}\n", o.label, join_ints(fid_steps));
      header.push_back(o.label);
      columns.push_back(std::move(col));
    }
  }

  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (std::size_t k = 0; k < points; ++k) {
    out << fmt::format("{:.17g}", grid[k]);
    for (const auto& col : columns) out << fmt::format(",{:.17g}", col[k]);
    out << '\n';
  }
}

std::string dump_circuit(const ExperimentConfig& cfg) {
  validate(cfg);
  const PauliHamiltonian h = build_hamiltonian(cfg);
  const double t = physical_times(cfg, h, {cfg.t_max}).front();
  const auto r = trotterize(h, t, cfg.plan, cfg.gateset, trotter_options(cfg));
  std::string out = fmt::format("# t = {:.17g}\n# gateset = {}\n# steps_used = {}\n# ops = {}\n",
                                t, gate_set_name(cfg.gateset), r.n_steps_used, r.circuit.size());
  out += fmt::format("# two_qubit_ops = {}\n", r.circuit.multi_qubit_gate_count());
  return out + format_circuit(r.circuit);
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig2",  "fig4a", "fig4b", "fig4c",
                                            "fig6a", "fig6b", "fig6c"};
  return ids;
}

std::string figure_config_text(std::string_view id) {
  if (id == "fig2") {
    return R"([meta]
note = H = X1 + X2 + Z1 Z2 at unit couplings, psi0 = |00>, eps = 0.1; fidelity against exact evolution

[model]
type = tim
n_qubits = 2
fields = 1,1
jzz = 1

[initial]
state = 00

[circuit]
gateset = S1
steps = 5

[time]
axis = delta
max = 45
points = 91

[observable.1]
kind = fidelity
schedule = fixed
steps = 5

[observable.2]
kind = fidelity
schedule = linear
eps = 0.1

[observable.3]
kind = fidelity
schedule = quadratic
eps = 0.1
)";
  }
  if (id == "fig4a") {
    return R"([meta]
note = two-spin Heisenberg, sqrt(2)|psi0> = |up>(|up> + |down>), 3-CNOT bond circuit

[model]
type = heisenberg
n_qubits = 2
j = 1
field = 0

[initial]
state = 0+

[circuit]
gateset = S1
steps = 1
bond = 3cnot

[time]
max = pi
points = 41

[observable.1]
kind = magnetization
site = 1
exact = true

[observable.2]
kind = magnetization
site = 2
exact = true

[observable.3]
kind = total_magnetization
exact = true
)";
  }
  if (id == "fig4b") {
    return R"([meta]
note = three-spin open Heisenberg chain, J12 = J23 = 1, Bg = 20
note2 = step count n = 5 is a choice of this preset

[model]
type = heisenberg
n_qubits = 3
j = 1
field = 20

[initial]
state = 100

[circuit]
gateset = S1
steps = 5

[time]
max = pi
points = 41

[observable.1]
kind = probability
bits = 100
exact = true
)";
  }
  if (id == "fig4c") {
    return R"([meta]
note = two-spin transverse field Ising, Jzz = 1, Bg = 2 (x fields Bg/2 per site)
note2 = assumption: initial state |up up>, not stated for this panel
note3 = step count n = 5 is a choice of this preset

[model]
type = tim
n_qubits = 2
jzz = 1
field = 2

[initial]
state = 00

[circuit]
gateset = S1
steps = 5

[time]
max = pi
points = 41

[observable.1]
kind = total_magnetization
exact = true
)";
  }
  if (id == "fig6a" || id == "fig6b" || id == "fig6c") {
    const int k = id == "fig6a" ? 1 : (id == "fig6b" ? 2 : 3);
    return fmt::format(R"([meta]
note = three-spin Heisenberg, J12 = J23 = 1, Bg = 20, |down down down>, <s_x^({0})(t) s_x^(1)>

[model]
type = heisenberg
n_qubits = 3
j = 1
field = 20

[initial]
state = 111

[circuit]
gateset = S1
steps = 5

[time]
max = pi
points = 41

[observable.1]
kind = correlation
v = X
i = {0}
w = X
j = 1
route = ancilla
exact = true
)",
                       k);
  }
  std::string valid;
  for (const auto& f : figure_ids()) valid += (valid.empty() ? "" : ", ") + f;
  throw InputError(fmt::format("unknown figure '{}' (valid: {})", id, valid));
}

ExperimentConfig figure_preset(std::string_view id) {
  std::istringstream in(figure_config_text(id));
  return parse_config(in);
}

namespace {

double phase_aligned_error(const DenseUnitary& expected, const DenseUnitary& actual) {
  const Complex overlap = (expected.adjoint() * actual).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (actual - phase * expected).cwiseAbs().maxCoeff();
}

DenseUnitary exp_pauli(const std::string& letters, double delta) {
  return expm_hermitian(dense_matrix(PauliString(1.0, letters)), delta);
}

struct Checker {
  std::vector<VerifyCheck> checks;
  void add(std::string name, double err, double tol) {
    checks.push_back({std::move(name), err, tol, err <= tol});
  }
};

}  // namespace

std::vector<VerifyCheck> verify_suite(const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const GateMatrixFn matrix_of =
      options.matrix_override ? options.matrix_override
                              : GateMatrixFn([](const GateOp& op) { return gate_matrix(op); });
  auto unitary = [&](const Circuit& c) { return circuit_unitary(c, matrix_of); };
  const std::vector<Axis> axes{Axis::kX, Axis::kY, Axis::kZ};
  const std::vector<GateSet> sets{GateSet::kS1, GateSet::kS2, GateSet::kS3, GateSet::kS4};
  Checker out;
  constexpr double kTol = 1e-10;

  {
    double err = 0.0;
    for (int s = 0; s < options.samples; ++s) {
      const double theta = angle(rng), phi = angle(rng), lambda = angle(rng);
      for (int kind = 0; kind <= static_cast<int>(GateKind::kMsT4); ++kind) {
        const auto k = static_cast<GateKind>(kind);
        std::vector<double> params;
        const double pool[3] = {theta, phi, lambda};
        for (int p = 0; p < gate_param_count(k); ++p) params.push_back(pool[p]);
        std::vector<int> targets{1};
        if (is_two_qubit_kind(k) || k == GateKind::kMsT4) targets = {1, 2};
        const GateOp op{k, params, targets, {}};
        const DenseUnitary u = matrix_of(op);
        err = std::max(err, (u.adjoint() * u - DenseUnitary::Identity(u.rows(), u.cols()))
                                .cwiseAbs()
                                .maxCoeff());
        const DenseUnitary inv = matrix_of(inverse(op));
        err = std::max(err, (inv * u - DenseUnitary::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff());
      }
    }
    out.add("gate matrices unitary and inverse", err, kTol);
  }

  for (GateSet set : sets) {
    double err = 0.0, zz_err = 0.0;
    bool native = true;
    for (Axis a : axes) {
      for (Axis b : axes) {
        for (int s = 0; s < options.samples; ++s) {
          const double delta = angle(rng);
          const Circuit c = decompose_pauli_pair(a, b, delta, 1, 2, set, 2);
          for (const auto& op : c.ops()) native = native && in_gate_set(op, set);
          const std::string letters{axis_letter(a), axis_letter(b)};
          const double e = phase_aligned_error(exp_pauli(letters, delta), unitary(c));
          err = std::max(err, e);
          if (a == Axis::kZ && b == Axis::kZ) zz_err = std::max(zz_err, e);
        }
      }
    }
    out.add(fmt::format("ZZ decomposition {}", gate_set_name(set)), zz_err, kTol);
    out.add(fmt::format("pair exponentials {} (9 axis pairs)", gate_set_name(set)), err, kTol);
    out.add(fmt::format("pair circuits use only {} gates", gate_set_name(set)), native ? 0.0 : 1.0, 0.0);
  }

  {
    double err = 0.0;
    for (int s = 0; s < options.samples; ++s) {
      const double delta = angle(rng), floor = std::abs(angle(rng));
      err = std::max(err, phase_aligned_error(exp_pauli("ZZ", delta),
                                              unitary(zz_two_cphase(delta, 1, 2, 2, floor))));
      const double pos = std::abs(delta);
      err = std::max(err, phase_aligned_error(exp_pauli("ZZ", pos),
                                              unitary(zz_single_cphase(pos, 1, 2, 2))));
    }
    out.add("ZZ single- and two-CPHASE forms", err, kTol);
  }

  {
    PauliHamiltonian heis(2);
    for (const char* p : {"XX", "YY", "ZZ"}) heis.add(1.0, p);
    const Eigen::MatrixXcd hm = dense_matrix(heis);
    const std::vector<std::pair<HeisenbergVariant, int>> variants{
        {HeisenbergVariant::kSixCnot, 6}, {HeisenbergVariant::kThreeCnot, 3},
        {HeisenbergVariant::kThreeUxy, 3}, {HeisenbergVariant::kThreeCPhase, 3},
        {HeisenbergVariant::kS4, 5}};
    for (const auto& [variant, count] : variants) {
      double err = 0.0;
      for (int s = 0; s < options.samples; ++s) {
        const double delta = angle(rng);
        const Circuit c = heisenberg2_circuit(delta, 1, 2, variant, 2);
        err = std::max(err, phase_aligned_error(expm_hermitian(hm, delta), unitary(c)));
      }
      const Circuit probe = heisenberg2_circuit(0.3, 1, 2, variant, 2);
      out.add(fmt::format("Heisenberg bond {}", heisenberg_variant_name(variant)), err, kTol);
      out.add(fmt::format("Heisenberg bond {} two-qubit gate count == {}",
                          heisenberg_variant_name(variant), count),
              std::abs(static_cast<double>(probe.multi_qubit_gate_count()) - count), 0.0);
    }
  }

  for (GateSet set : sets) {
    double err = 0.0;
    for (int s = 0; s < options.samples; ++s) {
      const double delta = angle(rng);
      const Axis a = axes[static_cast<std::size_t>(s) % 3];
      const Axis b = axes[static_cast<std::size_t>(s / 3) % 3];
      const Axis c = axes[static_cast<std::size_t>(s / 9) % 3];
      const Circuit circ = decompose_multi_pauli({a, b, c}, delta, {1, 2, 4}, set, 4);
      const std::string letters{axis_letter(a), axis_letter(b), 'I', axis_letter(c)};
      err = std::max(err, phase_aligned_error(exp_pauli(letters, delta), unitary(circ)));
    }
    Circuit ref(2);
    ref.add(GateKind::kCnot, {1, 2});
    err = std::max(err, phase_aligned_error(unitary(ref), unitary(lowered_cnot(1, 2, set, 2))));
    out.add(fmt::format("three-qubit Pauli exponentials and CNOT in {}", gate_set_name(set)), err,
            kTol);
  }

  {
    // Random circuits: statevector kernels against the dense product.
    std::uniform_int_distribution<int> pick_kind(0, static_cast<int>(GateKind::kMsT4));
    double err = 0.0;
    const int n = 5;
    for (int s = 0; s < options.samples; ++s) {
      Circuit c(n);
      for (int g = 0; g < 20; ++g) {
        const auto k = static_cast<GateKind>(pick_kind(rng));
        std::vector<int> qubits{1, 2, 3, 4, 5};
        std::shuffle(qubits.begin(), qubits.end(), rng);
        const int arity = (is_two_qubit_kind(k) || k == GateKind::kMsT4) ? 2 : 1;
        std::vector<double> params;
        for (int p = 0; p < gate_param_count(k); ++p) params.push_back(angle(rng));
        GateOp op{k, params, {qubits.begin(), qubits.begin() + arity}, {}};
        if (g % 4 == 0) op.controls.push_back(qubits[static_cast<std::size_t>(arity)]);
        c.add(op);
      }
      StateVector psi = product_state("+0r1-");
      const auto amps = psi.amplitudes();
      const Eigen::VectorXcd expected =
          unitary(c) * Eigen::Map<const Eigen::VectorXcd>(amps.data(), static_cast<Eigen::Index>(amps.size()));
      run(c, psi);
      for (std::size_t k = 0; k < psi.amplitudes().size(); ++k) {
        err = std::max(err, std::abs(psi.amplitude(k) - expected(static_cast<Eigen::Index>(k))));
      }
    }
    out.add("statevector kernels vs dense product (5 qubits)", err, 1e-12);
  }

  {
    const int n = kernels::kParallelMinQubits + 1;
    std::uniform_int_distribution<int> pick_qubit(1, n);
    StateVector a = product_state(std::string(static_cast<std::size_t>(n), '+'));
    StateVector b = a;
    for (int g = 0; g < 12; ++g) {
      int q1 = pick_qubit(rng), q2 = pick_qubit(rng);
      while (q2 == q1) q2 = pick_qubit(rng);
      const GateOp ops[2] = {GateOp{GateKind::kU3, {angle(rng), angle(rng), angle(rng)}, {q1}, {}},
                             GateOp{GateKind::kUxy, {angle(rng)}, {q1, q2}, {}}};
      for (const auto& op : ops) {
        a.apply(op);
        b.apply_reference(op);
      }
    }
    double err = 0.0;
    for (std::size_t k = 0; k < a.amplitudes().size(); ++k) {
      err = std::max(err, std::abs(a.amplitude(k) - b.amplitude(k)));
    }
    out.add(fmt::format("parallel vs serial kernels ({} qubits)", n), err, 1e-12);
  }
  return out.checks;
}

bool print_verify_report(std::ostream& out, const std::vector<VerifyCheck>& checks) {
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    out << fmt::format("{} {:<58} max_err={:.3e} tol={:.1e}\n", c.passed ? "PASS" : "FAIL", c.name,
                       c.max_error, c.tolerance);
  }
  const auto failed = std::count_if(checks.begin(), checks.end(),
                                    [](const VerifyCheck& c) { return !c.passed; });
  out << fmt::format("{} checks, {} failed\n", checks.size(), failed);
  return all;
}

}  // namespace qdsim
