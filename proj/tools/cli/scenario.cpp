/* Copyright 2026 The spatialcv Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include "scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "spatialcv/error.hpp"

namespace spatialcv::cli {
namespace {

using json = nlohmann::json;

// Object reader that remembers which keys were consumed so leftovers can be
// reported as unknown fields.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ScenarioError(path_, "expected an object");
  }

  std::string at(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json& raw(const std::string& key) {
    if (!has(key)) throw ScenarioError(at(key), "required field is missing");
    return j_.at(key);
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) throw ScenarioError(at(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ScenarioError(at(key), "must be finite");
    return d;
  }

  double number(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  long long integer(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number_integer()) throw ScenarioError(at(key), "expected an integer");
    return v.get<long long>();
  }

  std::string string(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) throw ScenarioError(at(key), "expected a string");
    return v.get<std::string>();
  }

  std::optional<std::string> optional_string(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return string(key);
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) throw ScenarioError(at(key), "expected true or false");
    return v.get<bool>();
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) throw ScenarioError(at(item.key()), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

const json& array_at(Reader& r, const std::string& key) {
  const json& v = r.raw(key);
  if (!v.is_array()) throw ScenarioError(r.at(key), "expected an array");
  return v;
}

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

DofLabel parse_dof(const std::string& text, const std::string& path) {
  try {
    return dof_label_from_string(text);
  } catch (const Error& e) {
    throw ScenarioError(path, e.what());
  }
}

Representation parse_representation(const std::string& text, const std::string& path) {
  if (text == "position") return Representation::position;
  if (text == "wavevector") return Representation::wavevector;
  throw ScenarioError(path, "expected 'position' or 'wavevector'");
}

GridSpec parse_grid(const json& j, const std::string& path) {
  Reader r(j, path);
  GridSpec g;
  const long long n = r.integer("n");
  if (n < static_cast<long long>(Grid1D::kMinSamples) || n % 2 != 0) {
    throw ScenarioError(r.at("n"), "must be an even integer >= 8");
  }
  g.n = static_cast<std::size_t>(n);
  g.half_extent = r.optional_number("half_extent");
  if (g.half_extent && !(*g.half_extent > 0.0)) {
    throw ScenarioError(r.at("half_extent"), "must be > 0");
  }
  r.finish();
  return g;
}

ScaleSpec parse_scale(const json& j, const std::string& path) {
  Reader r(j, path);
  ScaleSpec s;
  s.k = r.optional_number("k");
  s.wavelength = r.optional_number("wavelength");
  s.d = r.optional_number("d");
  s.f_ref = r.optional_number("f_ref");
  r.finish();
  if (s.k.has_value() == s.wavelength.has_value()) {
    throw ScenarioError(path, "give exactly one of 'k' and 'wavelength'");
  }
  if (s.d.has_value() == s.f_ref.has_value()) {
    throw ScenarioError(path, "give exactly one of 'd' and 'f_ref'");
  }
  try {
    (void)s.build();
  } catch (const Error& e) {
    throw ScenarioError(path, e.what());
  }
  return s;
}

ClusterSpec parse_cluster(Reader& r) {
  const std::string topology = r.optional_string("topology").value_or("generic");
  const double w_p = r.number("w_p", RegularizationDefaults::w_p);
  if (!(w_p > 0.0)) throw ScenarioError(r.at("w_p"), "must be > 0");
  if (topology == "linear" || topology == "ring") {
    if (r.has("nodes") || r.has("edges")) {
      throw ScenarioError(r.at("topology"),
                          "photonic topologies fix their nodes and edges");
    }
    return topology == "linear" ? linear_cluster_spec(w_p) : ring_cluster_spec(w_p);
  }
  if (topology != "generic") {
    throw ScenarioError(r.at("topology"), "expected 'linear', 'ring' or 'generic'");
  }
  ClusterSpec spec;
  spec.w_p = w_p;
  const json& nodes = array_at(r, "nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto path = index_path(r.at("nodes"), i);
    if (!nodes[i].is_string()) throw ScenarioError(path, "expected a DOF label");
    spec.nodes.push_back(parse_dof(nodes[i].get<std::string>(), path));
  }
  if (r.has("edges")) {
    const json& edges = array_at(r, "edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      Reader e(edges[i], index_path(r.at("edges"), i));
      ClusterEdge edge{parse_dof(e.string("a"), e.at("a")),
                       parse_dof(e.string("b"), e.at("b")), e.number("weight", 1.0)};
      e.finish();
      spec.edges.push_back(edge);
    }
  }
  return spec;
}

StateSpec parse_state(const json& j, const std::string& path) {
  Reader r(j, path);
  StateSpec s;
  const std::string kind = r.string("kind");
  if (kind == "gaussian") {
    s.kind = StateSpec::Kind::gaussian;
    s.center_x = r.number("center_x", 0.0);
    s.center_p = r.number("center_p", 0.0);
    s.width = r.number("width", 1.0);
  } else if (kind == "hermite_gauss") {
    s.kind = StateSpec::Kind::hermite_gauss;
    if (r.has("coefficients")) {
      const json& c = array_at(r, "coefficients");
      for (std::size_t i = 0; i < c.size(); ++i) {
        const auto p = index_path(r.at("coefficients"), i);
        if (c[i].is_number()) {
          s.coefficients.emplace_back(c[i].get<double>(), 0.0);
        } else if (c[i].is_array() && c[i].size() == 2 && c[i][0].is_number() &&
                   c[i][1].is_number()) {
          s.coefficients.emplace_back(c[i][0].get<double>(), c[i][1].get<double>());
        } else {
          throw ScenarioError(p, "expected a number or [re, im]");
        }
      }
      if (r.has("order")) throw ScenarioError(r.at("order"), "conflicts with coefficients");
    } else {
      const long long order = r.integer("order");
      if (order < 0) throw ScenarioError(r.at("order"), "must be >= 0");
      s.order = static_cast<unsigned>(order);
    }
  } else if (kind == "epr") {
    s.kind = StateSpec::Kind::epr;
    s.q_total = r.number("q_total", 0.0);
    s.sigma_corr = r.number("sigma_corr", RegularizationDefaults::sigma_corr);
    s.sigma_env = r.number("sigma_env", RegularizationDefaults::sigma_env);
  } else if (kind == "spdc") {
    s.kind = StateSpec::Kind::spdc;
    Reader pump(r.raw("pump"), r.at("pump"));
    const std::string pk = pump.string("kind");
    if (pk == "plane_wave") {
      s.pump_kind = PumpProfile::Kind::plane_wave;
      s.pump_width = pump.number("regularization", RegularizationDefaults::sigma_pump);
    } else if (pk == "gaussian") {
      s.pump_kind = PumpProfile::Kind::gaussian;
      s.pump_width = pump.number("width");
    } else {
      throw ScenarioError(pump.at("kind"), "expected 'plane_wave' or 'gaussian'");
    }
    if (!(s.pump_width > 0.0)) throw ScenarioError(pump.at("width"), "must be > 0");
    pump.finish();
    s.envelope_width = r.optional_number("envelope_width");
  } else if (kind == "cluster") {
    s.kind = StateSpec::Kind::cluster;
    s.cluster = parse_cluster(r);
  } else {
    throw ScenarioError(r.at("kind"), "unknown state kind '" + kind + "'");
  }
  if (s.kind == StateSpec::Kind::epr || s.kind == StateSpec::Kind::spdc) {
    if (r.has("dofs")) {
      const json& d = array_at(r, "dofs");
      if (d.size() != 2 || !d[0].is_string() || !d[1].is_string()) {
        throw ScenarioError(r.at("dofs"), "expected two DOF labels");
      }
      s.labels = {parse_dof(d[0].get<std::string>(), index_path(r.at("dofs"), 0)),
                  parse_dof(d[1].get<std::string>(), index_path(r.at("dofs"), 1))};
      if (s.labels[0] == s.labels[1]) {
        throw ScenarioError(r.at("dofs"), "the two DOF labels must differ");
      }
    }
  }
  r.finish();
  return s;
}

ProgramStep parse_step(const json& j, const std::string& path) {
  Reader r(j, path);
  const std::string kind = r.string("gate");
  ProgramStep step{gate::Fourier{}, std::nullopt};
  if (kind == "propagate") {
    step.gate = gate::Propagate{r.number("z")};
  } else if (kind == "lens") {
    step.gate = gate::Lens{r.number("f")};
  } else if (kind == "fourier") {
    step.gate = gate::Fourier{r.optional_number("f")};
  } else if (kind == "frft") {
    const double theta = r.number("theta");
    step.gate = gate::Frft{theta, r.optional_number("f")};
  } else if (kind == "squeeze") {
    const double f1 = r.number("f1");
    step.gate = gate::Squeeze{f1, r.number("f2")};
  } else if (kind == "pauli_x") {
    step.gate = gate::PauliX{r.number("t")};
  } else if (kind == "pauli_z") {
    step.gate = gate::PauliZ{r.number("s")};
  } else if (kind == "phase_poly") {
    const long long n = r.integer("n");
    step.gate = gate::PhasePoly{static_cast<int>(n), r.number("alpha")};
  } else if (kind == "slm_mask") {
    step.gate = gate::SlmMask{r.string("mask")};
  } else {
    throw ScenarioError(r.at("gate"), "unknown gate kind '" + kind + "'");
  }
  if (auto dof = r.optional_string("dof")) step.dof = parse_dof(*dof, r.at("dof"));
  r.finish();
  try {
    validate(step.gate);
  } catch (const Error& e) {
    throw ScenarioError(path, e.what());
  }
  return step;
}

MeasurementSpec parse_measurement(const json& j, const std::string& path) {
  Reader r(j, path);
  MeasurementSpec m;
  if (auto dof = r.optional_string("dof")) m.dof = parse_dof(*dof, r.at("dof"));
  const std::string kind = r.optional_string("kind").value_or("position");
  if (kind == "quadrature") {
    m.quadrature = true;
    m.theta = r.number("theta");
  } else if (kind != "position") {
    throw ScenarioError(r.at("kind"), "expected 'position' or 'quadrature'");
  }
  m.outcome = r.optional_number("outcome");
  const bool sample = r.boolean("sample", !m.outcome.has_value());
  if (sample == m.outcome.has_value()) {
    throw ScenarioError(path, "give either an outcome or sample: true");
  }
  if (r.has("seed")) {
    if (!sample) throw ScenarioError(r.at("seed"), "only meaningful when sampling");
    const long long seed = r.integer("seed");
    if (seed < 0) throw ScenarioError(r.at("seed"), "must be >= 0");
    m.seed = static_cast<std::uint64_t>(seed);
  }
  r.finish();
  return m;
}

OutputSpec parse_output(const json& j, const std::string& path, std::size_t index) {
  Reader r(j, path);
  OutputSpec o;
  const std::string kind = r.string("kind");
  if (kind == "state") {
    o.kind = OutputSpec::Kind::state;
  } else if (kind == "marginal") {
    o.kind = OutputSpec::Kind::marginal;
  } else if (kind == "moments") {
    o.kind = OutputSpec::Kind::moments;
  } else if (kind == "phase_surface") {
    o.kind = OutputSpec::Kind::phase_surface;
  } else if (kind == "nullifiers") {
    o.kind = OutputSpec::Kind::nullifiers;
  } else if (kind == "fidelity_vs") {
    o.kind = OutputSpec::Kind::fidelity_vs;
  } else {
    throw ScenarioError(r.at("kind"), "unknown output kind '" + kind + "'");
  }
  if (auto rep = r.optional_string("representation")) {
    o.representation = parse_representation(*rep, r.at("representation"));
  }
  if (auto dof = r.optional_string("dof")) o.dof = parse_dof(*dof, r.at("dof"));
  if (o.kind == OutputSpec::Kind::nullifiers && r.has("w_p")) {
    const json& w = array_at(r, "w_p");
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!w[i].is_number() || !(w[i].get<double>() > 0.0)) {
        throw ScenarioError(index_path(r.at("w_p"), i), "expected a positive number");
      }
      o.w_p.push_back(w[i].get<double>());
    }
  }
  if (o.kind == OutputSpec::Kind::nullifiers) {
    o.require_decreasing = r.boolean("require_decreasing", false);
  }
  if (o.kind == OutputSpec::Kind::fidelity_vs) {
    if (r.has("reference")) {
      const json& ref = r.raw("reference");
      if (!(ref.is_string() && ref.get<std::string>() == "initial")) {
        o.reference = parse_state(ref, r.at("reference"));
      }
    }
    o.min_fidelity = r.optional_number("min");
  }
  o.name = r.optional_string("name").value_or(std::string(to_string(o.kind)) + "_" +
                                              std::to_string(index));
  for (char c : o.name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) {
      throw ScenarioError(r.at("name"), "use letters, digits, '_' or '-'");
    }
  }
  r.finish();
  return o;
}

}  // namespace

Grid1D GridSpec::build() const {
  return half_extent ? Grid1D(n, *half_extent) : Grid1D::self_dual(n);
}

ScaleContext ScaleSpec::build() const {
  if (!k && !wavelength) return ScaleContext::unit();
  const double kk = k ? *k : 2.0 * 3.14159265358979323846 / *wavelength;
  if (f_ref) return ScaleContext::for_focal_length(kk, *f_ref);
  return ScaleContext(kk, *d);
}

std::string_view to_string(StateSpec::Kind kind) {
  switch (kind) {
    case StateSpec::Kind::gaussian: return "gaussian";
    case StateSpec::Kind::hermite_gauss: return "hermite_gauss";
    case StateSpec::Kind::epr: return "epr";
    case StateSpec::Kind::spdc: return "spdc";
    case StateSpec::Kind::cluster: return "cluster";
  }
  return "unknown";
}

std::string_view to_string(OutputSpec::Kind kind) {
  switch (kind) {
    case OutputSpec::Kind::state: return "state";
    case OutputSpec::Kind::marginal: return "marginal";
    case OutputSpec::Kind::moments: return "moments";
    case OutputSpec::Kind::phase_surface: return "phase_surface";
    case OutputSpec::Kind::nullifiers: return "nullifiers";
    case OutputSpec::Kind::fidelity_vs: return "fidelity_vs";
  }
  return "unknown";
}

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError("<document>", std::string("not valid JSON: ") + e.what());
  }
  Reader r(doc, "");
  Scenario s;
  const long long version = r.integer("version");
  if (version != 1) throw ScenarioError("version", "only version 1 is supported");
  s.grid = parse_grid(r.raw("grid"), "grid");
  if (r.has("scale")) s.scale = parse_scale(r.raw("scale"), "scale");
  if (r.has("seed")) {
    const long long seed = r.integer("seed");
    if (seed < 0) throw ScenarioError("seed", "must be >= 0");
    s.seed = static_cast<std::uint64_t>(seed);
  }
  s.state = parse_state(r.raw("state"), "state");
  if (r.has("program")) {
    const json& p = array_at(r, "program");
    for (std::size_t i = 0; i < p.size(); ++i) {
      s.program.push_back(parse_step(p[i], index_path("program", i)));
    }
  }
  if (r.has("masks")) {
    const json& m = r.raw("masks");
    if (!m.is_object()) throw ScenarioError("masks", "expected an object of coefficient lists");
    for (const auto& item : m.items()) {
      const auto path = "masks." + item.key();
      if (!item.value().is_array()) throw ScenarioError(path, "expected an array");
      PhaseMask mask;
      for (const auto& c : item.value()) {
        if (!c.is_number()) throw ScenarioError(path, "coefficients must be numbers");
        mask.coefficients.push_back(c.get<double>());
      }
      s.masks[item.key()] = std::move(mask);
    }
  }
  if (r.has("execution")) {
    Reader e(r.raw("execution"), "execution");
    if (auto mode = e.optional_string("squeeze_mode")) {
      if (*mode == "ideal") {
        s.execution.squeeze_mode = SqueezeMode::ideal;
      } else if (*mode == "physical") {
        s.execution.squeeze_mode = SqueezeMode::physical;
      } else {
        throw ScenarioError(e.at("squeeze_mode"), "expected 'ideal' or 'physical'");
      }
    }
    if (auto px = e.optional_string("pauli_x")) {
      if (*px == "direct") {
        s.execution.pauli_x_method = PauliXMethod::direct;
      } else if (*px == "composed") {
        s.execution.pauli_x_method = PauliXMethod::composed;
      } else {
        throw ScenarioError(e.at("pauli_x"), "expected 'direct' or 'composed'");
      }
    }
    e.finish();
  }
  if (r.has("measurements")) {
    const json& m = array_at(r, "measurements");
    for (std::size_t i = 0; i < m.size(); ++i) {
      s.measurements.push_back(parse_measurement(m[i], index_path("measurements", i)));
    }
  }
  if (r.has("outputs")) {
    const json& o = array_at(r, "outputs");
    std::set<std::string> names;
    for (std::size_t i = 0; i < o.size(); ++i) {
      s.outputs.push_back(parse_output(o[i], index_path("outputs", i), i));
      if (!names.insert(s.outputs.back().name).second) {
        throw ScenarioError(index_path("outputs", i) + ".name", "duplicate output name");
      }
    }
  }
  if (r.has("tolerances")) {
    Reader t(r.raw("tolerances"), "tolerances");
    s.norm_tolerance = t.number("norm", Tolerances::norm_drift);
    if (!(s.norm_tolerance > 0.0)) throw ScenarioError("tolerances.norm", "must be > 0");
    t.finish();
  }
  r.finish();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("<scenario>", "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace spatialcv::cli
