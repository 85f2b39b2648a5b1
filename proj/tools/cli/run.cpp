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

#include <cmath>
#include <filesystem>
#include <iostream>
#include <random>
#include <variant>

#include <json.hpp>

#include "commands.hpp"
#include "io.hpp"
#include "scenario.hpp"
#include "spatialcv/entangle.hpp"
#include "spatialcv/error.hpp"
#include "spatialcv/gates.hpp"

namespace spatialcv::cli {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

using AnyState = std::variant<SampledWaveFunction1D, BipartiteWaveFunction, ClusterState>;

std::string at(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

// Fibres carrying less than this share of the probability are zeroed rather
// than pushed through a gate on their own; their renormalized shape is noise.
constexpr double kNegligibleFibre = 1e-24;

AnyState prepare(const StateSpec& s, const Grid1D& grid, const ScaleContext& scale,
                 const std::string& field) {
  try {
    switch (s.kind) {
      case StateSpec::Kind::gaussian:
        return make_gaussian(grid, s.center_x, s.center_p, s.width, scale);
      case StateSpec::Kind::hermite_gauss:
        if (!s.coefficients.empty()) {
          return make_hermite_superposition(grid, s.coefficients, scale);
        }
        return make_hermite_gauss(grid, s.order, scale);
      case StateSpec::Kind::epr:
        return fwm_entangle(s.q_total, s.sigma_corr, s.sigma_env, grid, grid, s.labels,
                            scale);
      case StateSpec::Kind::spdc: {
        const PumpProfile pump = s.pump_kind == PumpProfile::Kind::gaussian
                                     ? PumpProfile::gaussian(s.pump_width)
                                     : PumpProfile::plane_wave(s.pump_width);
        return spdc_state(pump, grid, grid, s.labels,
                          s.envelope_width.value_or(std::numeric_limits<double>::infinity()),
                          scale);
      }
      case StateSpec::Kind::cluster:
        return build_cluster(s.cluster, grid, scale);
    }
  } catch (const Error& e) {
    throw ScenarioError(field, e.what());
  }
  throw ScenarioError(field, "unknown state kind");
}

std::vector<std::string> labels_of(const AnyState& state) {
  std::vector<std::string> out;
  if (const auto* b = std::get_if<BipartiteWaveFunction>(&state)) {
    for (auto l : b->labels()) out.emplace_back(to_string(l));
  } else if (const auto* c = std::get_if<ClusterState>(&state)) {
    for (auto l : c->labels()) out.emplace_back(to_string(l));
  }
  return out;
}

// Applies a one-DOF gate to every position fibre along `axis`. Gates are
// linear and norm-preserving, so each fibre is normalized, transformed and
// scaled back.
BipartiteWaveFunction apply_on_axis(const BipartiteWaveFunction& psi, int axis,
                                    const GateDescriptor& g,
                                    const std::map<std::string, PhaseMask>& masks,
                                    const ExecutionOptions& exec) {
  const ScaleContext scale = psi.scale();
  const double partner = psi.spacing(1 - axis);
  auto op = [&](std::span<Complex> fibre, const Grid1D& grid) {
    double mass = 0.0;
    for (const auto& a : fibre) mass += std::norm(a);
    mass *= grid.spacing();
    if (mass * partner < kNegligibleFibre) {
      std::fill(fibre.begin(), fibre.end(), Complex{});
      return;
    }
    const double amplitude = std::sqrt(mass);
    auto state = SampledWaveFunction1D::normalized(
        grid, ComplexVector(fibre.begin(), fibre.end()), Representation::position, scale);
    state = in_representation(apply_gate(state, g, masks, exec), Representation::position);
    const auto& out = state.amplitudes();
    for (std::size_t j = 0; j < fibre.size(); ++j) fibre[j] = out[j] * amplitude;
  };
  return apply_along(psi, axis, op, "program step");
}

json moments_json(const MomentSummary& m) {
  return {{"mean_x", m.mean(0)},         {"mean_p", m.mean(1)},
          {"var_x", m.covariance(0, 0)}, {"var_p", m.covariance(1, 1)},
          {"cov_xp", m.covariance(0, 1)}, {"uncertainty_product", m.uncertainty_product()}};
}

json axis_moments_json(const BipartiteWaveFunction& psi, int axis) {
  json out;
  for (auto rep : {Representation::position, Representation::wavevector}) {
    const auto view = in_representation(psi, axis, rep);
    const auto rho = marginal(view, axis);
    const double dc = view.spacing(axis);
    double mean = 0.0;
    double second = 0.0;
    for (std::size_t j = 0; j < rho.size(); ++j) {
      const double c = view.coordinate(axis, j);
      mean += c * rho[j] * dc;
      second += c * c * rho[j] * dc;
    }
    const char* q = rep == Representation::position ? "x" : "p";
    out[std::string("mean_") + q] = mean;
    out[std::string("var_") + q] = second - mean * mean;
  }
  return out;
}

double bipartite_fidelity(const BipartiteWaveFunction& a, const BipartiteWaveFunction& b) {
  if (a.labels() != b.labels()) fail(ErrorCode::label_error, "DOF labels differ");
  const auto pa = in_position(a);
  const auto pb = in_position(b);
  const Complex s = (pa.amplitudes().conjugate().cwiseProduct(pb.amplitudes())).sum() *
                    pa.spacing(0) * pa.spacing(1);
  return std::norm(s);
}

const BipartiteWaveFunction* as_bipartite(const AnyState& state,
                                          std::optional<BipartiteWaveFunction>& storage,
                                          const std::string& field) {
  if (const auto* b = std::get_if<BipartiteWaveFunction>(&state)) return b;
  const auto& c = std::get<ClusterState>(state);
  if (c.size() != 2) {
    throw ScenarioError(field, "only available for clusters with two DOF");
  }
  storage = c.to_bipartite();
  return &*storage;
}

struct Check {
  std::string name;
  bool passed;
  double value;
  double threshold;
  std::string comparison;
};

class Runner {
 public:
  Runner(const Scenario& scenario, const RunOptions& options, fs::path out)
      : sc_(scenario), opt_(options), out_(std::move(out)) {}

  void execute(json& report) {
    GridSpec grid_spec = sc_.grid;
    if (opt_.grid_n) grid_spec.n = *opt_.grid_n;
    const Grid1D grid = grid_spec.build();
    const ScaleContext scale = sc_.scale.build();
    const std::optional<std::uint64_t> seed = opt_.seed ? opt_.seed : sc_.seed;
    report["effective"] = {
        {"grid",
         {{"n", grid.size()},
          {"half_extent", grid.half_extent()},
          {"dx", grid.spacing()},
          {"dp", grid.conjugate_spacing()},
          {"self_dual", !grid_spec.half_extent.has_value()}}},
        {"scale", {{"k", scale.wavenumber()}, {"d", scale.scale_d()}, {"kappa", scale.kappa()}}},
        {"seed", seed ? json(*seed) : json(nullptr)},
        {"trace", opt_.trace},
        {"execution",
         {{"squeeze_mode",
           sc_.execution.squeeze_mode == SqueezeMode::ideal ? "ideal" : "physical"},
          {"pauli_x", sc_.execution.pauli_x_method == PauliXMethod::direct ? "direct"
                                                                           : "composed"}}},
        {"norm_tolerance", sc_.norm_tolerance}};

    const AnyState initial = prepare(sc_.state, grid, scale, "state");
    report["state"] = {{"kind", to_string(sc_.state.kind)}, {"dofs", labels_of(initial)}};
    AnyState state = initial;

    run_program(state, report);
    run_measurements(state, report);
    run_outputs(initial, state, grid, scale, report);

    const double norm = std::visit(
        [](const auto& s) -> double {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, ClusterState>) {
            double total = 1.0;
            for (const auto& single : s.singles()) total *= single.state.norm();
            for (const auto& pair : s.pairs()) total *= pair.norm();
            return total;
          } else {
            return s.norm();
          }
        },
        state);
    add_check("final_norm", std::abs(norm - 1.0), sc_.norm_tolerance, "<=");
  }

  const std::vector<Check>& checks() const { return checks_; }
  std::vector<std::string>& files() { return files_; }

 private:
  void add_check(std::string name, double value, double threshold, const std::string& cmp) {
    const bool passed = cmp == "<=" ? value <= threshold
                        : cmp == "<" ? value < threshold
                                     : value >= threshold;
    checks_.push_back({std::move(name), passed, value, threshold, cmp});
  }

  void emit(const std::string& file, const std::string& content) {
    write_file(out_ / file, content);
    files_.push_back(file);
  }

  void run_program(AnyState& state, json& report) {
    json steps = json::array();
    std::string trace = "step,gate,dof,norm,mean_x,mean_p,var_x,cov_xp,var_p\n";
    auto trace_row = [&](std::size_t step, const std::string& gate, const std::string& dof,
                         const AnyState& s) {
      const std::string where = "trace step " + std::to_string(step);
      std::string row = std::to_string(step) + "," + gate + "," + dof;
      if (const auto* one = std::get_if<SampledWaveFunction1D>(&s)) {
        const auto m = moments(*one);
        for (double v : {one->norm(), m.mean(0), m.mean(1), m.covariance(0, 0),
                         m.covariance(0, 1), m.covariance(1, 1)}) {
          row += "," + format_number(v, where);
        }
      } else {
        row += "," + format_number(std::get<BipartiteWaveFunction>(s).norm(), where) +
               ",,,,,";
      }
      trace += row + "\n";
    };

    if (!sc_.program.empty() && std::holds_alternative<ClusterState>(state)) {
      throw ScenarioError("program",
                          "cluster states are prepared, measured and analysed; apply "
                          "gates to single- or two-DOF states");
    }
    if (std::holds_alternative<SampledWaveFunction1D>(state)) {
      auto& psi = std::get<SampledWaveFunction1D>(state);
      psi = psi.with_scale(sc_.scale.build());
      snapshots_.push_back(psi);
    }
    if (opt_.trace && !std::holds_alternative<ClusterState>(state)) {
      trace_row(0, "initial", "", state);
    }
    for (std::size_t i = 0; i < sc_.program.size(); ++i) {
      const auto& step = sc_.program[i];
      const std::string field = at("program", i);
      std::string dof_name;
      try {
        if (auto* psi = std::get_if<SampledWaveFunction1D>(&state)) {
          if (step.dof) {
            throw ScenarioError(field + ".dof", "the state has a single DOF; omit 'dof'");
          }
          *psi = apply_gate(*psi, step.gate, sc_.masks, sc_.execution);
          snapshots_.push_back(*psi);
        } else {
          auto& bip = std::get<BipartiteWaveFunction>(state);
          if (!step.dof) throw ScenarioError(field + ".dof", "required for two-DOF states");
          if (!bip.has(*step.dof)) {
            throw ScenarioError(field + ".dof", "the state has no DOF '" +
                                                    std::string(to_string(*step.dof)) + "'");
          }
          dof_name = std::string(to_string(*step.dof));
          bip = apply_on_axis(bip, bip.axis_of(*step.dof), step.gate, sc_.masks,
                              sc_.execution);
        }
      } catch (const Error& e) {
        throw ScenarioError(field, e.what());
      }
      steps.push_back({{"step", i}, {"gate", gate_name(step.gate)},
                       {"dof", dof_name.empty() ? json(nullptr) : json(dof_name)}});
      if (opt_.trace) trace_row(i + 1, gate_name(step.gate), dof_name, state);
    }
    report["program"] = steps;
    if (opt_.trace && !std::holds_alternative<ClusterState>(state)) emit("trace.csv", trace);
  }

  void run_measurements(AnyState& state, json& report) {
    json records = json::array();
    for (std::size_t i = 0; i < sc_.measurements.size(); ++i) {
      const auto& m = sc_.measurements[i];
      const std::string field = at("measurements", i);
      std::optional<std::uint64_t> effective_seed;
      if (!m.outcome) {
        if (opt_.seed) {
          effective_seed = *opt_.seed + i;
        } else if (m.seed) {
          effective_seed = *m.seed;
        } else if (sc_.seed) {
          effective_seed = *sc_.seed + i;
        } else {
          throw ScenarioError(field + ".seed", "sampling requires a seed (scenario 'seed' or --seed)");
        }
      }
      std::mt19937_64 rng(effective_seed.value_or(0));
      json rec = {{"index", i},
                  {"kind", m.quadrature ? "quadrature" : "position"},
                  {"sampled", !m.outcome.has_value()},
                  {"seed", effective_seed ? json(*effective_seed) : json(nullptr)}};
      if (m.quadrature) rec["theta"] = m.theta;
      try {
        if (auto* psi = std::get_if<SampledWaveFunction1D>(&state)) {
          if (m.dof) throw ScenarioError(field + ".dof", "the state has a single DOF; omit 'dof'");
          auto r = m.quadrature
                       ? (m.outcome ? measure_quadrature(*psi, m.theta, *m.outcome)
                                    : sample_quadrature(*psi, m.theta, rng))
                       : (m.outcome ? measure_position(*psi, *m.outcome)
                                    : sample_position(*psi, rng));
          record(rec, r);
          state = std::move(r.state);
        } else if (auto* bip = std::get_if<BipartiteWaveFunction>(&state)) {
          const DofLabel dof = require_dof(m.dof, labels_of(state), field);
          rec["dof"] = to_string(dof);
          const auto view =
              in_representation(*bip, bip->axis_of(dof), Representation::position);
          auto r = m.quadrature
                       ? (m.outcome ? measure_quadrature(view, dof, m.theta, *m.outcome)
                                    : sample_quadrature(view, dof, m.theta, rng))
                       : (m.outcome ? measure_position(view, dof, *m.outcome)
                                    : sample_position(view, dof, rng));
          record(rec, r);
          state = std::move(r.state);
        } else {
          auto& cluster = std::get<ClusterState>(state);
          const DofLabel dof = require_dof(m.dof, labels_of(state), field);
          rec["dof"] = to_string(dof);
          if (m.quadrature) {
            throw ScenarioError(field + ".kind",
                                "cluster states support position measurements only");
          }
          auto r = m.outcome ? measure_position(cluster, dof, *m.outcome)
                             : sample_position(cluster, dof, rng);
          record(rec, r);
          // Once few enough DOF remain, continue with the plain wave function
          // so single- and two-DOF outputs apply.
          const auto remaining = r.state.labels();
          if (remaining.size() == 1) {
            state = r.state.single(remaining.front());
          } else if (remaining.size() == 2) {
            state = r.state.to_bipartite();
          } else {
            state = std::move(r.state);
          }
        }
      } catch (const Error& e) {
        throw ScenarioError(field, e.what());
      }
      records.push_back(rec);
    }
    report["measurements"] = records;
  }

  template <class S>
  static void record(json& rec, const Measurement<S>& r) {
    rec["outcome"] = r.outcome;
    rec["density"] = r.density;
    rec["probability"] = r.probability;
    rec["grid_index"] = r.index;
  }

  static DofLabel require_dof(const std::optional<DofLabel>& dof,
                              const std::vector<std::string>& labels,
                              const std::string& field) {
    if (!dof) throw ScenarioError(field + ".dof", "required for multi-DOF states");
    for (const auto& l : labels) {
      if (l == to_string(*dof)) return *dof;
    }
    throw ScenarioError(field + ".dof",
                        "the state has no DOF '" + std::string(to_string(*dof)) + "'");
  }

  void run_outputs(const AnyState& initial, const AnyState& state, const Grid1D& grid,
                   const ScaleContext& scale, json& report) {
    json records = json::array();
    for (std::size_t i = 0; i < sc_.outputs.size(); ++i) {
      const auto& o = sc_.outputs[i];
      const std::string field = at("outputs", i);
      json rec = {{"name", o.name}, {"kind", to_string(o.kind)}};
      try {
        switch (o.kind) {
          case OutputSpec::Kind::state: output_state(o, state, field, rec); break;
          case OutputSpec::Kind::marginal: output_marginal(o, state, field, rec); break;
          case OutputSpec::Kind::moments: output_moments(o, state, field, rec); break;
          case OutputSpec::Kind::phase_surface: output_surface(o, state, field, rec); break;
          case OutputSpec::Kind::nullifiers:
            output_nullifiers(o, grid, scale, field, rec);
            break;
          case OutputSpec::Kind::fidelity_vs:
            output_fidelity(o, initial, state, grid, scale, field, rec);
            break;
        }
      } catch (const Error& e) {
        throw ScenarioError(field, e.what());
      }
      records.push_back(rec);
    }
    report["outputs"] = records;
  }

  void output_state(const OutputSpec& o, const AnyState& state, const std::string& field,
                    json& rec) {
    const auto* psi = std::get_if<SampledWaveFunction1D>(&state);
    if (!psi) throw ScenarioError(field + ".kind", "needs a single-DOF state; use phase_surface");
    if (o.dof) throw ScenarioError(field + ".dof", "the state has a single DOF; omit 'dof'");
    emit(o.name + ".csv", state_csv(in_representation(*psi, o.representation)));
    rec["files"] = {o.name + ".csv"};
  }

  void output_marginal(const OutputSpec& o, const AnyState& state, const std::string& field,
                       json& rec) {
    std::vector<double> coords;
    std::vector<double> rho;
    if (const auto* psi = std::get_if<SampledWaveFunction1D>(&state)) {
      if (o.dof) throw ScenarioError(field + ".dof", "the state has a single DOF; omit 'dof'");
      const auto view = in_representation(*psi, o.representation);
      rho = marginal(view, o.representation);
      for (std::size_t j = 0; j < rho.size(); ++j) coords.push_back(view.coordinate(j));
    } else {
      std::optional<BipartiteWaveFunction> storage;
      const auto* bip = as_bipartite(state, storage, field);
      const DofLabel dof = require_dof(o.dof, labels_of(state), field);
      const int axis = bip->axis_of(dof);
      const auto view = in_representation(*bip, axis, o.representation);
      rho = marginal(view, axis);
      for (std::size_t j = 0; j < rho.size(); ++j) coords.push_back(view.coordinate(axis, j));
      rec["dof"] = to_string(dof);
    }
    emit(o.name + ".csv", density_csv(coords, rho));
    rec["representation"] =
        o.representation == Representation::position ? "position" : "wavevector";
    rec["files"] = {o.name + ".csv"};
  }

  void output_moments(const OutputSpec& o, const AnyState& state, const std::string& field,
                      json& rec) {
    if (const auto* psi = std::get_if<SampledWaveFunction1D>(&state)) {
      if (o.dof) throw ScenarioError(field + ".dof", "the state has a single DOF; omit 'dof'");
      rec["moments"] = moments_json(moments(*psi));
      return;
    }
    std::optional<BipartiteWaveFunction> storage;
    const auto* bip = as_bipartite(state, storage, field);
    json per_dof;
    for (int axis = 0; axis < 2; ++axis) {
      if (o.dof && *o.dof != bip->label(axis)) continue;
      per_dof[std::string(to_string(bip->label(axis)))] = axis_moments_json(*bip, axis);
    }
    if (per_dof.is_null()) (void)require_dof(o.dof, labels_of(state), field);
    rec["moments"] = per_dof;
  }

  void output_surface(const OutputSpec& o, const AnyState& state, const std::string& field,
                      json& rec) {
    std::string corner;
    std::vector<double> rows;
    std::vector<double> cols;
    std::vector<std::vector<double>> mag;
    std::vector<std::vector<double>> phase;
    if (std::holds_alternative<SampledWaveFunction1D>(state)) {
      // One row per program step: the evolution of the field through the program.
      corner = "step";
      for (std::size_t s = 0; s < snapshots_.size(); ++s) {
        const auto view = in_representation(snapshots_[s], o.representation);
        if (s == 0) {
          for (std::size_t j = 0; j < view.grid().size(); ++j) cols.push_back(view.coordinate(j));
        }
        rows.push_back(static_cast<double>(s));
        mag.emplace_back();
        phase.emplace_back();
        for (const auto& a : view.amplitudes()) {
          mag.back().push_back(std::abs(a));
          phase.back().push_back(std::arg(a));
        }
      }
      rec["rows"] = "program step";
    } else {
      std::optional<BipartiteWaveFunction> storage;
      auto view = *as_bipartite(state, storage, field);
      view = in_representation(in_representation(view, 0, o.representation), 1,
                               o.representation);
      corner = std::string(to_string(view.label(0))) + "\\" +
               std::string(to_string(view.label(1)));
      for (std::size_t j = 0; j < view.grid(0).size(); ++j) rows.push_back(view.coordinate(0, j));
      for (std::size_t j = 0; j < view.grid(1).size(); ++j) cols.push_back(view.coordinate(1, j));
      const auto& a = view.amplitudes();
      for (Eigen::Index r = 0; r < a.rows(); ++r) {
        mag.emplace_back();
        phase.emplace_back();
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
          mag.back().push_back(std::abs(a(r, c)));
          phase.back().push_back(std::arg(a(r, c)));
        }
      }
      rec["rows"] = to_string(view.label(0));
      rec["columns"] = to_string(view.label(1));
    }
    emit(o.name + "_magnitude.csv", matrix_csv(corner, rows, cols, mag));
    emit(o.name + "_phase.csv", matrix_csv(corner, rows, cols, phase));
    rec["representation"] =
        o.representation == Representation::position ? "position" : "wavevector";
    rec["files"] = {o.name + "_magnitude.csv", o.name + "_phase.csv"};
  }

  void output_nullifiers(const OutputSpec& o, const Grid1D& grid, const ScaleContext& scale,
                         const std::string& field, json& rec) {
    if (sc_.state.kind != StateSpec::Kind::cluster) {
      throw ScenarioError(field + ".kind", "needs a cluster state");
    }
    std::vector<double> ladder = o.w_p;
    if (ladder.empty()) ladder.push_back(sc_.state.cluster.w_p);
    const auto& nodes = sc_.state.cluster.nodes;
    std::vector<std::vector<double>> table(nodes.size());
    for (double w : ladder) {
      ClusterSpec spec = sc_.state.cluster;
      spec.w_p = w;
      const ClusterState cluster = build_cluster(spec, grid, scale);
      for (std::size_t n = 0; n < nodes.size(); ++n) {
        const auto hood = neighbourhood(spec, nodes[n]);
        table[n].push_back(nullifier_variance(cluster, nodes[n], hood.nodes, hood.weights));
      }
    }
    std::string csv = "node";
    for (double w : ladder) csv += ",w_p=" + format_number(w, field + ".w_p");
    csv += "\n";
    json values;
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      const std::string label(to_string(nodes[n]));
      csv += label;
      for (double v : table[n]) csv += "," + format_number(v, field + " " + label);
      csv += "\n";
      values[label] = table[n];
      if (o.require_decreasing && ladder.size() > 1) {
        double worst = 0.0;
        for (std::size_t k = 1; k < table[n].size(); ++k) {
          worst = std::max(worst, table[n][k] / table[n][k - 1]);
        }
        add_check(o.name + ".decreasing." + label, worst, 1.0, "<");
      }
    }
    emit(o.name + ".csv", csv);
    rec["w_p"] = ladder;
    rec["variances"] = values;
    rec["files"] = {o.name + ".csv"};
  }

  void output_fidelity(const OutputSpec& o, const AnyState& initial, const AnyState& state,
                       const Grid1D& grid, const ScaleContext& scale,
                       const std::string& field, json& rec) {
    const AnyState reference =
        o.reference ? prepare(*o.reference, grid, scale, field + ".reference") : initial;
    double f = 0.0;
    if (const auto* a = std::get_if<SampledWaveFunction1D>(&state)) {
      const auto* b = std::get_if<SampledWaveFunction1D>(&reference);
      if (!b) throw ScenarioError(field + ".reference", "DOF count differs from the state");
      f = fidelity(*b, a->with_scale(b->scale()));
    } else if (const auto* a = std::get_if<BipartiteWaveFunction>(&state)) {
      const auto* b = std::get_if<BipartiteWaveFunction>(&reference);
      if (!b) throw ScenarioError(field + ".reference", "DOF count differs from the state");
      f = bipartite_fidelity(*b, *a);
    } else {
      throw ScenarioError(field + ".kind", "not available for cluster states");
    }
    rec["reference"] = o.reference ? json(to_string(o.reference->kind)) : json("initial");
    rec["fidelity"] = f;
    if (o.min_fidelity) add_check(o.name, f, *o.min_fidelity, ">=");
  }

  const Scenario& sc_;
  const RunOptions& opt_;
  fs::path out_;
  std::vector<Check> checks_;
  std::vector<std::string> files_;
  std::vector<SampledWaveFunction1D> snapshots_;
};

}  // namespace

int run_command(const RunOptions& options, std::ostream& log) {
  const fs::path out(options.out_dir);
  json report = {{"version", 1}, {"scenario", fs::path(options.scenario_path).filename().string()}};
  json warnings = json::array();
  set_warning_sink([&](std::string_view w) {
    warnings.push_back(std::string(w));
    log << "warning: " << w << "\n";
  });
  int code = kExitOk;
  std::vector<std::string> files;
  try {
    fs::create_directories(out);
  } catch (const fs::filesystem_error& e) {
    log << "error: out: " << e.what() << "\n";
    set_warning_sink([](std::string_view w) { std::cerr << "warning: " << w << "\n"; });
    return kExitError;
  }
  try {
    if (options.grid_n && (*options.grid_n < Grid1D::kMinSamples || *options.grid_n % 2)) {
      throw ScenarioError("--grid-n", "must be an even integer >= 8");
    }
    const Scenario scenario = load_scenario(options.scenario_path);
    Runner runner(scenario, options, out);
    try {
      runner.execute(report);
    } catch (...) {
      files = runner.files();
      throw;
    }
    files = runner.files();
    json checks = json::array();
    bool all_passed = true;
    for (const auto& c : runner.checks()) {
      checks.push_back({{"name", c.name},
                        {"passed", c.passed},
                        {"value", c.value},
                        {"threshold", c.threshold},
                        {"comparison", c.comparison}});
      all_passed = all_passed && c.passed;
      log << (c.passed ? "PASS " : "FAIL ") << c.name << " = " << c.value << " ("
          << c.comparison << " " << c.threshold << ")\n";
    }
    report["checks"] = checks;
    code = all_passed ? kExitOk : kExitCheckFailed;
    report["status"] = all_passed ? "ok" : "check_failed";
  } catch (const ScenarioError& e) {
    report["status"] = "error";
    report["error"] = {{"field", e.field()}, {"message", e.what()}};
    log << "error: " << e.what() << "\n";
    code = kExitError;
  } catch (const NonFiniteError& e) {
    report["status"] = "error";
    report["error"] = {{"field", "outputs"}, {"message", e.what()}};
    log << "error: " << e.what() << "\n";
    code = kExitError;
  } catch (const std::exception& e) {
    report["status"] = "error";
    report["error"] = {{"field", "<run>"}, {"message", e.what()}};
    log << "error: " << e.what() << "\n";
    code = kExitError;
  }
  report["warnings"] = warnings;
  report["files"] = files;
  report["exit_code"] = code;
  set_warning_sink([](std::string_view w) { std::cerr << "warning: " << w << "\n"; });
  try {
    write_json(out / "report.json", report);
  } catch (const std::exception& e) {
    log << "error: report: " << e.what() << "\n";
    // Drop the values that cannot be serialized and keep the failure visible.
    json minimal = {{"version", 1}, {"status", "error"}, {"exit_code", kExitError},
                    {"error", {{"field", "report"}, {"message", e.what()}}}};
    write_json(out / "report.json", minimal);
    return kExitError;
  }
  return code;
}

}  // namespace spatialcv::cli
