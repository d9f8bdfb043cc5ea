#include "aqsim/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "aqsim/aqc.hpp"
#include "aqsim/gatearray.hpp"
#include "aqsim/geomphase.hpp"
#include "aqsim/measure.hpp"

namespace aqsim {

namespace {

using Json = nlohmann::json;
using Artifacts = std::map<std::string, std::string>;

[[noreturn]] void config_fail(const std::string& msg) {
  fail(ErrorCode::kConfig, msg);
}

const Json& member(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key))
    config_fail("missing required field '" + path + "'");
  return obj.at(key);
}

double number_at(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = member(obj, key, path);
  if (!v.is_number()) config_fail("field '" + path + "' must be a number");
  return v.get<double>();
}

double number_or(const Json& obj, const std::string& key, double fallback,
                 const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return number_at(obj, key, path);
}

int int_or(const Json& obj, const std::string& key, int fallback,
           const std::string& path) {
  const double v = number_or(obj, key, fallback, path);
  if (v != std::floor(v)) config_fail("field '" + path + "' must be an integer");
  return static_cast<int>(v);
}

std::string string_or(const Json& obj, const std::string& key,
                      const std::string& fallback, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_string()) config_fail("field '" + path + "' must be a string");
  return v.get<std::string>();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Options (CLI flags forwarded as JSON)
// ---------------------------------------------------------------------------

struct Options {
  std::uint64_t seed = 0;
  int jobs = 1;
  double tolerance = 1e-10;
  bool hz = false;
  Json raw;
};

Options parse_options(const Json& j) {
  Options o;
  o.raw = j;
  if (j.contains("seed")) {
    const Json& s = j.at("seed");
    if (!s.is_number_integer() && !s.is_number_unsigned())
      config_fail("field 'seed' must be an integer");
    o.seed = s.get<std::uint64_t>();
  }
  o.jobs = int_or(j, "jobs", 1, "jobs");
  if (o.jobs < 1) config_fail("field 'jobs' must be at least 1");
  o.tolerance = number_or(j, "tolerance", 1e-10, "tolerance");
  const std::string units = string_or(j, "hbar_units", "angular", "hbar_units");
  if (units == "hz")
    o.hz = true;
  else if (units != "angular")
    config_fail("field 'hbar_units' must be 'angular' or 'hz'");
  return o;
}

IntegrationOptions integration_options(const Options& o) {
  IntegrationOptions io;
  io.tolerance = o.tolerance;
  return io;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& work) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::exception_ptr err;
  auto drain = [&] {
    for (;;) {
      if (stop.load()) return;
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
        stop.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int j = 0; j < jobs; ++j) pool.emplace_back(drain);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// ---------------------------------------------------------------------------
// Model construction
// ---------------------------------------------------------------------------

// Parameters that carry frequency units and pick up 2 pi under --hbar-units hz.
const std::map<std::string, std::vector<std::string>>& frequency_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"nmr_single", {"omega0", "omega1", "omega", "r"}},
      {"nmr_two_qubit", {"omega_a0", "omega1", "omega", "j"}},
      {"nmr_conditional", {"omega_a0", "omega1", "omega", "j"}},
      {"josephson", {"ej", "ec"}},
      {"tripod", {"omega"}},
      {"ion_two_bit", {"omega1", "omegaa", "delta"}},
  };
  return keys;
}

Json scaled_params(const std::string& type, Json params, bool hz) {
  if (!hz) return params;
  const auto it = frequency_keys().find(type);
  if (it == frequency_keys().end()) return params;
  for (const std::string& key : it->second)
    if (params.contains(key) && params.at(key).is_number())
      params[key] = 2.0 * M_PI * params.at(key).get<double>();
  return params;
}

Schedule parse_schedule(const Json& config) {
  const Json& sj = member(config, "schedule", "schedule");
  Schedule s;
  s.T = number_at(sj, "T", "schedule.T");
  if (!(s.T > 0.0)) config_fail("field 'schedule.T' must be positive");
  s.shape = shape_from_name(string_or(sj, "shape", "linear", "schedule.shape"));
  return s;
}

HamiltonianPath build_path(const Json& config, bool hz) {
  const Json& model = member(config, "model", "model");
  const std::string type =
      member(model, "type", "model.type").is_string()
          ? model.at("type").get<std::string>()
          : (config_fail("field 'model.type' must be a string"), "");
  const Schedule sched = parse_schedule(config);
  const Json params = scaled_params(
      type, model.contains("params") ? model.at("params") : Json::object(), hz);

  auto req = [&params](const char* key) {
    return number_at(params, key, std::string("model.params.") + key);
  };
  auto opt = [&params](const char* key, double fallback) {
    return number_or(params, key, fallback, std::string("model.params.") + key);
  };

  if (type == "nmr_single") {
    NmrParams p;
    if (params.contains("r") || params.contains("theta")) {
      const double r = req("r"), theta = req("theta");
      p.omega0 = r * std::cos(theta);
      p.omega1 = r * std::sin(theta);
      p.omega = 0.0;
    } else {
      p.omega0 = req("omega0");
      p.omega1 = req("omega1");
      p.omega = opt("omega", 0.0);
    }
    p.phi_start = opt("phi_start", 0.0);
    p.turns = opt("turns", 1.0);
    return nmr_single_path(p, sched);
  }
  if (type == "nmr_two_qubit" || type == "nmr_conditional") {
    NmrTwoQubitParams p;
    p.omega_a0 = req("omega_a0");
    p.omega1 = req("omega1");
    p.omega = opt("omega", 0.0);
    p.j = req("j");
    p.phi_start = opt("phi_start", 0.0);
    p.turns = opt("turns", 1.0);
    if (type == "nmr_conditional")
      return nmr_conditional_path(p, sched, opt("partner_up", 1.0) != 0.0);
    return nmr_two_qubit_path(p, sched);
  }
  if (type == "josephson") {
    JosephsonParams p;
    p.ej = req("ej");
    p.ec = req("ec");
    p.n_off = opt("n_off", 0.5);
    p.alpha_start = opt("alpha_start", 0.0);
    p.turns = opt("turns", 1.0);
    return josephson_charge_path(p, sched);
  }
  if (type == "tripod") {
    TripodParams p;
    p.omega = req("omega");
    p.theta = req("theta");
    p.phi_start = opt("phi_start", 0.0);
    p.turns = opt("turns", 1.0);
    p.loop = string_or(model, "loop", "spherical", "model.loop");
    p.chi0 = opt("chi0", 0.0);
    p.chi1 = opt("chi1", 0.0);
    p.chia = opt("chia", 0.0);
    return tripod_ion_path(p, sched);
  }
  if (type == "ion_two_bit") {
    IonTwoBitParams p;
    p.omega1 = req("omega1");
    p.omegaa = req("omegaa");
    p.eta = req("eta");
    p.delta = req("delta");
    p.phi_start = opt("phi_start", 0.0);
    p.turns = opt("turns", 1.0);
    return ion_two_bit_path(p, sched);
  }
  config_fail("unknown model type '" + type + "'");
}

Vector parse_state(const Json& arr, int dim, const std::string& path) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != dim)
    config_fail("field '" + path + "' must list " + std::to_string(dim) +
                " amplitudes");
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    const Json& e = arr.at(i);
    if (e.is_number()) {
      v(i) = Complex(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2 && e.at(0).is_number() &&
               e.at(1).is_number()) {
      v(i) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    } else {
      config_fail("field '" + path + "' entries must be numbers or [re, im]");
    }
  }
  return v;
}

// Amplitudes on the t = 0 eigenbasis, from initial.level/sub or an explicit
// amplitude list.
Vector initial_amplitudes(const Json& config, const HamiltonianPath& path,
                          int* level_out = nullptr) {
  const Json init =
      config.contains("initial") ? config.at("initial") : Json{{"level", 0}};
  if (init.contains("amplitudes")) {
    if (level_out) *level_out = -1;
    return parse_state(init.at("amplitudes"), path.dim(), "initial.amplitudes");
  }
  const int level = int_or(init, "level", 0, "initial.level");
  const int sub = int_or(init, "sub", 0, "initial.sub");
  const Frame f0 = path.frame(0.0);
  if (level < 0 || level >= f0.block_count())
    config_fail("field 'initial.level' out of range");
  if (sub < 0 || sub >= f0.block(level).dim)
    config_fail("field 'initial.sub' out of range");
  if (level_out) *level_out = level;
  Vector a0 = Vector::Zero(path.dim());
  a0(f0.column(level, sub)) = 1.0;
  return a0;
}

int run_steps(const Json& config) {
  const Json run = config.contains("run") ? config.at("run") : Json::object();
  const int steps = int_or(run, "steps", 10000, "run.steps");
  if (steps < 2) config_fail("field 'run.steps' must be at least 2");
  return steps;
}

Json state_json(const Vector& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i)
    arr.push_back(Json::array({v(i).real(), v(i).imag()}));
  return arr;
}

Json phases_json(const PhaseLedger& ledger) {
  Json blocks = Json::array();
  for (const BlockPhase& b : ledger.blocks) {
    Json entry;
    entry["level"] = b.level;
    entry["dim"] = b.dim;
    entry["eta"] = b.eta;
    if (b.dim == 1)
      entry["gamma"] = b.gamma;
    else
      entry["gamma"] = nullptr;
    blocks.push_back(entry);
  }
  return blocks;
}

Json base_summary(const std::string& command, const Json& config, const Options& opt) {
  Json s;
  s["schema"] = 1;
  s["command"] = command;
  s["hbar_units"] = opt.hz ? "hz" : "angular";
  s["tolerance"] = opt.tolerance;
  if (config.contains("model")) s["model"] = config.at("model");
  if (config.contains("schedule")) s["schedule"] = config.at("schedule");
  return s;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Verbs
// ---------------------------------------------------------------------------

Artifacts run_evolve(const Json& config, const Options& opt) {
  const HamiltonianPath path = build_path(config, opt.hz);
  const Vector a0 = initial_amplitudes(config, path);
  const IntegrationOptions iopts = integration_options(opt);
  const int steps = run_steps(config);
  const Json run = config.contains("run") ? config.at("run") : Json::object();
  const int samples = int_or(run, "samples", 200, "run.samples");
  if (samples < 2) config_fail("field 'run.samples' must be at least 2");

  const double T = path.duration();
  std::vector<double> times;
  times.reserve(samples + 1);
  for (int k = 0; k <= samples; ++k) times.push_back(T * k / samples);

  const std::vector<FirstOrderResult> first =
      first_order_samples(path, a0, times, steps);
  const Vector psi0 = path.frame(0.0).eigenvectors * a0;
  const EvolutionResult exact = integrate_schrodinger(path, psi0, times, iopts);
  const DeviationSummary devs = measure_deviation(path, a0, iopts, 32, steps);

  std::string csv = "time,eps_first,dev_exact";
  for (int c = 0; c < path.dim(); ++c)
    csv += ",exact_" + std::to_string(c) + "_re,exact_" + std::to_string(c) + "_im";
  for (int c = 0; c < path.dim(); ++c)
    csv +=
        ",zeroth_" + std::to_string(c) + "_re,zeroth_" + std::to_string(c) + "_im";
  csv += "\n";
  for (size_t i = 0; i < times.size(); ++i) {
    csv += fmt(times[i]) + "," + fmt(first[i].correction_norm) + "," +
           fmt((exact.states[i] - first[i].zeroth).norm());
    for (int c = 0; c < path.dim(); ++c)
      csv += "," + fmt(exact.states[i](c).real()) + "," +
             fmt(exact.states[i](c).imag());
    for (int c = 0; c < path.dim(); ++c)
      csv += "," + fmt(first[i].zeroth(c).real()) + "," +
             fmt(first[i].zeroth(c).imag());
    csv += "\n";
  }

  Json s = base_summary("evolve", config, opt);
  s["results"] = {{"T", T},
                  {"eps_first_window", devs.eps_first},
                  {"dev_exact_window", devs.dev_exact},
                  {"eps_final", devs.eps_final},
                  {"dev_final", devs.dev_final},
                  {"estimate", devs.estimate},
                  {"regime_ratio", devs.regime_ratio},
                  {"regime_ok", devs.regime_ok},
                  {"norm_drift", exact.norm_drift},
                  {"steps_taken", exact.steps_taken}};
  s["phases"] = phases_json(phase_ledger(path, T, steps));
  return {{"summary.json", dump(s)}, {"timeseries.csv", csv}};
}

Json apply_param(Json config, const std::string& param, double value) {
  if (param == "T" || param == "schedule.T") {
    config["schedule"]["T"] = value;
  } else if (param.rfind("model.params.", 0) == 0) {
    config["model"]["params"][param.substr(13)] = value;
  } else if (param.rfind("schedule.", 0) == 0) {
    config["schedule"][param.substr(9)] = value;
  } else {
    config["model"]["params"][param] = value;
  }
  return config;
}

Artifacts run_sweep(const Json& config, const Options& opt) {
  const std::string param = string_or(opt.raw, "param", "", "param");
  if (param.empty()) config_fail("missing required field 'param'");
  const int points = int_or(opt.raw, "points", 0, "points");
  if (points < 3) config_fail("sweep needs at least 3 points");
  const double lo = number_at(opt.raw, "min", "min");
  const double hi = number_at(opt.raw, "max", "max");
  const bool log_spacing = opt.raw.value("log", true);
  if (log_spacing && !(lo > 0.0 && hi > 0.0))
    config_fail("log spacing needs positive bounds");
  if (!(hi > lo)) config_fail("sweep needs max > min");

  std::vector<double> values(points);
  for (int i = 0; i < points; ++i) {
    const double u = static_cast<double>(i) / (points - 1);
    values[i] = log_spacing ? lo * std::pow(hi / lo, u) : lo + (hi - lo) * u;
  }

  const IntegrationOptions iopts = integration_options(opt);
  struct Row {
    double eps_first, dev_exact, estimate, gamma;
  };
  std::vector<Row> rows(points);
  parallel_for(points, opt.jobs, [&](int i) {
    const Json c = apply_param(config, param, values[i]);
    const HamiltonianPath path = build_path(c, opt.hz);
    int level = -1;
    const Vector a0 = initial_amplitudes(c, path, &level);
    const int steps = run_steps(c);
    const DeviationSummary d = measure_deviation(path, a0, iopts, 32, steps);
    double gamma = std::numeric_limits<double>::quiet_NaN();
    if (level >= 0 && path.frame(0.0).block(level).dim == 1)
      gamma = berry_phase(path, level, path.duration(), steps);
    rows[i] = {d.eps_first, d.dev_exact, d.estimate, gamma};
  });

  std::string csv = "param,eps_first,dev_exact,estimate,gamma\n";
  for (int i = 0; i < points; ++i)
    csv += fmt(values[i]) + "," + fmt(rows[i].eps_first) + "," +
           fmt(rows[i].dev_exact) + "," + fmt(rows[i].estimate) + "," +
           fmt(rows[i].gamma) + "\n";

  Json s = base_summary("sweep", config, opt);
  s["sweep"] = {{"param", param},
                {"points", points},
                {"min", lo},
                {"max", hi},
                {"log", log_spacing}};
  auto column = [&rows](double Row::* f) {
    std::vector<double> v;
    for (const Row& r : rows) v.push_back(r.*f);
    return v;
  };
  Json slopes;
  try {
    slopes["eps_first"] = fit_loglog_slope(values, column(&Row::eps_first));
    slopes["dev_exact"] = fit_loglog_slope(values, column(&Row::dev_exact));
  } catch (const Error&) {
    slopes = nullptr;  // non-positive samples, no log-log fit
  }
  s["slopes"] = slopes;
  return {{"summary.json", dump(s)}, {"sweep.csv", csv}};
}

Artifacts run_berry(const Json& config, const Options& opt) {
  const HamiltonianPath path = build_path(config, opt.hz);
  const int steps = run_steps(config);
  int level = -1;
  initial_amplitudes(config, path, &level);

  Json s = base_summary("berry", config, opt);
  s["phases"] = phases_json(phase_ledger(path, path.duration(), steps));
  s["closed"] = path.closed();
  if (level >= 0 && path.frame(0.0).block(level).dim == 1) {
    s["level"] = level;
    s["gamma"] = berry_phase(path, level, path.duration(), steps);
    s["eta"] = s["phases"][level]["eta"];
  } else {
    s["level"] = level;
    s["gamma"] = nullptr;
  }
  return {{"summary.json", dump(s)}};
}

Artifacts run_holonomy(const Json& config, const Options& opt) {
  const HamiltonianPath path = build_path(config, opt.hz);
  const int steps = run_steps(config);
  int level = 0;
  initial_amplitudes(config, path, &level);
  if (level < 0) config_fail("holonomy needs initial.level");

  const Matrix v = wz_holonomy(path, level, path.duration(), steps);
  Json matrix = Json::array();
  for (int r = 0; r < v.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < v.cols(); ++c)
      row.push_back(Json::array({v(r, c).real(), v(r, c).imag()}));
    matrix.push_back(row);
  }
  Eigen::ComplexEigenSolver<Matrix> es(v);
  std::vector<double> eigenphases;
  for (int i = 0; i < v.rows(); ++i)
    eigenphases.push_back(std::arg(es.eigenvalues()(i)));
  std::sort(eigenphases.begin(), eigenphases.end());

  Json s = base_summary("holonomy", config, opt);
  s["holonomy"] = {
      {"level", level},
      {"dim", static_cast<int>(v.rows())},
      {"matrix", matrix},
      {"eigenphases", eigenphases},
      {"unitarity", (v.adjoint() * v - Matrix::Identity(v.rows(), v.cols())).norm()}};
  if (v.rows() == 1) s["holonomy"]["gamma"] = std::arg(v(0, 0));
  return {{"summary.json", dump(s)}};
}

Artifacts run_gatearray(const Json& config, const Options& opt) {
  const Json& ga = member(config, "gatearray", "gatearray");
  GateSchedule schedule;
  schedule.qubit_count = int_or(ga, "qubit_count", 0, "gatearray.qubit_count");
  schedule.idle_z =
      (opt.hz ? 2.0 * M_PI : 1.0) * number_or(ga, "idle_z", 0.0, "gatearray.idle_z");

  const Json& rounds = member(ga, "rounds", "gatearray.rounds");
  if (!rounds.is_array() || rounds.empty())
    config_fail("field 'gatearray.rounds' must be a non-empty array");
  for (size_t r = 0; r < rounds.size(); ++r) {
    const std::string rp = "gatearray.rounds[" + std::to_string(r) + "]";
    Round round;
    round.duration = number_at(rounds.at(r), "duration", rp + ".duration");
    const Json& gates = member(rounds.at(r), "gates", rp + ".gates");
    if (!gates.is_array()) config_fail("field '" + rp + ".gates' must be an array");
    for (size_t g = 0; g < gates.size(); ++g) {
      const std::string gp = rp + ".gates[" + std::to_string(g) + "]";
      const Json& gj = gates.at(g);
      Json sub;
      sub["model"] = member(gj, "model", gp + ".model");
      sub["schedule"] = gj.contains("schedule")
                            ? gj.at("schedule")
                            : Json{{"shape", "linear"}, {"T", round.duration}};
      const Json& qubits = member(gj, "qubits", gp + ".qubits");
      if (!qubits.is_array()) config_fail("field '" + gp + ".qubits' must be an array");
      std::vector<int> qs;
      for (const Json& q : qubits) {
        if (!q.is_number_integer()) config_fail("field '" + gp + ".qubits' must hold integers");
        qs.push_back(q.get<int>());
      }
      const std::string kind = string_or(gj, "kind", "berry", gp + ".kind");
      if (kind != "berry" && kind != "wz")
        config_fail("field '" + gp + ".kind' must be 'berry' or 'wz'");
      round.gates.push_back(GateSpec{build_path(sub, opt.hz), qs,
                                     kind == "wz" ? GateKind::kWz : GateKind::kBerry});
    }
    schedule.rounds.push_back(std::move(round));
  }

  const int dim = 1 << schedule.qubit_count;
  Vector psi0;
  const Json init =
      config.contains("initial") ? config.at("initial") : Json{{"basis", 0}};
  if (init.contains("amplitudes")) {
    psi0 = parse_state(init.at("amplitudes"), dim, "initial.amplitudes");
  } else {
    const int basis = int_or(init, "basis", 0, "initial.basis");
    if (basis < 0 || basis >= dim) config_fail("field 'initial.basis' out of range");
    psi0 = Vector::Zero(dim);
    psi0(basis) = 1.0;
  }

  const CompositionResult result =
      compose_and_measure(schedule, psi0, integration_options(opt));

  Json s = base_summary("gatearray", config, opt);
  s["gatearray"] = ga;
  s["budget"] = {{"per_gate", result.budget.per_gate},
                 {"round_totals", result.budget.round_totals},
                 {"total", result.budget.total}};
  s["results"] = {
      {"sigma_measured", result.sigma_measured},
      {"discrepancy", std::abs(result.sigma_measured - result.budget.total)},
      {"exact_final", state_json(result.exact_final)},
      {"zeroth_final", state_json(result.zeroth_final)}};
  return {{"summary.json", dump(s)}};
}

Artifacts run_aqc_cmd(const Json& config, const Options& opt) {
  const Json& aj = member(config, "aqc", "aqc");
  const int qubits = int_or(aj, "qubits", 0, "aqc.qubits");
  const double T = number_at(aj, "T", "aqc.T");

  AqcInstance inst;
  if (aj.contains("costs")) {
    inst.qubit_count = qubits;
    inst.h_b = transverse_field_start(qubits);
    const Json& costs = aj.at("costs");
    if (!costs.is_array() || static_cast<int>(costs.size()) != (1 << qubits))
      config_fail("field 'aqc.costs' must list 2^qubits numbers");
    inst.costs = RealVector(1 << qubits);
    for (int i = 0; i < inst.costs.size(); ++i) {
      if (!costs.at(i).is_number())
        config_fail("field 'aqc.costs' must list numbers");
      inst.costs(i) = (opt.hz ? 2.0 * M_PI : 1.0) * costs.at(i).get<double>();
    }
  } else {
    std::uint64_t seed = opt.seed;
    if (aj.contains("seed")) seed = aj.at("seed").get<std::uint64_t>();
    inst = random_aqc_instance(qubits, seed,
                               number_or(aj, "min_gap", 0.05, "aqc.min_gap"));
  }

  if (aj.contains("paths")) {
    const Json& paths = aj.at("paths");
    if (!paths.is_array() || paths.empty())
      config_fail("field 'aqc.paths' must be a non-empty array");
    inst.paths.clear();
    for (size_t i = 0; i < paths.size(); ++i) {
      AqcPathSpec spec;
      spec.shape = shape_from_name(string_or(
          paths.at(i), "shape", "linear", "aqc.paths[" + std::to_string(i) + "].shape"));
      inst.paths.push_back(spec);
    }
  } else if (inst.paths.empty()) {
    inst.paths = {AqcPathSpec{}};
  }

  const int path_index = int_or(aj, "path_index", 0, "aqc.path_index");
  const AqcRunReport report = run_aqc(inst, T, integration_options(opt), path_index);
  const Readout readout = largest_probability_readout(report.final_state, inst.costs,
                                                      20.0 * opt.tolerance);

  std::string bits(qubits, '0');
  for (int q = 0; q < qubits; ++q)
    if (readout.state >> q & 1) bits[qubits - 1 - q] = '1';

  Json s = base_summary("aqc", config, opt);
  s["aqc"] = aj;
  std::vector<double> costs_out(inst.costs.data(), inst.costs.data() + inst.costs.size());
  s["instance"] = {{"qubits", inst.qubit_count}, {"costs", costs_out}};
  s["results"] = {{"T", T},
                  {"ground_probability", report.ground_probability},
                  {"correction_norm", report.correction_norm},
                  {"window_correction", report.window_correction},
                  {"min_gap", report.min_gap},
                  {"final_gap", report.final_gap},
                  {"regime_ratio", 1.0 / (report.min_gap * T)},
                  {"steps_taken", report.steps_taken}};
  s["readout"] = {{"state", readout.state},
                  {"bits", bits},
                  {"probability", readout.probability},
                  {"margin", readout.margin},
                  {"decisive", readout.decisive},
                  {"cost_minimizer", readout.cost_minimizer}};
  if (inst.paths.size() >= 2) {
    const PathIndependenceReport pi = path_independence_check(inst, T);
    s["path_independence"] = {{"estimates", pi.estimates},
                              {"max_ratio", pi.max_ratio},
                              {"identical", pi.identical}};
  } else {
    s["path_independence"] = nullptr;
  }
  return {{"summary.json", dump(s)}};
}

Artifacts run_bound(const Json& config, const Options& opt) {
  double epsilon;
  if (opt.raw.contains("epsilon"))
    epsilon = number_at(opt.raw, "epsilon", "epsilon");
  else if (config.contains("epsilon"))
    epsilon = number_at(config, "epsilon", "epsilon");
  else
    config_fail("missing required field 'epsilon'");
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    config_fail("field 'epsilon' must lie in (0, 1)");

  const ShorBound b = shor_bound(epsilon);
  Json s;
  s["schema"] = 1;
  s["command"] = "bound";
  s["epsilon"] = epsilon;
  s["M_max"] = b.m_max;
  s["N_max"] = b.n_max;
  return {{"summary.json", dump(s)}};
}

}  // namespace

std::map<std::string, std::string> run_command(const std::string& command,
                                               const std::string& config_json,
                                               const std::string& options_json) {
  try {
    Json config = Json::object();
    if (!config_json.empty()) config = Json::parse(config_json);
    Json options_j = Json::object();
    if (!options_json.empty()) options_j = Json::parse(options_json);
    const Options options = parse_options(options_j);

    if (command == "bound") return run_bound(config, options);

    if (!config.contains("schema"))
      config_fail("missing required field 'schema'");
    if (!config.at("schema").is_number_integer() ||
        config.at("schema").get<int>() != 1)
      config_fail("unsupported schema version, expected 1");
    if (options.raw.contains("T"))
      config["schedule"]["T"] = number_at(options.raw, "T", "T");

    if (command == "evolve") return run_evolve(config, options);
    if (command == "sweep") return run_sweep(config, options);
    if (command == "berry") return run_berry(config, options);
    if (command == "holonomy") return run_holonomy(config, options);
    if (command == "gatearray") return run_gatearray(config, options);
    if (command == "aqc") return run_aqc_cmd(config, options);
    config_fail("unknown command '" + command + "'");
  } catch (const Error&) {
    throw;
  } catch (const Json::exception& e) {
    fail(ErrorCode::kConfig, std::string("config error: ") + e.what());
  }
}

}  // namespace aqsim
