#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "aqsim.h"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

std::string timestamp_utc() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adiabatic geometric gate toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string units = "angular";
  std::uint64_t seed = 0;
  int jobs = 1;
  double tolerance = 1e-10;

  std::string param;
  double sweep_min = 0.0, sweep_max = 0.0;
  int points = 0;
  bool log_spacing = true;
  double duration = 0.0;
  double epsilon = 0.0;

  CLI::Option* duration_opt = nullptr;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    CLI::Option* c =
        cmd->add_option("--config", config_path, "JSON configuration file");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out_dir, "artifact directory (default .)");
    cmd->add_option("--seed", seed, "64-bit random seed");
    cmd->add_option("--jobs", jobs, "worker count for sweeps");
    cmd->add_option("--tolerance", tolerance, "integrator tolerance");
    cmd->add_option("--hbar-units", units, "angular (default) or hz")
        ->check(CLI::IsMember({"angular", "hz"}));
  };

  CLI::App* evolve = app.add_subcommand(
      "evolve", "exact, adiabatic-limit and first-order run of one model");
  add_common(evolve, true);
  duration_opt = evolve->add_option("--T", duration, "override schedule.T");

  CLI::App* sweep =
      app.add_subcommand("sweep", "scaling sweep over one parameter");
  add_common(sweep, true);
  sweep->add_option("--param", param, "parameter to sweep (T or a model key)")
      ->required();
  sweep->add_option("--min", sweep_min, "first value")->required();
  sweep->add_option("--max", sweep_max, "last value")->required();
  sweep->add_option("--points", points, "sample count (>= 3)")->required();
  sweep->add_flag("--log,!--linear", log_spacing,
                  "log-spaced points (default) or linear");

  CLI::App* berry =
      app.add_subcommand("berry", "dynamic and geometric phases of a loop");
  add_common(berry, true);

  CLI::App* holonomy =
      app.add_subcommand("holonomy", "block holonomy matrix of a loop");
  add_common(holonomy, true);

  CLI::App* gatearray = app.add_subcommand(
      "gatearray", "composed gate schedule with per-gate error budget");
  add_common(gatearray, true);

  CLI::App* aqc =
      app.add_subcommand("aqc", "adiabatic optimization run and readout");
  add_common(aqc, true);

  CLI::App* bound =
      app.add_subcommand("bound", "gate-count and problem-size budget");
  add_common(bound, false);
  bound->add_option("--epsilon", epsilon, "per-gate error in (0, 1)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage problems are configuration errors
  }

  CLI::App* verb = app.get_subcommands().front();
  const std::string command = verb->get_name();

  nlohmann::json options;
  options["seed"] = seed;
  options["jobs"] = jobs;
  options["tolerance"] = tolerance;
  options["hbar_units"] = units;
  if (command == "sweep") {
    options["param"] = param;
    options["min"] = sweep_min;
    options["max"] = sweep_max;
    options["points"] = points;
    options["log"] = log_spacing;
  }
  if (command == "bound") options["epsilon"] = epsilon;
  if (duration_opt && duration_opt->count() > 0) options["T"] = duration;

  std::string config;
  try {
    if (!config_path.empty()) config = read_file(config_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "aqsim: %s\n", e.what());
    return 2;
  }

  const std::string started = timestamp_utc();
  const auto t0 = std::chrono::steady_clock::now();

  aqsim_result* result = nullptr;
  const int status =
      aqsim_run(command.c_str(), config.empty() ? nullptr : config.c_str(),
                options.dump().c_str(), &result);
  if (status != AQSIM_OK) {
    std::fprintf(stderr, "aqsim: %s\n", aqsim_last_error());
    return status == AQSIM_ERR_CONFIG ? 2 : 1;
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  try {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    for (int i = 0; i < aqsim_result_count(result); ++i) {
      std::ofstream out(fs::path(out_dir) / aqsim_result_name(result, i),
                        std::ios::binary);
      out.write(aqsim_result_data(result, i),
                static_cast<std::streamsize>(aqsim_result_size(result, i)));
      if (!out) throw std::runtime_error("cannot write artifacts");
    }
    // timestamps live here so summary.json stays byte-reproducible
    nlohmann::json meta;
    meta["command"] = command;
    meta["config"] = config_path;
    meta["started"] = started;
    meta["elapsed_seconds"] = elapsed;
    meta["version"] = aqsim_version();
    std::ofstream meta_out(fs::path(out_dir) / "meta.json", std::ios::binary);
    meta_out << meta.dump(2) << "\n";
    if (!meta_out) throw std::runtime_error("cannot write meta.json");
  } catch (const std::exception& e) {
    std::fprintf(stderr, "aqsim: %s\n", e.what());
    aqsim_result_free(result);
    return 1;
  }

  aqsim_result_free(result);
  return 0;
}
