#include "aqsim.h"

#include <exception>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "aqsim/gatearray.hpp"
#include "aqsim/runner.hpp"

struct aqsim_result {
  std::vector<std::pair<std::string, std::string>> artifacts;
};

namespace {

thread_local std::string g_last_error;

int map_code(aqsim::ErrorCode code) {
  return code == aqsim::ErrorCode::kConfig ? AQSIM_ERR_CONFIG : AQSIM_ERR_RUNTIME;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return AQSIM_OK;
  } catch (const aqsim::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return AQSIM_ERR_RUNTIME;
  }
}

int argument_error(const char* msg) {
  g_last_error = msg;
  return AQSIM_ERR_ARGUMENT;
}

}  // namespace

extern "C" {

int aqsim_run(const char* command, const char* config_json,
              const char* options_json, aqsim_result** result) {
  if (!command || !result) return argument_error("null argument");
  *result = nullptr;
  return guarded([&] {
    std::map<std::string, std::string> artifacts = aqsim::run_command(
        command, config_json ? config_json : "", options_json ? options_json : "");
    auto* r = new aqsim_result;
    for (auto& [name, body] : artifacts)
      r->artifacts.emplace_back(name, std::move(body));
    *result = r;
  });
}

int aqsim_result_count(const aqsim_result* result) {
  return result ? static_cast<int>(result->artifacts.size()) : 0;
}

const char* aqsim_result_name(const aqsim_result* result, int index) {
  if (!result || index < 0 || index >= aqsim_result_count(result)) return nullptr;
  return result->artifacts[index].first.c_str();
}

const char* aqsim_result_data(const aqsim_result* result, int index) {
  if (!result || index < 0 || index >= aqsim_result_count(result)) return nullptr;
  return result->artifacts[index].second.c_str();
}

size_t aqsim_result_size(const aqsim_result* result, int index) {
  if (!result || index < 0 || index >= aqsim_result_count(result)) return 0;
  return result->artifacts[index].second.size();
}

void aqsim_result_free(aqsim_result* result) { delete result; }

const char* aqsim_last_error(void) { return g_last_error.c_str(); }

int aqsim_shor_bound(double epsilon, double* m_max, double* n_max) {
  if (!m_max || !n_max) return argument_error("null argument");
  return guarded([&] {
    const aqsim::ShorBound b = aqsim::shor_bound(epsilon);
    *m_max = b.m_max;
    *n_max = b.n_max;
  });
}

int aqsim_error_estimate(double gap, double duration, int order, double* estimate) {
  if (!estimate) return argument_error("null argument");
  return guarded(
      [&] { *estimate = aqsim::error_magnitude_estimate(gap, duration, order); });
}

int aqsim_named_gap(const char* model, const char* params_json, double* gap) {
  if (!model || !gap) return argument_error("null argument");
  return guarded([&] {
    std::map<std::string, double> params;
    if (params_json && *params_json) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(params_json);
      } catch (const nlohmann::json::exception& e) {
        aqsim::fail(aqsim::ErrorCode::kConfig,
                    std::string("params parse error: ") + e.what());
      }
      if (!j.is_object())
        aqsim::fail(aqsim::ErrorCode::kConfig, "params must be a JSON object");
      for (const auto& [key, value] : j.items()) {
        if (!value.is_number())
          aqsim::fail(aqsim::ErrorCode::kConfig,
                      "param '" + key + "' must be a number");
        params[key] = value.get<double>();
      }
    }
    *gap = aqsim::named_gap_estimate(model, params);
  });
}

const char* aqsim_version(void) { return "1.0.0"; }

}  // extern "C"
