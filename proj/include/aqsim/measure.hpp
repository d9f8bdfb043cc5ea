#pragma once

#include <cstdint>
#include <vector>

#include "aqsim/exact.hpp"
#include "aqsim/perturb.hpp"

namespace aqsim {

// Deviation summary of one run.  The pointwise deviation at t = T beats as
// |e^{i dE T} - 1| and passes through resonant nulls, so scaling studies
// read the max over a trailing window of one beat period 2 pi / gap
// (clipped to T/2) instead of the endpoint alone.
struct DeviationSummary {
  double eps_first = 0.0;  // max first-order correction norm over the window
  double dev_exact = 0.0;  // max ||exact - zeroth|| over the window
  double eps_final = 0.0;  // pointwise values at t = T
  double dev_final = 0.0;
  double estimate = 0.0;   // 1/(gap T)
  double regime_ratio = 0.0;
  bool regime_ok = true;
  double norm_drift = 0.0;
  std::int64_t steps_taken = 0;
};

// a0 holds amplitudes on the t = 0 eigenbasis, unit norm.
DeviationSummary measure_deviation(const HamiltonianPath& path, const Vector& a0,
                                   const IntegrationOptions& opts = {},
                                   int window_samples = 32, int steps = 10000);

// Least-squares slope of log y against log x; all entries must be positive.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace aqsim
