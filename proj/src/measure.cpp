#include "aqsim/measure.hpp"

#include <algorithm>
#include <cmath>

namespace aqsim {

DeviationSummary measure_deviation(const HamiltonianPath& path, const Vector& a0,
                                   const IntegrationOptions& opts, int window_samples,
                                   int steps) {
  if (window_samples < 1) fail(ErrorCode::kConfig, "window needs at least 1 sample");
  const double T = path.duration();
  const double gap = path.gap_floor() > 0.0 ? path.gap_floor() : path.min_gap();
  if (!(gap > 0.0)) fail(ErrorCode::kZeroGap, "deviation window needs a finite gap");

  const double window = std::min(0.5 * T, 2.0 * M_PI / gap);
  std::vector<double> times;
  times.reserve(window_samples + 1);
  for (int k = 0; k <= window_samples; ++k)
    times.push_back(T - window + window * k / window_samples);
  times.back() = T;

  const std::vector<FirstOrderResult> first =
      first_order_samples(path, a0, times, steps);
  const Vector psi0 = path.frame(0.0).eigenvectors * a0;
  const EvolutionResult exact = integrate_schrodinger(path, psi0, times, opts);

  DeviationSummary out;
  for (size_t k = 0; k < times.size(); ++k) {
    out.eps_first = std::max(out.eps_first, first[k].correction_norm);
    out.dev_exact =
        std::max(out.dev_exact, (exact.states[k] - first[k].zeroth).norm());
  }
  out.eps_final = first.back().correction_norm;
  out.dev_final = (exact.states.back() - first.back().zeroth).norm();
  out.estimate = error_magnitude_estimate(gap, T, 1);
  out.regime_ratio = first.back().regime_ratio;
  out.regime_ok = first.back().regime_ok;
  out.norm_drift = exact.norm_drift;
  out.steps_taken = exact.steps_taken;
  return out;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    fail(ErrorCode::kConfig, "slope fit needs two matched samples or more");
  const int n = static_cast<int>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      fail(ErrorCode::kNonPositiveInput, "slope fit needs positive samples");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0))
    fail(ErrorCode::kConfig, "slope fit needs distinct abscissae");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace aqsim
