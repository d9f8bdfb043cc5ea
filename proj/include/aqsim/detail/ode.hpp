#pragma once

#include <cmath>
#include <cstdint>

#include "aqsim/types.hpp"

namespace aqsim::detail {

struct StepControl {
  double atol = 1e-12;
  double rtol = 1e-12;
  std::int64_t max_steps = 4000000;
  double span_hint = 1.0;  // sets the absolute step-underflow floor
};

// Dormand-Prince 5(4) with FSAL and a standard PI-free controller.
// The rhs signature is rhs(t, y, f). Step size persists across advance()
// calls; the FSAL stage does not, because callers restart at gauge seams
// where the rhs may be only piecewise smooth.
template <typename Rhs>
class DopriIntegrator {
 public:
  DopriIntegrator(Rhs rhs, StepControl ctl) : rhs_(std::move(rhs)), ctl_(ctl) {}

  std::int64_t steps_taken() const { return steps_; }

  void advance(double t0, double t1, Vector& y) {
    if (t1 <= t0) return;
    const int n = static_cast<int>(y.size());
    Vector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
    rhs_(t0, y, k1);

    double t = t0;
    if (h_ <= 0.0) h_ = initial_step(t0, y, k1);
    const double h_floor = 1e-14 * ctl_.span_hint;
    bool last_rejected = false;

    while (t < t1) {
      if (++steps_ > ctl_.max_steps)
        fail(ErrorCode::kStepUnderflow, "integration step budget exhausted");
      const bool capped = t + h_ >= t1;
      const double h = capped ? t1 - t : h_;
      if (h < h_floor)
        fail(ErrorCode::kStepUnderflow, "integration step size collapsed");

      ytmp = y + h * (a21 * k1);
      rhs_(t + c2 * h, ytmp, k2);
      ytmp = y + h * (a31 * k1 + a32 * k2);
      rhs_(t + c3 * h, ytmp, k3);
      ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
      rhs_(t + c4 * h, ytmp, k4);
      ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      rhs_(t + c5 * h, ytmp, k5);
      ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      rhs_(t + h, ytmp, k6);
      ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      rhs_(t + h, ynew, k7);

      double err2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const Complex e = h * (e1 * k1(i) + e3 * k3(i) + e4 * k4(i) + e5 * k5(i) +
                               e6 * k6(i) + e7 * k7(i));
        const double sc =
            ctl_.atol + ctl_.rtol * std::max(std::abs(y(i)), std::abs(ynew(i)));
        err2 += std::norm(e / sc);
      }
      const double err = std::sqrt(err2 / n);

      double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      factor = std::clamp(factor, 0.2, last_rejected ? 1.0 : 5.0);
      if (err <= 1.0) {
        t += h;
        y.swap(ynew);
        k1.swap(k7);
        const double next = h * factor;
        h_ = capped ? std::max(h_, next) : next;
        last_rejected = false;
      } else {
        // shrink from the step actually attempted; a rejected capped step
        // would otherwise be retried at the same size forever
        h_ = h * factor;
        last_rejected = true;
      }
    }
  }

 private:
  double initial_step(double t0, const Vector& y, const Vector& f0) const {
    double d0 = 0.0, d1 = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      const double sc = ctl_.atol + ctl_.rtol * std::abs(y(i));
      d0 += std::norm(y(i) / sc);
      d1 += std::norm(f0(i) / sc);
    }
    d0 = std::sqrt(d0 / y.size());
    d1 = std::sqrt(d1 / y.size());
    double h = (d0 > 1e-10 && d1 > 1e-10) ? 0.01 * d0 / d1 : 1e-6 * ctl_.span_hint;
    (void)t0;
    return std::min(h, ctl_.span_hint);
  }

  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Rhs rhs_;
  StepControl ctl_;
  double h_ = 0.0;
  std::int64_t steps_ = 0;
};

}  // namespace aqsim::detail
