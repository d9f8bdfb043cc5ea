#ifndef AQSIM_SCHEDULE_HPP
#define AQSIM_SCHEDULE_HPP

#include <string>

#include "aqsim/types.hpp"

namespace aqsim {

// Dimensionless ramp s(t) driving a Hamiltonian path: s(0) = 0, s(T) = 1,
// monotone non-decreasing on [0, T].  The formulas are evaluated without
// clamping so finite-difference stencils may poke slightly past the
// endpoints; the contractual domain is [0, T].
enum class Shape {
  kLinear,          // s = t/T
  kSmoothstep,      // s = 3u^2 - 2u^3,        s'(0) = s'(T) = 0
  kSinusoidalRamp,  // s = 1 - cos(pi t / 2T), s'(0) = 0, s'(T) = pi/(2T)
};

struct Schedule {
  double T = 1.0;
  Shape shape = Shape::kLinear;

  double s(double t) const {
    const double u = t / T;
    switch (shape) {
      case Shape::kLinear:
        return u;
      case Shape::kSmoothstep:
        return u * u * (3.0 - 2.0 * u);
      case Shape::kSinusoidalRamp:
        return 1.0 - std::cos(0.5 * M_PI * u);
    }
    return u;
  }

  double ds(double t) const {
    const double u = t / T;
    switch (shape) {
      case Shape::kLinear:
        return 1.0 / T;
      case Shape::kSmoothstep:
        return 6.0 * u * (1.0 - u) / T;
      case Shape::kSinusoidalRamp:
        return 0.5 * M_PI * std::sin(0.5 * M_PI * u) / T;
    }
    return 1.0 / T;
  }
};

inline const char* shape_name(Shape s) {
  switch (s) {
    case Shape::kLinear:
      return "linear";
    case Shape::kSmoothstep:
      return "smoothstep";
    case Shape::kSinusoidalRamp:
      return "sinusoidal";
  }
  return "linear";
}

inline Shape shape_from_name(const std::string& name) {
  if (name == "linear") return Shape::kLinear;
  if (name == "smoothstep") return Shape::kSmoothstep;
  if (name == "sinusoidal") return Shape::kSinusoidalRamp;
  fail(ErrorCode::kConfig, "unknown schedule shape '" + name + "'");
}

}  // namespace aqsim

#endif  // AQSIM_SCHEDULE_HPP
