#ifndef AQSIM_TYPES_HPP
#define AQSIM_TYPES_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

// Conventions used throughout the library:
//   * hbar = 1; every rate is an angular frequency unless the configuration
//     layer applied a unit conversion first.
//   * dynamic phase   eta_n(t)   = -Int_0^t E_n(tau) dtau
//   * geometric phase gamma_n(t) = i Int_0^t <phi_n|d/dtau phi_n> dtau  (real)
// so an adiabatic eigenstate evolves as exp[i gamma_n + i eta_n] |phi_n(t)>.

namespace aqsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class ErrorCode {
  kConfig,
  kNonHermitian,
  kDegeneracyMismatch,
  kBlockOverlapSingular,
  kSameBlock,
  kDegenerateLevel,
  kNonPositiveGap,
  kZeroGap,
  kBlockGapViolation,
  kSupportViolation,
  kStepUnderflow,
  kCrossingDetected,
  kQubitOverlap,
  kDimensionOverflow,
  kEndpointMismatch,
  kGapScanFailure,
  kNonPositiveInput,
  kOutOfRange,
  kStateInvalid,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

// Reduce an angle to the principal branch (-pi, pi].
inline double principal_angle(double x) {
  double y = std::remainder(x, 2.0 * M_PI);
  if (y <= -M_PI) y += 2.0 * M_PI;
  return y;
}

}  // namespace aqsim

#endif  // AQSIM_TYPES_HPP
