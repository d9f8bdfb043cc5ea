#pragma once

#include <vector>

#include "aqsim/geomphase.hpp"

namespace aqsim {

// Amplitudes live on the t = 0 eigenbasis columns (ascending energy order);
// unit norm within 1e-10 is required at entry.

// Adiabatic-limit state at t: transported basis times exp(i eta) per column.
// Holonomies and geometric phases ride along inside the transported frame.
Vector zeroth_order_propagate(const HamiltonianPath& path, const Vector& a0, double t,
                              int steps = 10000);
std::vector<Vector> zeroth_order_samples(const HamiltonianPath& path, const Vector& a0,
                                         const std::vector<double>& times,
                                         int steps = 10000);

struct FirstOrderResult {
  Vector zeroth;
  Vector correction;            // endpoint-coupling deviation vector
  Vector state;                 // zeroth + correction, norm deviates at second order
  Matrix transition_elements;   // (m,n) = e^{i eta_n} <chi_m|d chi_n>/(E_m - E_n)
  Vector target_amplitudes;     // transition_elements * a0, per target column
  double correction_norm = 0.0;
  double regime_ratio = 0.0;    // 1/(gap * t); flagged, never fatal
  bool regime_ok = true;
};

// First-order propagation per the endpoint-coupling formula: the correction
// is built from derivative couplings at time t only, each source column
// contributing with its accumulated phase. The t = 0 boundary term of full
// time-dependent perturbation theory is deliberately not included; compare
// against the exact integrator through a final-window envelope, not
// pointwise.
FirstOrderResult first_order_propagate(const HamiltonianPath& path, const Vector& a0,
                                       double t, int steps = 10000);
std::vector<FirstOrderResult> first_order_samples(const HamiltonianPath& path,
                                                  const Vector& a0,
                                                  const std::vector<double>& times,
                                                  int steps = 10000);

enum class GateKind { kBerry, kWz };

struct ErrorReport {
  GateKind kind = GateKind::kBerry;
  Vector amplitudes;        // first-order transfer amplitude per target column
  RealVector block_norms;   // norm of the amplitudes landing in each block
  double total_norm = 0.0;
  double estimate = 0.0;    // 1/(gap * T)
  double regime_ratio = 0.0;
  bool regime_ok = true;
};

// Non-adiabatic error functional of a geometric gate. kBerry requires every
// populated level to be non-degenerate; kWz requires the input to live in a
// single block.
ErrorReport nonadiabatic_error(const HamiltonianPath& path, const Vector& a0, double T,
                               GateKind kind, int steps = 10000);

// (1/(gap T))^k, the order-of-magnitude error law.
double error_magnitude_estimate(double gap, double T, int k);

// Magnitudes |<m|dH|n>| / (E_n - E_m)^2 with zero intra-block entries: a pure
// function of the endpoint data (H, dH), hence history-independent. Feeds the
// path-independence checks.
Eigen::MatrixXd endpoint_transition_magnitudes(const Matrix& h, const Matrix& dh,
                                               const std::vector<int>& pattern = {});

}  // namespace aqsim
