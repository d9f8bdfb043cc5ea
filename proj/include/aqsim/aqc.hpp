#pragma once

#include <cstdint>
#include <vector>

#include "aqsim/exact.hpp"

namespace aqsim {

// One interpolation recipe between the shared endpoints: ramp shape plus an
// optional Hermitian detour term scaled by (s(1-s))^2, which vanishes with
// vanishing derivative at both ends and so never touches the endpoint data.
struct AqcPathSpec {
  Shape shape = Shape::kLinear;
  Matrix detour;  // zero-size means none
};

// Optimization instance: start in the unique ground state of h_b, end at
// the diagonal cost operator whose minimizer encodes the answer.
struct AqcInstance {
  int qubit_count = 0;  // capped at 8
  Matrix h_b;           // ground state must be non-degenerate
  RealVector costs;     // diagonal of h_p, minimum must be unique
  std::vector<AqcPathSpec> paths;  // at least one
};

// -sum sigma_x over the register; ground state is the uniform
// superposition, non-degenerate with gap 2.
Matrix transverse_field_start(int qubit_count);

// Transverse-field start (-sum sigma_x) with i.i.d. uniform [0, 1] costs,
// redrawn until the minimum is unique by a 0.1 margin and the scanned
// ground gap of the linear path stays above min_gap.  Deterministic in the
// seed.  Ships with the linear path only; callers append alternatives.
AqcInstance random_aqc_instance(int qubit_count, std::uint64_t seed,
                                double min_gap = 0.05);

// H(s) = (1-s) h_b + s h_p + (s(1-s))^2 detour on [0, T].
HamiltonianPath interpolation_path(const AqcInstance& inst, int path_index,
                                   double T);

// Smallest ground-to-first-excited gap over a uniform sample of the path.
// Fails with kGapScanFailure when the gap closes within round-off.
double ground_gap_scan(const HamiltonianPath& path, int samples = 1000);

struct AqcRunReport {
  Vector final_state;
  double ground_probability = 0.0;  // |<minimizer|psi(T)>|^2
  double correction_norm = 0.0;     // component off the minimizer at t = T
  double window_correction = 0.0;   // max of the same over a trailing beat window
  double final_gap = 0.0;           // runner-up cost minus minimum cost
  double min_gap = 0.0;             // scanned ground gap along the path
  std::int64_t steps_taken = 0;
};

// Exact integration from the ground state of h_b along the chosen path.
// The trailing window spans one beat 2 pi / final_gap (clipped to T/2), so
// window_correction reads the deviation envelope rather than a resonant null.
AqcRunReport run_aqc(const AqcInstance& inst, double T,
                     const IntegrationOptions& opts = {}, int path_index = 0);

struct PathIndependenceReport {
  std::vector<double> estimates;  // endpoint-formula correction magnitude per path
  double max_ratio = 1.0;         // largest pairwise estimate ratio
  bool identical = true;          // bitwise agreement across all paths
};

// First-order estimates from the endpoint data (H(T), dH(T)) only: paths
// with identical endpoint derivatives give bitwise-identical estimates, and
// ramp shapes differ exactly by their endpoint speed ratio.  Estimates use
// the ground column of the endpoint transition magnitudes.
PathIndependenceReport path_independence_check(const AqcInstance& inst, double T);

struct Readout {
  int state = 0;  // computational basis index of the largest probability
  double probability = 0.0;
  double margin = 0.0;  // probability gap to the runner-up
  bool decisive = false;
  int cost_minimizer = 0;  // brute-force argmin of the costs
};

// Indecisive (decisive = false) when the margin is within 2x the
// tolerance-induced probability uncertainty.
Readout largest_probability_readout(const Vector& final_state, const RealVector& costs,
                                    double uncertainty = 2e-9);

}  // namespace aqsim
