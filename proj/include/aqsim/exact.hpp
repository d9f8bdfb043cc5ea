#pragma once

#include <cstdint>
#include <vector>

#include "aqsim/hampath.hpp"

namespace aqsim {

struct IntegrationOptions {
  double tolerance = 1e-10;  // accepted range [1e-13, 1e-6]
  std::int64_t max_steps = 4000000;
  double safety = 0.05;  // local tolerance = safety * tolerance
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<Vector> states;
  double norm_drift = 0.0;  // max deviation of the state norm from its start
  std::int64_t steps_taken = 0;
};

// Direct integration of i d/dt psi = H(t) psi, hbar = 1.
EvolutionResult integrate_schrodinger(const HamiltonianPath& path, const Vector& psi0,
                                      std::vector<double> sample_times,
                                      const IntegrationOptions& opts = {});

// Same evolution in the instantaneous eigenbasis: the parallel-transported
// frame W, the amplitudes b and the dynamic phases eta are co-integrated,
// with cross-block couplings <m|dH|n>/(E_n - E_m) taken from W itself.
// Intra-block connection vanishes in this gauge by construction. Requires a
// declared degeneracy pattern (no level crossings along the path).
EvolutionResult integrate_amplitude_ode(const HamiltonianPath& path, const Vector& psi0,
                                        std::vector<double> sample_times,
                                        const IntegrationOptions& opts = {});

}  // namespace aqsim
