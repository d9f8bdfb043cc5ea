#pragma once

#include <vector>

#include "aqsim/exact.hpp"
#include "aqsim/perturb.hpp"

namespace aqsim {

// One gate: a Hamiltonian path acting on the listed qubits.  qubits[k] is
// the global qubit carrying local bit k (bit 0 least significant), so the
// path dimension must equal 2^qubits.size().
struct GateSpec {
  HamiltonianPath path;
  std::vector<int> qubits;
  GateKind kind = GateKind::kBerry;
};

// One time slice of parallel gates on pairwise-disjoint qubit subsets.
// Every member path must span exactly `duration`.
struct Round {
  double duration = 0.0;
  std::vector<GateSpec> gates;
};

// Rounds run back to back; qubits under no gate idle with 0.5 idle_z sigma_z
// (zero by default, i.e. spectators hold still).
struct GateSchedule {
  int qubit_count = 0;
  std::vector<Round> rounds;
  double idle_z = 0.0;
};

struct ErrorBudget {
  std::vector<double> per_gate;      // first-order error norms, round-major
  std::vector<double> round_totals;  // running sums at each round boundary
  double total = 0.0;                // sum of per_gate, by construction
};

struct CompositionResult {
  Vector exact_final;
  Vector zeroth_final;
  double sigma_measured = 0.0;  // ||exact - zeroth||
  ErrorBudget budget;
};

// Lift an operator acting on the listed qubits to the full
// 2^qubit_count space (identity on the rest).
Matrix embed_operator(const Matrix& op, const std::vector<int>& qubits,
                      int qubit_count);

// Disjointness within each round, per-gate dimension = 2^subset size,
// matching durations, full dimension capped at 2^12.
void validate_schedule(const GateSchedule& schedule);

// Exact round-by-round integration of the summed embedded Hamiltonians
// against the composition of per-gate adiabatic-limit unitaries.  Each
// gate's budget entry is the norm of its embedded first-order correction
// applied to the zeroth-order state entering that round, so the budget
// predicts sigma_measured up to second-order interference.
CompositionResult compose_and_measure(const GateSchedule& schedule, const Vector& psi0,
                                      const IntegrationOptions& opts = {});

struct EntangledCheck {
  double mismatch = 0.0;  // ||full-space evolution - branch reassembly||
  double tolerance = 0.0;
  bool consistent = false;
};

// Propagate psi0 under gate (x) identity on the spectators, then again
// branch by branch over the spectator basis, and compare the reassembled
// state.  Linearity makes the two agree to integrator accuracy even for
// inputs entangled across the gate/spectator cut.
EntangledCheck entangled_input_check(const GateSpec& gate, int qubit_count,
                                     const Vector& psi0, double tolerance = 1e-9,
                                     const IntegrationOptions& opts = {});

struct ShorBound {
  double m_max = 0.0;  // largest gate count with accumulated error < 1
  double n_max = 0.0;  // largest factorable N at cost 300 (log10 N)^3 gates
};

// m_max = 1/eps, n_max = 10^((1/(300 eps))^(1/3)); eps must lie in (0, 1).
ShorBound shor_bound(double epsilon);

}  // namespace aqsim
