#pragma once

#include <vector>

#include "aqsim/hampath.hpp"

namespace aqsim {

// One stop of a discrete parallel-transport walk along the path: the chain
// frame (gauge-transported from t = 0), the reference frame (deterministic
// eigensolver gauge at this time) and the accumulated dynamic phases, one
// per column, eta_c = -integral of E_c. Simpson per grid step, compensated
// summation.
struct TransportSample {
  double time = 0.0;
  Frame chain;
  Frame reference;
  RealVector eta;
};

std::vector<TransportSample> transport_samples(const HamiltonianPath& path,
                                               const std::vector<double>& times,
                                               int steps = 10000);
TransportSample transport_to(const HamiltonianPath& path, double t,
                             int steps = 10000);

// -integral of the block mean energy from 0 to t1, adaptive quadrature.
double dynamic_phase(const HamiltonianPath& path, int level, double t1,
                     double tol = 1e-12);

// Geometric phase of a nondegenerate level accumulated on [0, t1]. Principal
// value in (-pi, pi]; windings beyond a full turn are deliberately folded.
// Gauge-invariant mod 2pi for closed loops; open segments use the
// deterministic eigensolver gauge at both ends and carry no measurement
// semantics.
double berry_phase(const HamiltonianPath& path, int level, double t1,
                   int steps = 10000);
double berry_phase(const HamiltonianPath& path, int level);

// Non-abelian holonomy of a (possibly degenerate) level:
// V(t) = ref_frame(t)^dag . transported_frame(t), restricted to the block.
// Reduces to e^{i gamma} for 1-dim blocks and satisfies the concatenation
// law V(0,t2) = V(t1,t2) V(0,t1). Guards the declared gap floor on [0, t].
std::vector<Matrix> wz_holonomy_samples(const HamiltonianPath& path, int level,
                                        const std::vector<double>& times,
                                        int steps = 10000);
Matrix wz_holonomy(const HamiltonianPath& path, int level, double t1,
                   int steps = 10000);
Matrix wz_holonomy(const HamiltonianPath& path, int level);

// Accumulated phases of every level at one time.
struct BlockPhase {
  int level = 0;
  int dim = 0;
  double eta = 0.0;      // dynamic phase of the block
  Matrix holonomy;       // block-dim unitary
  double gamma = 0.0;    // principal arg of the holonomy for 1-dim blocks, else 0
};

struct PhaseLedger {
  double time = 0.0;
  std::vector<BlockPhase> blocks;
};

PhaseLedger phase_ledger(const HamiltonianPath& path, double t, int steps = 10000);
std::vector<PhaseLedger> phase_ledger_samples(const HamiltonianPath& path,
                                              const std::vector<double>& times,
                                              int steps = 10000);

}  // namespace aqsim
