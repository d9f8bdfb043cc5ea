#ifndef AQSIM_HAMPATH_HPP
#define AQSIM_HAMPATH_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "aqsim/schedule.hpp"
#include "aqsim/spectral.hpp"
#include "aqsim/types.hpp"

namespace aqsim {

struct PathMetadata {
  std::string name;
  std::map<std::string, double> params;
};

// Immutable time-dependent Hermitian operator H(t) on [0, T] together with
// its declared spectral structure.  `dh` is the analytic time derivative when
// available; otherwise a central difference with step 1e-6 * T is used.
class HamiltonianPath {
 public:
  using MatrixFn = std::function<Matrix(double)>;

  HamiltonianPath(int dim, Schedule schedule, MatrixFn h, MatrixFn dh,
                  std::vector<int> pattern, double gap_floor, bool closed,
                  PathMetadata meta = {});

  int dim() const { return dim_; }
  double duration() const { return schedule_.T; }
  const Schedule& schedule() const { return schedule_; }
  const std::vector<int>& pattern() const { return pattern_; }
  double gap_floor() const { return gap_floor_; }  // declared; 0 = undeclared
  bool closed() const { return closed_; }
  const PathMetadata& metadata() const { return meta_; }

  Matrix hamiltonian(double t) const;
  Matrix derivative(double t) const;
  Frame frame(double t) const;

  // Smallest cross-block gap over a uniform sample of [0, T].
  double min_gap(int samples = 1000) const;

  // Spot-checks hermiticity, the declared gap floor (>= 0.9 x floor along the
  // sampled path) and, for closed paths, H(T) = H(0).
  void validate(int samples = 200) const;

 private:
  int dim_;
  Schedule schedule_;
  MatrixFn h_;
  MatrixFn dh_;
  std::vector<int> pattern_;
  double gap_floor_;
  bool closed_;
  PathMetadata meta_;
};

// Time-reversed copy: H'(t) = H(T - t).
HamiltonianPath reversed(const HamiltonianPath& path);

// ---------------------------------------------------------------------------
// Model zoo.  All angles are driven by the schedule: phi(t) = phi_start +
// 2 pi turns s(t).  Loops with integer `turns` are closed.
// ---------------------------------------------------------------------------

// Rotating-frame NMR qubit, H = R(t).sigma/2 with
// R = (omega1 cos phi, omega1 sin phi, omega0 - omega).
struct NmrParams {
  double omega0 = 0.0;
  double omega1 = 0.0;
  double omega = 0.0;
  double phi_start = 0.0;
  double turns = 1.0;
};
HamiltonianPath nmr_single_path(const NmrParams& p, const Schedule& sched);

// Driven qubit a coupled to spectator qubit b by J Iaz Ibz; conditional on
// b the a-qubit sees detuning (omega_a0 - omega) +- J/2.
struct NmrTwoQubitParams {
  double omega_a0 = 0.0;
  double omega1 = 0.0;
  double omega = 0.0;
  double j = 0.0;
  double phi_start = 0.0;
  double turns = 1.0;
};
HamiltonianPath nmr_two_qubit_path(const NmrTwoQubitParams& p, const Schedule& sched);
// Effective single-qubit path seen by qubit a when b is up (+J/2) or down.
HamiltonianPath nmr_conditional_path(const NmrTwoQubitParams& p, const Schedule& sched,
                                     bool partner_up);

// Charge qubit with tunable junction phase alpha(t):
// R = (EJ cos alpha, -EJ sin alpha, Ec (1 - 2 n_off)).
struct JosephsonParams {
  double ej = 0.0;
  double ec = 0.0;
  double n_off = 0.0;
  double alpha_start = 0.0;
  double turns = 1.0;
};
HamiltonianPath josephson_charge_path(const JosephsonParams& p, const Schedule& sched);

// Four-level tripod (basis |0>,|1>,|a>,|e>), H = |e>(w0<0| + w1<1| + wa<a|) + h.c.
// Spectrum (-w, 0, 0, +w) with w = sqrt(|w0|^2+|w1|^2+|wa|^2); the doubly
// degenerate dark block carries the holonomy.
struct TripodParams {
  double omega = 1.0;       // coupling norm w
  double theta = 0.5;       // cone angle of the spherical loop
  double phi_start = 0.0;
  double turns = 1.0;
  std::string loop = "spherical";  // or "swap" (open w0 <-> w1 crossfade)
  double chi0 = 0.0, chi1 = 0.0, chia = 0.0;  // static coupling phases
};
HamiltonianPath tripod_ion_path(const TripodParams& p, const Schedule& sched);
// Fully general couplings (given as functions of s together with d/ds).
struct TripodCouplings {
  std::function<Complex(double)> w0, w1, wa;
  std::function<Complex(double)> dw0, dw1, dwa;  // derivatives in s
};
HamiltonianPath tripod_ion_path(const TripodCouplings& c, const Schedule& sched,
                                bool closed, PathMetadata meta = {});

// Two trapped ions restricted to the invariant {|11>, |aa>, |ee>} subspace;
// spectrum (-g W, 0, +g W) with g = eta^2/delta, W = sqrt(omega1^4 + omegaa^4).
// The relative drive phase 2 phi_1 - 2 phi_a = phi(t) is swept by the loop.
struct IonTwoBitParams {
  double omega1 = 1.0;  // |Omega_1|
  double omegaa = 1.0;  // |Omega_a|
  double eta = 0.1;
  double delta = 1.0;
  double phi_start = 0.0;
  double turns = 1.0;
};
HamiltonianPath ion_two_bit_path(const IonTwoBitParams& p, const Schedule& sched);

// Gap formulas for the proposals that are estimated but not simulated.
// Keys (all magnitudes):
//   choi_single : h, j1, j2
//   choi_two    : jb, h
//   faoro_single: delta_ec, j, plus_branch_coefficient (1 or 2, default 2)
//   faoro_two   : jx, jm2
double named_gap_estimate(const std::string& model,
                          const std::map<std::string, double>& params);

}  // namespace aqsim

#endif  // AQSIM_HAMPATH_HPP
