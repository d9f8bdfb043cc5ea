// Acceptance gate. Each criterion pins its tolerances here, prints exactly
// one [PASS]/[FAIL] line and feeds ctest through the exit status.
// Usage: acceptance <criterion 1..10>.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "aqsim/aqc.hpp"
#include "aqsim/exact.hpp"
#include "aqsim/gatearray.hpp"
#include "aqsim/geomphase.hpp"
#include "aqsim/hampath.hpp"
#include "aqsim/measure.hpp"
#include "aqsim/perturb.hpp"

using namespace aqsim;

namespace {

std::string strf(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

Vector random_unit(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(gauss(rng), gauss(rng));
  return v / v.norm();
}

Matrix random_hermitian(int dim, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> gauss;
  Matrix a(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = Complex(gauss(rng), gauss(rng));
  return scale * 0.5 * (a + Matrix(a.adjoint()));
}

// Field cone of polar angle theta and radius r: omega1 = r sin(theta),
// detuning omega0 - omega = r cos(theta).
HamiltonianPath cone_path(double theta, double r, double omega0, double phi,
                          double T) {
  NmrParams p;
  p.omega0 = omega0;
  p.omega1 = r * std::sin(theta);
  p.omega = omega0 - r * std::cos(theta);
  p.phi_start = phi;
  return nmr_single_path(p, {T, Shape::kLinear});
}

using PathFactory = std::function<HamiltonianPath(double)>;

const char* kModelNames[5] = {"nmr_single", "nmr_two_qubit", "josephson",
                              "tripod", "ion_two_bit"};

// Randomized draw of one model family; the boxes keep every cross-block gap
// comfortably open so the declared degeneracy pattern holds along the loop.
PathFactory draw_family(int model, std::mt19937_64& rng) {
  auto u = [&rng](double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
  };
  switch (model) {
    case 0: {
      const double theta = u(0.4, 1.2), r = u(0.7, 2.0);
      const double omega0 = u(8.0, 12.0), phi = u(0.0, 2.0 * M_PI);
      return [=](double T) { return cone_path(theta, r, omega0, phi, T); };
    }
    case 1: {
      NmrTwoQubitParams p;
      p.omega_a0 = u(25.0, 35.0);
      p.omega1 = u(1.2, 2.0);
      p.omega = p.omega_a0 - u(1.5, 2.5);
      p.j = u(0.8, 1.6);
      p.phi_start = u(0.0, 2.0 * M_PI);
      return [p](double T) {
        return nmr_two_qubit_path(p, {T, Shape::kLinear});
      };
    }
    case 2: {
      JosephsonParams p;
      p.ej = u(1.5, 2.5);
      p.ec = u(4.0, 6.0);
      p.n_off = u(0.30, 0.45);
      p.alpha_start = u(0.0, 2.0 * M_PI);
      return [p](double T) {
        return josephson_charge_path(p, {T, Shape::kLinear});
      };
    }
    case 3: {
      TripodParams p;
      p.omega = u(1.0, 2.0);
      p.theta = u(0.4, 1.1);
      p.phi_start = u(0.0, 2.0 * M_PI);
      return [p](double T) { return tripod_ion_path(p, {T, Shape::kLinear}); };
    }
    default: {
      IonTwoBitParams p;
      p.omega1 = u(0.9, 1.2);
      p.omegaa = u(0.9, 1.2);
      p.eta = u(0.3, 0.5);
      p.delta = u(0.8, 1.2);
      p.phi_start = u(0.0, 2.0 * M_PI);
      return [p](double T) { return ion_two_bit_path(p, {T, Shape::kLinear}); };
    }
  }
}

struct Family {
  const char* name;
  PathFactory make;
  double t_lo;  // decade start, tuned so 1/(gap t_lo) is about 0.03
};

// The window deviation carries, besides the first-order transfer of size
// eps, a secular phase drift of pi sin(theta_eff) eps from the second-order
// level repulsion, where sin(theta_eff) is the coupling direction's tilt.
// Keeping sin(theta_eff) at or below about 0.55 per family holds the
// deviation-to-eps ratio near sqrt((pi sin)^2 + 4), safely inside factor 3.
std::vector<Family> fixed_families() {
  std::vector<Family> fams;
  fams.push_back({"nmr_single",
                  [](double T) { return cone_path(0.45, 1.0, 10.0, 0.0, T); },
                  34.0});
  NmrTwoQubitParams q;
  q.omega_a0 = 30.0;
  q.omega1 = 1.2;
  q.omega = 28.0;
  q.j = 2.0;  // conditional radii hypot(1.2, 3) and hypot(1.2, 1), gap 0.834
  fams.push_back({"nmr_two_qubit",
                  [q](double T) { return nmr_two_qubit_path(q, {T, Shape::kLinear}); },
                  24.0});
  JosephsonParams jp;
  jp.ej = 0.9;
  jp.ec = 6.0;
  jp.n_off = 0.35;  // R = hypot(0.9, 1.8), tilt 0.45
  fams.push_back({"josephson",
                  [jp](double T) {
                    return josephson_charge_path(jp, {T, Shape::kLinear});
                  },
                  17.0});
  TripodParams tp;
  tp.omega = 1.5;
  tp.theta = 0.4;
  fams.push_back({"tripod",
                  [tp](double T) { return tripod_ion_path(tp, {T, Shape::kLinear}); },
                  23.0});
  IonTwoBitParams ip;
  ip.omega1 = 1.0;
  ip.omegaa = 2.0;  // asymmetric couplings cool the dark-state tilt to 0.33
  ip.eta = 0.5;
  ip.delta = 1.0;   // gap = eta^2/delta * hypot(1, 4) = 1.031
  fams.push_back({"ion_two_bit",
                  [ip](double T) { return ion_two_bit_path(ip, {T, Shape::kLinear}); },
                  45.0});
  return fams;
}

// 1. Schrodinger-form and amplitude-ODE-form integration agree on every
//    model, 3 draws each, within 1e-8 at tolerance 1e-10, under a minute.
bool criterion1(std::string& detail) {
  Stopwatch timer;
  std::mt19937_64 rng(20260825ull);
  std::uniform_real_distribution<double> tdraw(6.0, 12.0);
  IntegrationOptions opts;  // tolerance 1e-10
  double worst = 0.0;
  const char* worst_model = "";
  int runs = 0;
  for (int model = 0; model < 5; ++model) {
    for (int draw = 0; draw < 3; ++draw) {
      const PathFactory make = draw_family(model, rng);
      const double T = tdraw(rng);
      const HamiltonianPath path = make(T);
      const Vector psi0 = random_unit(path.dim(), rng);
      const Vector a = integrate_schrodinger(path, psi0, {T}, opts).states.back();
      const Vector b = integrate_amplitude_ode(path, psi0, {T}, opts).states.back();
      const double mismatch = (a - b).norm();
      if (mismatch > worst) {
        worst = mismatch;
        worst_model = kModelNames[model];
      }
      ++runs;
    }
  }
  const double secs = timer.seconds();
  detail = strf(
      "Schrodinger vs amplitude-ODE, %d runs, worst mismatch %.2e on %s "
      "(limit 1e-08), %.1f s (budget 60)",
      runs, worst, worst_model, secs);
  return worst <= 1e-8 && secs < 60.0;
}

// 2. Closed-cone geometric phase equals the enclosed solid angle over 2,
//    pi(1 - cos theta), to 1e-6 at 1e4 steps; the two levels carry opposite
//    signs of equal magnitude (compared on the circle, the theta = pi/2
//    values +-pi coincide after folding).
bool criterion2(std::string& detail) {
  const double thetas[3] = {M_PI / 6.0, M_PI / 3.0, M_PI / 2.0};
  double worst_mag = 0.0, worst_sum = 0.0;
  bool signs_ok = true;
  for (const double theta : thetas) {
    const HamiltonianPath path = cone_path(theta, 1.0, 10.0, 0.0, 40.0);
    const double g0 = berry_phase(path, 0, 40.0, 10000);
    const double g1 = berry_phase(path, 1, 40.0, 10000);
    const double target = M_PI * (1.0 - std::cos(theta));
    worst_mag = std::max({worst_mag, std::abs(std::abs(g0) - target),
                          std::abs(std::abs(g1) - target)});
    worst_sum = std::max(worst_sum, std::abs(principal_angle(g0 + g1)));
    if (theta < 1.5) signs_ok = signs_ok && g0 > 0.0 && g1 < 0.0;
  }
  detail = strf(
      "|gamma| vs pi(1 - cos theta) at 1e4 steps, worst magnitude error %.2e, "
      "worst folded sum %.2e (limit 1e-06), opposite signs %s",
      worst_mag, worst_sum, signs_ok ? "yes" : "NO");
  return worst_mag <= 1e-6 && worst_sum <= 1e-6 && signs_ok;
}

// 3. Window deviation from the adiabatic limit falls like 1/T: log-log
//    slope within -1 +- 0.1 over one duration decade for every model.
bool criterion3(std::string& detail) {
  Stopwatch timer;
  IntegrationOptions opts;
  bool ok = true;
  double worst_slope = -1.0;
  const char* worst_name = "";
  for (const Family& fam : fixed_families()) {
    std::vector<double> ts, devs;
    for (int k = 0; k < 5; ++k) {
      const double T = fam.t_lo * std::pow(10.0, k / 4.0);
      const HamiltonianPath path = fam.make(T);
      const Vector a0 = Vector::Unit(path.dim(), 0);
      devs.push_back(measure_deviation(path, a0, opts, 32, 10000).dev_exact);
      ts.push_back(T);
    }
    const double slope = fit_loglog_slope(ts, devs);
    if (std::abs(slope + 1.0) > std::abs(worst_slope + 1.0)) {
      worst_slope = slope;
      worst_name = fam.name;
    }
    ok = ok && std::abs(slope + 1.0) <= 0.1;
  }
  const double secs = timer.seconds();
  detail = strf(
      "deviation-vs-T decade fit per model, worst slope %.3f on %s "
      "(limit -1 +- 0.1), %.0f s (budget 300)",
      worst_slope, worst_name, secs);
  return ok && secs < 300.0;
}

// 4. The measured window deviation tracks the first-order correction norm
//    within a factor of 3 once 1/(gap T) <= 0.03, for every model.
bool criterion4(std::string& detail) {
  IntegrationOptions opts;
  bool ok = true;
  double ratio_lo = 1e300, ratio_hi = 0.0, worst_regime = 0.0;
  for (const Family& fam : fixed_families()) {
    const double T = 2.0 * fam.t_lo;
    const HamiltonianPath path = fam.make(T);
    const Vector a0 = Vector::Unit(path.dim(), 0);
    const DeviationSummary d = measure_deviation(path, a0, opts, 32, 10000);
    const double ratio = d.dev_exact / d.eps_first;
    ratio_lo = std::min(ratio_lo, ratio);
    ratio_hi = std::max(ratio_hi, ratio);
    worst_regime = std::max(worst_regime, d.regime_ratio);
    ok = ok && d.regime_ratio <= 0.03 && ratio >= 1.0 / 3.0 && ratio <= 3.0;
  }
  detail = strf(
      "window deviation over first-order norm in [%.2f, %.2f] "
      "(limit [0.33, 3.00]) at regime <= %.4f (limit 0.03)",
      ratio_lo, ratio_hi, worst_regime);
  return ok;
}

// 5. Holonomy checks: unitary to 1e-10; 1-dim blocks reduce to the abelian
//    phase within 1e-8; dark-block transport matches exact evolution with
//    deviation at most 5/(omega T).
bool criterion5(std::string& detail) {
  TripodParams tp;
  tp.omega = 2.0;
  tp.theta = 0.7;
  const double T = 200.0;  // omega T = 400
  const HamiltonianPath tri = tripod_ion_path(tp, {T, Shape::kSmoothstep});

  const Matrix v = wz_holonomy(tri, 1, T, 10000);
  const double unit_err =
      (v.adjoint() * v - Matrix::Identity(2, 2)).norm();

  const HamiltonianPath cone = cone_path(0.7, 1.0, 10.0, 0.0, 40.0);
  const Matrix v0 = wz_holonomy(cone, 0, 40.0, 10000);
  const double gamma = berry_phase(cone, 0, 40.0, 10000);
  const double abelian_err =
      std::abs(principal_angle(std::arg(v0(0, 0)) - gamma));

  IntegrationOptions opts;
  const Frame f0 = tri.frame(0.0);
  double dark_err = 0.0;
  for (int sub = 0; sub < 2; ++sub) {
    const int col = f0.column(1, sub);
    const Vector psi0 = f0.eigenvectors.col(col);
    const Vector exact = integrate_schrodinger(tri, psi0, {T}, opts).states.back();
    const Vector pred = zeroth_order_propagate(tri, Vector::Unit(4, col), T);
    dark_err = std::max(dark_err, (exact - pred).norm());
  }
  const double bound = 5.0 / (tp.omega * T);

  detail = strf(
      "unitarity %.1e (limit 1e-10), abelian reduction gap %.1e (limit 1e-08), "
      "dark-state deviation %.2e (limit 5/(omega T) = %.2e)",
      unit_err, abelian_err, dark_err, bound);
  return unit_err <= 1e-10 && abelian_err <= 1e-8 && dark_err <= bound;
}

// 6. Gap-to-error estimator: gaps of a few hundred with durations near one
//    land in [1e-3, 1e-1] and bracket 1e-2, whether the quoted gap is read
//    as an angular rate or as a plain frequency (then scaled by 2 pi).
bool criterion6(std::string& detail) {
  const double pairs[4][2] = {{100.0, 0.8}, {200.0, 0.75}, {300.0, 0.5},
                              {500.0, 0.3}};
  double lo = 1e300, hi = 0.0;
  bool ok = true;
  for (const auto& pr : pairs) {
    for (const double unit_scale : {1.0, 2.0 * M_PI}) {
      const double e = error_magnitude_estimate(unit_scale * pr[0], pr[1], 1);
      ok = ok && e >= 1e-3 && e <= 1e-1;
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
  }
  ok = ok && lo < 1e-2 && hi > 1e-2;
  detail = strf(
      "estimates for gaps {100..500} x T {0.3..0.8} span [%.2e, %.2e], inside "
      "[1e-03, 1e-01] and bracketing 1e-02 under both unit readings",
      lo, hi);
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 7 helpers: regenerable random schedules. Durations are stored as
// draw data so the same schedule can be rebuilt under a global T scale.

struct GateDraw {
  int kind = 0;  // 0 cone, 1 josephson, 2 two-qubit
  std::vector<int> qubits;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0;
};

struct RoundDraw {
  double duration = 0.0;
  std::vector<GateDraw> gates;
};

struct ScheduleDraw {
  int qubit_count = 0;
  std::vector<RoundDraw> rounds;
};

GateSpec realize_gate(const GateDraw& g, double duration) {
  const Schedule sched{duration, Shape::kLinear};
  switch (g.kind) {
    case 0:
      return {cone_path(g.a, g.b, g.c, g.d, duration), g.qubits};
    case 1: {
      JosephsonParams p;
      p.ej = g.a;
      p.ec = g.b;
      p.n_off = g.c;
      p.alpha_start = g.d;
      return {josephson_charge_path(p, sched), g.qubits};
    }
    default: {
      NmrTwoQubitParams p;
      p.omega_a0 = g.a;
      p.omega1 = g.b;
      p.omega = g.a - g.c;
      p.j = g.d;
      p.phi_start = g.e;
      return {nmr_two_qubit_path(p, sched), g.qubits};
    }
  }
}

GateSchedule realize(const ScheduleDraw& sd, double scale) {
  GateSchedule gs;
  gs.qubit_count = sd.qubit_count;
  for (const RoundDraw& rd : sd.rounds) {
    Round r;
    r.duration = rd.duration * scale;
    for (const GateDraw& g : rd.gates) r.gates.push_back(realize_gate(g, r.duration));
    gs.rounds.push_back(std::move(r));
  }
  return gs;
}

// Parameter boxes keep every gate's coupling tilt sin(theta_eff) under 0.58,
// so the secular drift (pi sin(theta_eff) per unit budget, see the gate array
// tests) stays well below the quadratic additivity envelope. Draws with fewer
// than three gates are rejected: the duration calibration below would push
// the whole budget into one gate and out of the perturbative regime at the
// shortest scale.
ScheduleDraw draw_schedule(std::mt19937_64& rng) {
  auto u = [&rng](double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
  };
  for (;;) {
    ScheduleDraw sd;
    sd.qubit_count = 2 + static_cast<int>(rng() % 3);
    const int rounds = 1 + static_cast<int>(rng() % 3);
    int gate_count = 0;
    for (int r = 0; r < rounds; ++r) {
      RoundDraw rd;
      rd.duration = u(8.0, 16.0);
      std::vector<int> order(sd.qubit_count);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      std::size_t i = 0;
      while (i < order.size()) {
        GateDraw g;
        if (order.size() - i >= 2 && u(0.0, 1.0) < 0.4) {
          g.kind = 2;
          g.qubits = {order[i], order[i + 1]};
          i += 2;
          g.a = u(25.0, 35.0);   // omega_a0
          g.b = u(0.8, 1.1);     // omega1
          g.c = u(2.4, 3.2);     // detuning
          g.d = u(0.8, 1.2);     // j
          g.e = u(0.0, 2.0 * M_PI);
        } else {
          g.kind = (rng() % 2 == 0) ? 0 : 1;
          g.qubits = {order[i]};
          i += 1;
          if (g.kind == 0) {
            g.a = u(0.35, 0.58);  // theta
            g.b = u(0.8, 1.5);    // r
            g.c = u(6.0, 12.0);   // omega0
            g.d = u(0.0, 2.0 * M_PI);
          } else {
            g.a = u(0.55, 0.85);  // ej
            g.b = u(5.5, 7.0);    // ec
            g.c = u(0.30, 0.38);  // n_off
            g.d = u(0.0, 2.0 * M_PI);
          }
        }
        rd.gates.push_back(std::move(g));
        ++gate_count;
        if (u(0.0, 1.0) < 0.25) break;  // leave the remaining qubits idle
      }
      sd.rounds.push_back(std::move(rd));
    }
    if (gate_count >= 3) return sd;
  }
}

// 7. Budget additivity: |sigma - sum eps| <= 10 (sum eps)^2 on randomized
//    schedules while every per-gate duration scales by {1, 2, 4}. Base
//    durations are calibrated so the scaled budgets stay above 0.1, where
//    the quadratic envelope dominates interference nulls.
bool criterion7(std::string& detail) {
  Stopwatch timer;
  std::mt19937_64 rng(0xC7C7C7ull);
  IntegrationOptions opts;
  bool ok = true;
  double worst_fill = 0.0;  // |sigma - total| relative to the bound
  double min_total = 1e300;
  const int schedules = 6;
  for (int s = 0; s < schedules; ++s) {
    ScheduleDraw sd = draw_schedule(rng);
    const Vector psi0 = random_unit(1 << sd.qubit_count, rng);
    // per-gate budgets scale exactly as 1/duration, so one probe composition
    // pins the duration multiplier that puts the base budget at 0.8 and the
    // scale-4 budget at 0.2, twice the floor
    const double probe = compose_and_measure(realize(sd, 1.0), psi0, opts).budget.total;
    const double m = std::clamp(probe / 0.8, 0.05, 8.0);
    for (RoundDraw& rd : sd.rounds) rd.duration *= m;
    for (const double scale : {1.0, 2.0, 4.0}) {
      const CompositionResult res = compose_and_measure(realize(sd, scale), psi0, opts);
      const double total = res.budget.total;
      const double gap = std::abs(res.sigma_measured - total);
      const double bound = 10.0 * total * total;
      ok = ok && total >= 0.1 && gap <= bound;
      worst_fill = std::max(worst_fill, gap / bound);
      min_total = std::min(min_total, total);
    }
  }
  const double secs = timer.seconds();
  detail = strf(
      "%d random schedules x T scale {1,2,4}: |sigma - sum eps| <= "
      "10 (sum eps)^2, worst bound fill %.2f, min budget %.2f (floor 0.1), "
      "%.0f s (budget 600)",
      schedules, worst_fill, min_total, secs);
  return ok && secs < 600.0;
}

// 8. Inputs entangled across the gate/spectator cut evolve linearly:
//    branch-by-branch reassembly matches the full propagation to 1e-9.
bool criterion8(std::string& detail) {
  GateSpec gate{cone_path(M_PI / 3.0, 1.0, 10.0, 0.0, 20.0), {1}};
  const double inv = 1.0 / std::sqrt(2.0);

  Vector bell = Vector::Zero(4);
  bell[0] = inv;
  bell[3] = inv;
  const EntangledCheck bc = entangled_input_check(gate, 2, bell);

  Vector ghz = Vector::Zero(8);
  ghz[0] = inv;
  ghz[7] = inv;
  const EntangledCheck gc = entangled_input_check(gate, 3, ghz);

  detail = strf(
      "Bell mismatch %.2e, GHZ mismatch %.2e (limit 1e-09), consistency %s/%s",
      bc.mismatch, gc.mismatch, bc.consistent ? "yes" : "NO",
      gc.consistent ? "yes" : "NO");
  return bc.mismatch <= 1e-9 && gc.mismatch <= 1e-9 && bc.consistent &&
         gc.consistent;
}

// 9. Budget calculator: eps = 0.01 gives exactly 100 gates and a largest
//    factorable size near 4.93; the order-of-magnitude figure N ~ 10 from
//    the original estimate is recorded as a cross-reference.
bool criterion9(std::string& detail) {
  const ShorBound b = shor_bound(0.01);
  const bool m_ok = (b.m_max == 100.0);
  const bool n_ok = std::abs(b.n_max - 4.93) <= 0.01;
  const double ratio = 10.0 / b.n_max;
  const bool decade_ok = ratio > 0.1 && ratio < 10.0;
  std::printf(
      "note: cross-reference: computed N_max %.4f vs the quoted "
      "order-of-magnitude figure N ~ 10 (ratio %.2f, same decade)\n",
      b.n_max, ratio);
  detail = strf(
      "eps 0.01 -> M_max %.17g (must be exactly 100), N_max %.6f "
      "(target 4.93 +- 0.01), N ~ 10 ratio %.2f (within one decade)",
      b.m_max, b.n_max, ratio);
  return m_ok && n_ok && decade_ok;
}

// 10. Annealing: 50 seeded instances on 2-4 qubits at 1/(gap T) = 0.1 read
//     out the brute-force cost minimizer; the deviation envelope falls with
//     slope -1 +- 0.15 over a duration decade; endpoint first-order
//     estimates agree bitwise across paths sharing the endpoints.
bool criterion10(std::string& detail) {
  Stopwatch timer;
  std::mt19937_64 rng(0xA9C0ull);
  IntegrationOptions run_opts;
  run_opts.tolerance = 1e-9;  // readout only needs probabilities
  const int instances = 50;
  int correct = 0;
  bool bitwise_ok = true;
  for (int i = 0; i < instances; ++i) {
    const int qubits = 2 + (i % 3);
    AqcInstance inst = random_aqc_instance(qubits, 1000 + i);
    const double gap = ground_gap_scan(interpolation_path(inst, 0, 1.0));
    const double T = 10.0 / gap;
    const AqcRunReport report = run_aqc(inst, T, run_opts);
    const Readout readout = largest_probability_readout(
        report.final_state, inst.costs, 20.0 * run_opts.tolerance);
    int argmin = 0;
    for (int k = 1; k < inst.costs.size(); ++k)
      if (inst.costs[k] < inst.costs[argmin]) argmin = k;
    if (readout.state == argmin) ++correct;

    // a detour path shares the endpoints, so the endpoint-formula estimates
    // must agree to the bit
    inst.paths.push_back({Shape::kLinear, random_hermitian(1 << qubits, rng, 0.5)});
    const PathIndependenceReport pic = path_independence_check(inst, T);
    bitwise_ok = bitwise_ok && pic.identical && pic.estimates.size() == 2 &&
                 pic.estimates[0] > 0.0;
  }

  IntegrationOptions slope_opts;  // tolerance 1e-10 for the envelope fit
  double worst_slope = -1.0;
  bool slopes_ok = true;
  // the decade starts at gap T = 20 so the readout window 2 pi / final_gap
  // fits inside the second half of the run at every point; below that the
  // window reaches mid-path and the envelope flattens
  const std::uint64_t seeds[2] = {7105, 7230};
  for (int j = 0; j < 2; ++j) {
    const int qubits = 2 + j;
    const AqcInstance inst = random_aqc_instance(qubits, seeds[j]);
    const double gap = ground_gap_scan(interpolation_path(inst, 0, 1.0));
    std::vector<double> ts, devs;
    for (int k = 0; k < 5; ++k) {
      const double T = (20.0 / gap) * std::pow(10.0, k / 4.0);
      devs.push_back(run_aqc(inst, T, slope_opts).window_correction);
      ts.push_back(T);
    }
    const double slope = fit_loglog_slope(ts, devs);
    if (std::abs(slope + 1.0) > std::abs(worst_slope + 1.0)) worst_slope = slope;
    slopes_ok = slopes_ok && std::abs(slope + 1.0) <= 0.15;
  }

  const double secs = timer.seconds();
  detail = strf(
      "readout correct %d/%d at 1/(gap T) = 0.1, worst envelope slope %.3f "
      "(limit -1 +- 0.15), endpoint estimates bitwise equal %s, %.0f s",
      correct, instances, worst_slope, bitwise_ok ? "yes" : "NO", secs);
  return correct == instances && bitwise_ok && slopes_ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance <criterion 1..10>\n");
    return 2;
  }
  const int c = std::atoi(argv[1]);
  if (c < 1 || c > 10) {
    std::fprintf(stderr, "criterion must lie in 1..10\n");
    return 2;
  }
  using Criterion = bool (*)(std::string&);
  static const Criterion table[10] = {criterion1, criterion2, criterion3,
                                      criterion4, criterion5, criterion6,
                                      criterion7, criterion8, criterion9,
                                      criterion10};
  std::string detail;
  bool ok = false;
  try {
    ok = table[c - 1](detail);
  } catch (const std::exception& e) {
    detail = strf("unexpected exception: %s", e.what());
    ok = false;
  }
  std::printf("[%s] c%d: %s\n", ok ? "PASS" : "FAIL", c, detail.c_str());
  return ok ? 0 : 1;
}
