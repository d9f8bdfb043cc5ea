#include "aqsim/aqc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "aqsim/perturb.hpp"

namespace aqsim {

namespace {

constexpr int kMaxQubits = 8;

void check_instance(const AqcInstance& inst) {
  if (inst.qubit_count < 1 || inst.qubit_count > kMaxQubits)
    fail(ErrorCode::kConfig, "qubit count must lie in [1, 8]");
  const int dim = 1 << inst.qubit_count;
  if (inst.h_b.rows() != dim || inst.h_b.cols() != dim)
    fail(ErrorCode::kConfig, "h_b dimension does not match the qubit count");
  require_hermitian(inst.h_b);
  if (inst.costs.size() != dim)
    fail(ErrorCode::kConfig, "cost vector dimension does not match");
  if (inst.paths.empty()) fail(ErrorCode::kConfig, "instance lists no paths");
}

// argmin and runner-up of the diagonal costs
std::pair<int, int> cost_order(const RealVector& costs) {
  int lo = 0;
  for (int i = 1; i < costs.size(); ++i)
    if (costs(i) < costs(lo)) lo = i;
  int second = lo == 0 ? 1 : 0;
  for (int i = 0; i < costs.size(); ++i)
    if (i != lo && costs(i) < costs(second)) second = i;
  return {lo, second};
}

void check_unique_minimum(const RealVector& costs) {
  const auto [lo, second] = cost_order(costs);
  if (!(costs(second) > costs(lo)))
    fail(ErrorCode::kConfig, "cost minimum is not unique");
}

Vector ground_state(const Matrix& h) {
  const Frame f = eigendecompose(h);
  if (f.block(0).dim != 1)
    fail(ErrorCode::kDegenerateLevel, "starting ground state is degenerate");
  return f.eigenvectors.col(0);
}

double orthogonal_part(const Vector& psi, int minimizer) {
  const double rest = psi.squaredNorm() - std::norm(psi(minimizer));
  return std::sqrt(std::max(rest, 0.0));
}

}  // namespace

Matrix transverse_field_start(int qubit_count) {
  if (qubit_count < 1 || qubit_count > kMaxQubits)
    fail(ErrorCode::kConfig, "qubit count must lie in [1, 8]");
  const int dim = 1 << qubit_count;
  Matrix h = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int q = 0; q < qubit_count; ++q) h(i ^ (1 << q), i) -= 1.0;
  return h;
}

AqcInstance random_aqc_instance(int qubit_count, std::uint64_t seed, double min_gap) {
  if (qubit_count < 1 || qubit_count > kMaxQubits)
    fail(ErrorCode::kConfig, "qubit count must lie in [1, 8]");
  const int dim = 1 << qubit_count;

  AqcInstance inst;
  inst.qubit_count = qubit_count;
  inst.h_b = transverse_field_start(qubit_count);
  inst.paths = {AqcPathSpec{}};

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    RealVector costs(dim);
    for (int i = 0; i < dim; ++i) costs(i) = uniform(rng);
    const auto [lo, second] = cost_order(costs);
    if (costs(second) - costs(lo) < 0.1) continue;
    inst.costs = costs;
    if (ground_gap_scan(interpolation_path(inst, 0, 1.0)) >= min_gap) return inst;
  }
  fail(ErrorCode::kGapScanFailure,
       "no instance with the requested gap floor after 1000 draws");
}

HamiltonianPath interpolation_path(const AqcInstance& inst, int path_index, double T) {
  check_instance(inst);
  check_unique_minimum(inst.costs);
  if (path_index < 0 || path_index >= static_cast<int>(inst.paths.size()))
    fail(ErrorCode::kOutOfRange, "path index out of range");
  if (!(T > 0.0)) fail(ErrorCode::kConfig, "duration must be positive");

  const AqcPathSpec& spec = inst.paths[path_index];
  const int dim = 1 << inst.qubit_count;
  const bool with_detour = spec.detour.size() > 0;
  if (with_detour) {
    if (spec.detour.rows() != dim || spec.detour.cols() != dim)
      fail(ErrorCode::kConfig, "detour dimension does not match");
    require_hermitian(spec.detour);
  }

  const Schedule sched{T, spec.shape};
  const Matrix h_b = inst.h_b;
  const Matrix h_p = Matrix(inst.costs.cast<Complex>().asDiagonal());
  const Matrix detour = with_detour ? Matrix(spec.detour) : Matrix();

  auto h = [sched, h_b, h_p, detour](double t) {
    const double s = sched.s(t);
    Matrix out = (1.0 - s) * h_b + s * h_p;
    if (detour.size() > 0) {
      const double bump = s * (1.0 - s);
      out += (bump * bump) * detour;
    }
    return out;
  };
  auto dh = [sched, h_b, h_p, detour](double t) {
    const double s = sched.s(t);
    Matrix out = h_p - h_b;
    if (detour.size() > 0)
      out += (2.0 * s * (1.0 - s) * (1.0 - 2.0 * s)) * detour;
    return Matrix(sched.ds(t) * out);
  };

  PathMetadata meta;
  meta.name = std::string("aqc_") + shape_name(spec.shape);
  meta.params["qubits"] = inst.qubit_count;
  return HamiltonianPath(dim, sched, h, dh, {}, 0.0, false, meta);
}

double ground_gap_scan(const HamiltonianPath& path, int samples) {
  if (samples < 2) fail(ErrorCode::kConfig, "gap scan needs at least 2 samples");
  double gap = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (int k = 0; k <= samples; ++k) {
    const double t = path.duration() * k / samples;
    Eigen::SelfAdjointEigenSolver<Matrix> es(path.hamiltonian(t),
                                             Eigen::EigenvaluesOnly);
    const auto& e = es.eigenvalues();
    gap = std::min(gap, e(1) - e(0));
    scale = std::max({scale, std::abs(e(0)), std::abs(e(e.size() - 1))});
  }
  if (!(gap > 1e-12 * scale))
    fail(ErrorCode::kGapScanFailure, "ground gap closes along the path");
  return gap;
}

AqcRunReport run_aqc(const AqcInstance& inst, double T, const IntegrationOptions& opts,
                     int path_index) {
  const HamiltonianPath path = interpolation_path(inst, path_index, T);
  const auto [lo, second] = cost_order(inst.costs);

  AqcRunReport report;
  report.final_gap = inst.costs(second) - inst.costs(lo);
  report.min_gap = ground_gap_scan(path);

  const double window = std::min(0.5 * T, 2.0 * M_PI / report.final_gap);
  std::vector<double> times;
  const int window_samples = 32;
  for (int k = 0; k <= window_samples; ++k)
    times.push_back(T - window + window * k / window_samples);
  times.back() = T;  // the recomposed sum can land one ulp past T

  const EvolutionResult run =
      integrate_schrodinger(path, ground_state(inst.h_b), times, opts);
  for (const Vector& psi : run.states)
    report.window_correction =
        std::max(report.window_correction, orthogonal_part(psi, lo));

  report.final_state = run.states.back();
  report.ground_probability = std::norm(report.final_state(lo));
  report.correction_norm = orthogonal_part(report.final_state, lo);
  report.steps_taken = run.steps_taken;
  return report;
}

PathIndependenceReport path_independence_check(const AqcInstance& inst, double T) {
  check_instance(inst);
  if (inst.paths.size() < 2)
    fail(ErrorCode::kConfig, "path independence needs at least two paths");

  std::vector<HamiltonianPath> paths;
  for (size_t i = 0; i < inst.paths.size(); ++i)
    paths.push_back(interpolation_path(inst, static_cast<int>(i), T));

  const Matrix h0_start = paths[0].hamiltonian(0.0);
  const Matrix h0_end = paths[0].hamiltonian(T);
  const double scale = std::max(h0_start.norm(), h0_end.norm());
  for (const HamiltonianPath& p : paths) {
    if ((p.hamiltonian(0.0) - h0_start).norm() > 1e-12 * scale ||
        (p.hamiltonian(T) - h0_end).norm() > 1e-12 * scale)
      fail(ErrorCode::kEndpointMismatch, "paths do not share their endpoints");
  }

  PathIndependenceReport report;
  for (const HamiltonianPath& p : paths) {
    const Eigen::MatrixXd mags =
        endpoint_transition_magnitudes(p.hamiltonian(T), p.derivative(T));
    report.estimates.push_back(mags.col(0).norm());
  }
  for (double e : report.estimates) {
    report.identical = report.identical && (e == report.estimates.front());
    const double lo = std::min(e, report.estimates.front());
    const double hi = std::max(e, report.estimates.front());
    report.max_ratio = std::max(report.max_ratio,
                                lo > 0.0 ? hi / lo
                                : hi > 0.0 ? std::numeric_limits<double>::infinity()
                                           : 1.0);
  }
  return report;
}

Readout largest_probability_readout(const Vector& final_state, const RealVector& costs,
                                    double uncertainty) {
  if (final_state.size() != costs.size())
    fail(ErrorCode::kConfig, "state and cost dimensions do not match");
  check_unique_minimum(costs);

  Readout out;
  double best = -1.0, runner_up = -1.0;
  for (int i = 0; i < final_state.size(); ++i) {
    const double p = std::norm(final_state(i));
    if (p > best) {
      runner_up = best;
      best = p;
      out.state = i;
    } else {
      runner_up = std::max(runner_up, p);
    }
  }
  out.probability = best;
  out.margin = best - std::max(runner_up, 0.0);
  out.decisive = out.margin >= 2.0 * uncertainty;
  out.cost_minimizer = cost_order(costs).first;
  return out;
}

}  // namespace aqsim
