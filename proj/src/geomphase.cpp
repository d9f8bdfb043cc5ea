#include "aqsim/geomphase.hpp"

#include <algorithm>
#include <cmath>

#include "aqsim/detail/quadrature.hpp"

namespace aqsim {

namespace {

std::vector<double> build_times(double T, int steps, std::vector<double> extra) {
  if (steps < 2) fail(ErrorCode::kConfig, "transport grid needs at least 2 steps");
  std::vector<double> times;
  times.reserve(steps + 1 + extra.size());
  for (int k = 0; k <= steps; ++k) times.push_back(T * k / steps);
  for (double t : extra) times.push_back(t);
  std::sort(times.begin(), times.end());
  const double eps = 1e-12 * T;
  times.erase(std::unique(times.begin(), times.end(),
                          [eps](double a, double b) { return b - a <= eps; }),
              times.end());
  return times;
}

void check_floor(const Frame& f, double floor) {
  if (floor <= 0.0) return;
  for (int b = 0; b + 1 < f.block_count(); ++b)
    if (f.block_energy(b + 1) - f.block_energy(b) < 0.9 * floor)
      fail(ErrorCode::kBlockGapViolation,
           "spectral gap fell below 0.9 x declared floor during transport");
}

}  // namespace

std::vector<TransportSample> transport_samples(const HamiltonianPath& path,
                                               const std::vector<double>& times,
                                               int steps) {
  if (!std::is_sorted(times.begin(), times.end()))
    fail(ErrorCode::kConfig, "transport sample times must be sorted");
  if (times.empty()) return {};
  if (times.front() < 0.0 || times.back() > path.duration())
    fail(ErrorCode::kOutOfRange, "transport sample time outside the path duration");

  // Walk only as far as requested; gap preconditions cover [0, t] only.
  const double span = times.back() > 0.0 ? times.back() : path.duration();
  const std::vector<double> grid = build_times(span, steps, times);
  const double eps = 1e-12 * std::max(path.duration(), 1.0);
  const int dim = path.dim();

  Frame raw = path.frame(grid[0]);
  Frame chain = raw;
  std::vector<detail::KahanSum> acc(dim);

  std::vector<TransportSample> out;
  out.reserve(times.size());
  size_t want = 0;
  auto record = [&](double t) {
    while (want < times.size() && std::abs(times[want] - t) <= eps) {
      RealVector eta(dim);
      for (int c = 0; c < dim; ++c) eta(c) = acc[c].sum;
      out.push_back(TransportSample{t, chain, raw, std::move(eta)});
      ++want;
    }
  };

  check_floor(raw, path.gap_floor());
  record(grid[0]);
  for (size_t k = 1; k < grid.size() && want < times.size(); ++k) {
    const Frame prev = raw;  // eigenvalues reused for the Simpson rule
    raw = path.frame(grid[k]);
    check_floor(raw, path.gap_floor());
    chain = align_gauge(chain, raw);

    const double t0 = grid[k - 1], t1 = grid[k];
    Eigen::SelfAdjointEigenSolver<Matrix> mid(path.hamiltonian(0.5 * (t0 + t1)),
                                              Eigen::EigenvaluesOnly);
    for (int c = 0; c < dim; ++c)
      acc[c].add(-(t1 - t0) / 6.0 *
                 (prev.eigenvalues(c) + 4.0 * mid.eigenvalues()(c) + raw.eigenvalues(c)));
    record(grid[k]);
  }
  if (want != times.size())
    fail(ErrorCode::kOutOfRange, "transport sample time missed the walk grid");
  return out;
}

TransportSample transport_to(const HamiltonianPath& path, double t, int steps) {
  return transport_samples(path, {t}, steps).front();
}

double dynamic_phase(const HamiltonianPath& path, int level, double t1, double tol) {
  if (t1 < 0.0 || t1 > path.duration())
    fail(ErrorCode::kOutOfRange, "dynamic_phase: time outside the path duration");
  auto energy = [&path, level](double t) { return path.frame(t).block_energy(level); };
  return -detail::adaptive_simpson(energy, 0.0, t1, tol);
}

std::vector<Matrix> wz_holonomy_samples(const HamiltonianPath& path, int level,
                                        const std::vector<double>& times, int steps) {
  const std::vector<TransportSample> walk = transport_samples(path, times, steps);
  std::vector<Matrix> out;
  out.reserve(walk.size());
  for (const TransportSample& s : walk) {
    if (level < 0 || level >= s.reference.block_count())
      fail(ErrorCode::kOutOfRange, "holonomy level out of range");
    const Block b = s.reference.block(level);
    out.push_back(s.reference.eigenvectors.middleCols(b.begin, b.dim).adjoint() *
                  s.chain.eigenvectors.middleCols(b.begin, b.dim));
  }
  return out;
}

Matrix wz_holonomy(const HamiltonianPath& path, int level, double t1, int steps) {
  return wz_holonomy_samples(path, level, {t1}, steps).front();
}

Matrix wz_holonomy(const HamiltonianPath& path, int level) {
  return wz_holonomy(path, level, path.duration());
}

double berry_phase(const HamiltonianPath& path, int level, double t1, int steps) {
  if (path.frame(0.0).block(level).dim != 1)
    fail(ErrorCode::kDegenerateLevel,
         "berry_phase needs a nondegenerate level; use the holonomy instead");
  return std::arg(wz_holonomy(path, level, t1, steps)(0, 0));
}

double berry_phase(const HamiltonianPath& path, int level) {
  return berry_phase(path, level, path.duration());
}

PhaseLedger phase_ledger(const HamiltonianPath& path, double t, int steps) {
  return phase_ledger_samples(path, {t}, steps).front();
}

std::vector<PhaseLedger> phase_ledger_samples(const HamiltonianPath& path,
                                              const std::vector<double>& times,
                                              int steps) {
  const std::vector<TransportSample> walk = transport_samples(path, times, steps);
  std::vector<PhaseLedger> out;
  out.reserve(walk.size());
  for (const TransportSample& s : walk) {
    PhaseLedger ledger;
    ledger.time = s.time;
    for (int level = 0; level < s.reference.block_count(); ++level) {
      const Block b = s.reference.block(level);
      BlockPhase bp;
      bp.level = level;
      bp.dim = b.dim;
      bp.eta = s.eta(b.begin);
      bp.holonomy = s.reference.eigenvectors.middleCols(b.begin, b.dim).adjoint() *
                    s.chain.eigenvectors.middleCols(b.begin, b.dim);
      bp.gamma = b.dim == 1 ? std::arg(bp.holonomy(0, 0)) : 0.0;
      ledger.blocks.push_back(std::move(bp));
    }
    out.push_back(std::move(ledger));
  }
  return out;
}

}  // namespace aqsim
