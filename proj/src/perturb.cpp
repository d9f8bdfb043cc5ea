#include "aqsim/perturb.hpp"

#include <cmath>
#include <limits>

namespace aqsim {

namespace {

void check_normalized(const Vector& a0, int dim) {
  if (a0.size() != dim)
    fail(ErrorCode::kConfig, "amplitude vector dimension does not match the path");
  if (std::abs(a0.norm() - 1.0) > 1e-10)
    fail(ErrorCode::kStateInvalid, "initial amplitudes must be normalized");
}

double regime_gap(const HamiltonianPath& path) {
  return path.gap_floor() > 0.0 ? path.gap_floor() : path.min_gap();
}

Vector phased(const Vector& a0, const RealVector& eta) {
  Vector out(a0.size());
  for (int c = 0; c < a0.size(); ++c) out(c) = a0(c) * std::polar(1.0, eta(c));
  return out;
}

FirstOrderResult result_at(const HamiltonianPath& path, const Vector& a0,
                           const TransportSample& s, double gap) {
  FirstOrderResult r;
  r.zeroth = s.chain.eigenvectors * phased(a0, s.eta);

  // <chi_m | d/dt chi_n> in the transported gauge, zero intra-block.
  const Matrix d = coupling_matrix(s.chain, path.derivative(s.time));
  r.transition_elements = Matrix::Zero(path.dim(), path.dim());
  for (int n = 0; n < path.dim(); ++n)
    for (int m = 0; m < path.dim(); ++m)
      if (s.chain.level_of_column(m) != s.chain.level_of_column(n))
        r.transition_elements(m, n) =
            std::polar(1.0, s.eta(n)) * d(m, n) /
            (s.chain.eigenvalues(m) - s.chain.eigenvalues(n));

  r.target_amplitudes = r.transition_elements * a0;
  r.correction = s.chain.eigenvectors * r.target_amplitudes;
  r.state = r.zeroth + r.correction;
  r.correction_norm = r.target_amplitudes.norm();
  r.regime_ratio = s.time > 0.0 ? 1.0 / (gap * s.time)
                                : std::numeric_limits<double>::infinity();
  r.regime_ok = r.regime_ratio < 1.0;
  return r;
}

}  // namespace

std::vector<Vector> zeroth_order_samples(const HamiltonianPath& path, const Vector& a0,
                                         const std::vector<double>& times, int steps) {
  check_normalized(a0, path.dim());
  std::vector<Vector> out;
  for (const TransportSample& s : transport_samples(path, times, steps))
    out.push_back(s.chain.eigenvectors * phased(a0, s.eta));
  return out;
}

Vector zeroth_order_propagate(const HamiltonianPath& path, const Vector& a0, double t,
                              int steps) {
  return zeroth_order_samples(path, a0, {t}, steps).front();
}

std::vector<FirstOrderResult> first_order_samples(const HamiltonianPath& path,
                                                  const Vector& a0,
                                                  const std::vector<double>& times,
                                                  int steps) {
  check_normalized(a0, path.dim());
  const double gap = regime_gap(path);
  std::vector<FirstOrderResult> out;
  for (const TransportSample& s : transport_samples(path, times, steps))
    out.push_back(result_at(path, a0, s, gap));
  return out;
}

FirstOrderResult first_order_propagate(const HamiltonianPath& path, const Vector& a0,
                                       double t, int steps) {
  return first_order_samples(path, a0, {t}, steps).front();
}

ErrorReport nonadiabatic_error(const HamiltonianPath& path, const Vector& a0, double T,
                               GateKind kind, int steps) {
  check_normalized(a0, path.dim());
  const Frame start = path.frame(0.0);
  const double support_tol = 1e-12;
  if (kind == GateKind::kBerry) {
    for (int c = 0; c < path.dim(); ++c)
      if (std::abs(a0(c)) > support_tol &&
          start.block(start.level_of_column(c)).dim != 1)
        fail(ErrorCode::kSupportViolation,
             "berry-kind gate requires all populated levels non-degenerate");
  } else {
    int block = -1;
    for (int c = 0; c < path.dim(); ++c) {
      if (std::abs(a0(c)) <= support_tol) continue;
      const int level = start.level_of_column(c);
      if (block == -1) block = level;
      if (level != block)
        fail(ErrorCode::kSupportViolation,
             "wz-kind gate input must live in a single degenerate block");
    }
  }

  const FirstOrderResult first = first_order_propagate(path, a0, T, steps);
  ErrorReport report;
  report.kind = kind;
  report.amplitudes = first.target_amplitudes;
  report.block_norms = RealVector::Zero(start.block_count());
  for (int c = 0; c < path.dim(); ++c)
    report.block_norms(start.level_of_column(c)) += std::norm(first.target_amplitudes(c));
  report.block_norms = report.block_norms.cwiseSqrt();
  report.total_norm = first.correction_norm;
  report.estimate = error_magnitude_estimate(regime_gap(path), T, 1);
  report.regime_ratio = first.regime_ratio;
  report.regime_ok = first.regime_ok;
  return report;
}

double error_magnitude_estimate(double gap, double T, int k) {
  if (!(gap > 0.0) || !(T > 0.0) || k < 1)
    fail(ErrorCode::kNonPositiveInput,
         "error_magnitude_estimate needs gap > 0, T > 0, k >= 1");
  return std::pow(1.0 / (gap * T), k);
}

Eigen::MatrixXd endpoint_transition_magnitudes(const Matrix& h, const Matrix& dh,
                                               const std::vector<int>& pattern) {
  const Frame f = eigendecompose(h, pattern);
  const Matrix a = f.eigenvectors.adjoint() * dh * f.eigenvectors;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(f.dim(), f.dim());
  for (int n = 0; n < f.dim(); ++n)
    for (int m = 0; m < f.dim(); ++m)
      if (f.level_of_column(m) != f.level_of_column(n)) {
        const double de = f.eigenvalues(n) - f.eigenvalues(m);
        out(m, n) = std::abs(a(m, n)) / (de * de);
      }
  return out;
}

}  // namespace aqsim
