#include "aqsim/exact.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "aqsim/detail/ode.hpp"
#include "aqsim/spectral.hpp"

namespace aqsim {

namespace {

void check_request(const HamiltonianPath& path, const Vector& psi0,
                   const std::vector<double>& samples, const IntegrationOptions& opts) {
  if (psi0.size() != path.dim())
    fail(ErrorCode::kConfig, "initial state dimension does not match the path");
  if (opts.tolerance < 1e-13 || opts.tolerance > 1e-6)
    fail(ErrorCode::kConfig, "integration tolerance outside [1e-13, 1e-6]");
  if (!std::is_sorted(samples.begin(), samples.end()))
    fail(ErrorCode::kConfig, "sample times must be sorted");
  if (!samples.empty() && (samples.front() < 0.0 || samples.back() > path.duration()))
    fail(ErrorCode::kConfig, "sample times outside the path duration");
}

detail::StepControl control_for(const HamiltonianPath& path,
                                const IntegrationOptions& opts) {
  detail::StepControl ctl;
  ctl.atol = ctl.rtol = opts.safety * opts.tolerance;
  ctl.max_steps = opts.max_steps;
  ctl.span_hint = path.duration();
  return ctl;
}

}  // namespace

EvolutionResult integrate_schrodinger(const HamiltonianPath& path, const Vector& psi0,
                                      std::vector<double> sample_times,
                                      const IntegrationOptions& opts) {
  check_request(path, psi0, sample_times, opts);
  auto rhs = [&path](double t, const Vector& y, Vector& f) {
    f.noalias() = Complex(0.0, -1.0) * (path.hamiltonian(t) * y);
  };
  detail::DopriIntegrator integrator(rhs, control_for(path, opts));

  EvolutionResult out;
  const double norm0 = psi0.norm();
  Vector y = psi0;
  double t = 0.0;
  for (double s : sample_times) {
    integrator.advance(t, s, y);
    t = s;
    out.times.push_back(s);
    out.states.push_back(y);
    out.norm_drift = std::max(out.norm_drift, std::abs(y.norm() - norm0));
  }
  out.steps_taken = integrator.steps_taken();
  return out;
}

EvolutionResult integrate_amplitude_ode(const HamiltonianPath& path, const Vector& psi0,
                                        std::vector<double> sample_times,
                                        const IntegrationOptions& opts) {
  check_request(path, psi0, sample_times, opts);
  if (path.pattern().empty())
    fail(ErrorCode::kConfig,
         "amplitude formulation needs a declared degeneracy pattern");

  const int dim = path.dim();
  const Frame start = path.frame(0.0);
  std::vector<int> block_of(dim);
  for (int c = 0; c < dim; ++c) block_of[c] = start.level_of_column(c);

  // State layout: W columns, then b, then eta (real, stored complex).
  Vector y(dim * dim + 2 * dim);
  Eigen::Map<Matrix>(y.data(), dim, dim) = start.eigenvectors;
  y.segment(dim * dim, dim) = start.eigenvectors.adjoint() * psi0;
  y.segment(dim * dim + dim, dim).setZero();

  Matrix coupling(dim, dim);
  auto rhs = [&](double t, const Vector& v, Vector& f) {
    const Eigen::Map<const Matrix> w(v.data(), dim, dim);
    const auto b = v.segment(dim * dim, dim);
    const auto eta = v.segment(dim * dim + dim, dim);

    Eigen::SelfAdjointEigenSolver<Matrix> solver(path.hamiltonian(t),
                                                 Eigen::EigenvaluesOnly);
    const RealVector& e = solver.eigenvalues();
    const double crossing_tol = 1e-12 * std::max(e.cwiseAbs().maxCoeff(), 1e-300);
    coupling.noalias() = w.adjoint() * path.derivative(t) * w;
    for (int n = 0; n < dim; ++n)
      for (int m = 0; m < dim; ++m) {
        if (block_of[m] == block_of[n]) {
          coupling(m, n) = Complex(0.0);
          continue;
        }
        if (std::abs(e(n) - e(m)) < crossing_tol)
          fail(ErrorCode::kCrossingDetected,
               "levels from different blocks crossed during integration");
        coupling(m, n) /= e(n) - e(m);
      }

    Eigen::Map<Matrix>(f.data(), dim, dim).noalias() = w * coupling;
    for (int m = 0; m < dim; ++m) {
      Complex sum(0.0);
      for (int n = 0; n < dim; ++n)
        sum += coupling(m, n) * std::polar(1.0, eta(n).real()) * b(n);
      f(dim * dim + m) = -std::polar(1.0, -eta(m).real()) * sum;
      f(dim * dim + dim + m) = -e(m);
    }
  };
  detail::DopriIntegrator integrator(rhs, control_for(path, opts));

  EvolutionResult out;
  const double norm0 = psi0.norm();
  double t = 0.0;
  for (double s : sample_times) {
    integrator.advance(t, s, y);
    t = s;
    const Eigen::Map<const Matrix> w(y.data(), dim, dim);
    Vector phased(dim);
    for (int n = 0; n < dim; ++n)
      phased(n) = y(dim * dim + n) * std::polar(1.0, y(dim * dim + dim + n).real());
    out.times.push_back(s);
    out.states.push_back(w * phased);
    out.norm_drift = std::max(out.norm_drift, std::abs(out.states.back().norm() - norm0));
  }
  out.steps_taken = integrator.steps_taken();
  return out;
}

}  // namespace aqsim
