#include "aqsim/gatearray.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "aqsim/geomphase.hpp"

namespace aqsim {

namespace {

constexpr int kMaxQubits = 12;

int subset_mask(const std::vector<int>& qubits) {
  int mask = 0;
  for (int q : qubits) mask |= 1 << q;
  return mask;
}

// Global basis index whose subset bits reproduce `local`.
int scatter_bits(int local, const std::vector<int>& qubits) {
  int global = 0;
  for (size_t b = 0; b < qubits.size(); ++b)
    if (local >> b & 1) global |= 1 << qubits[b];
  return global;
}

void check_gate(const GateSpec& gate, int qubit_count) {
  if (gate.qubits.empty())
    fail(ErrorCode::kConfig, "gate needs at least one qubit");
  int mask = 0;
  for (int q : gate.qubits) {
    if (q < 0 || q >= qubit_count)
      fail(ErrorCode::kConfig, "gate qubit index outside the register");
    if (mask >> q & 1)
      fail(ErrorCode::kQubitOverlap, "gate lists a qubit twice");
    mask |= 1 << q;
  }
  if (gate.path.dim() != 1 << gate.qubits.size())
    fail(ErrorCode::kConfig, "gate dimension does not match 2^(subset size)");
}

void check_state(const Vector& psi0, int dim) {
  if (psi0.size() != dim)
    fail(ErrorCode::kConfig, "state dimension does not match the register");
  if (std::abs(psi0.norm() - 1.0) > 1e-10)
    fail(ErrorCode::kStateInvalid, "input state must be normalized");
}

// Idle sigma_z/2 energy of global index `state` over qubits outside `covered`.
double idle_energy(int state, int covered, int qubit_count, double idle_z) {
  if (idle_z == 0.0) return 0.0;
  double e = 0.0;
  for (int q = 0; q < qubit_count; ++q)
    if (!(covered >> q & 1)) e += 0.5 * idle_z * ((state >> q & 1) ? -1.0 : 1.0);
  return e;
}

// Adiabatic-limit and first-order endpoint operators of one gate in the
// physical basis: U0 = chain(T) diag(e^{i eta}) ref(0)^dag and the matching
// correction operator with the endpoint transition elements in the middle.
struct GateOperators {
  Matrix zeroth;
  Matrix first;
};

GateOperators gate_operators(const HamiltonianPath& path, int steps = 10000) {
  const TransportSample s = transport_to(path, path.duration(), steps);
  const int dim = path.dim();

  Vector phase(dim);
  for (int c = 0; c < dim; ++c) phase(c) = std::polar(1.0, s.eta(c));
  const Matrix start_dag = path.frame(0.0).eigenvectors.adjoint();

  const Matrix d = coupling_matrix(s.chain, path.derivative(s.time));
  Matrix te = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m < dim; ++m)
      if (s.chain.level_of_column(m) != s.chain.level_of_column(n))
        te(m, n) = phase(n) * d(m, n) /
                   (s.chain.eigenvalues(m) - s.chain.eigenvalues(n));

  GateOperators out;
  out.zeroth = s.chain.eigenvectors * phase.asDiagonal() * start_dag;
  out.first = s.chain.eigenvectors * te * start_dag;
  return out;
}

// Summed embedded Hamiltonian of one round (plus idle Zeeman terms) as a
// path of its own, for the exact integrator.
HamiltonianPath round_path(std::vector<GateSpec> gates, double duration,
                           int qubit_count, double idle_z) {
  const int dim = 1 << qubit_count;
  int covered = 0;
  for (const GateSpec& g : gates) covered |= subset_mask(g.qubits);

  auto h = [gates, duration, qubit_count, dim, covered, idle_z](double t) {
    // finite-difference stencils may poke past the endpoints
    const double tc = std::clamp(t, 0.0, duration);
    Matrix out = Matrix::Zero(dim, dim);
    for (const GateSpec& g : gates)
      out += embed_operator(g.path.hamiltonian(tc), g.qubits, qubit_count);
    for (int i = 0; i < dim; ++i)
      out(i, i) += idle_energy(i, covered, qubit_count, idle_z);
    return out;
  };
  auto dh = [gates, duration, qubit_count, dim](double t) {
    const double tc = std::clamp(t, 0.0, duration);
    Matrix out = Matrix::Zero(dim, dim);
    for (const GateSpec& g : gates)
      out += embed_operator(g.path.derivative(tc), g.qubits, qubit_count);
    return out;
  };
  return HamiltonianPath(dim, Schedule{duration, Shape::kLinear}, h, dh, {}, 0.0,
                         false, PathMetadata{"round", {}});
}

}  // namespace

Matrix embed_operator(const Matrix& op, const std::vector<int>& qubits,
                      int qubit_count) {
  const int local_dim = 1 << qubits.size();
  if (op.rows() != local_dim || op.cols() != local_dim)
    fail(ErrorCode::kConfig, "operator dimension does not match the qubit subset");
  const int dim = 1 << qubit_count;
  const int mask = subset_mask(qubits);

  Matrix out = Matrix::Zero(dim, dim);
  for (int rest = 0; rest < dim; ++rest) {
    if (rest & mask) continue;
    for (int jl = 0; jl < local_dim; ++jl) {
      const int col = rest | scatter_bits(jl, qubits);
      for (int il = 0; il < local_dim; ++il)
        out(rest | scatter_bits(il, qubits), col) = op(il, jl);
    }
  }
  return out;
}

void validate_schedule(const GateSchedule& schedule) {
  if (schedule.qubit_count < 1)
    fail(ErrorCode::kConfig, "schedule needs at least one qubit");
  if (schedule.qubit_count > kMaxQubits)
    fail(ErrorCode::kDimensionOverflow, "register exceeds 2^12 dimensions");
  for (const Round& round : schedule.rounds) {
    if (!(round.duration > 0.0))
      fail(ErrorCode::kConfig, "round duration must be positive");
    int used = 0;
    for (const GateSpec& gate : round.gates) {
      check_gate(gate, schedule.qubit_count);
      const int mask = subset_mask(gate.qubits);
      if (used & mask)
        fail(ErrorCode::kQubitOverlap, "parallel gates share a qubit");
      used |= mask;
      if (std::abs(gate.path.duration() - round.duration) >
          1e-12 * round.duration)
        fail(ErrorCode::kConfig, "gate duration does not match its round");
    }
  }
}

CompositionResult compose_and_measure(const GateSchedule& schedule, const Vector& psi0,
                                      const IntegrationOptions& opts) {
  validate_schedule(schedule);
  const int n = schedule.qubit_count;
  const int dim = 1 << n;
  check_state(psi0, dim);

  CompositionResult result;
  Vector exact = psi0;
  Vector zeroth = psi0;
  double running = 0.0;

  for (const Round& round : schedule.rounds) {
    int covered = 0;
    for (const GateSpec& g : round.gates) covered |= subset_mask(g.qubits);

    // Per-gate budget against the zeroth-order state entering the round,
    // and the round's adiabatic-limit unitary.  Parallel embeddings act on
    // disjoint qubits, so the product order is immaterial.
    Matrix u0 = Matrix::Identity(dim, dim);
    for (const GateSpec& gate : round.gates) {
      const GateOperators ops = gate_operators(gate.path);
      const double eps =
          (embed_operator(ops.first, gate.qubits, n) * zeroth).norm();
      result.budget.per_gate.push_back(eps);
      running += eps;
      u0 = embed_operator(ops.zeroth, gate.qubits, n) * u0;
    }
    result.budget.round_totals.push_back(running);

    if (schedule.idle_z != 0.0) {
      Vector idle_phase(dim);
      for (int i = 0; i < dim; ++i)
        idle_phase(i) = std::polar(
            1.0, -idle_energy(i, covered, n, schedule.idle_z) * round.duration);
      u0 = idle_phase.asDiagonal() * u0;
    }
    zeroth = u0 * zeroth;

    const HamiltonianPath hr =
        round_path(round.gates, round.duration, n, schedule.idle_z);
    exact = integrate_schrodinger(hr, exact, {round.duration}, opts).states.front();
  }

  result.budget.total = running;
  result.exact_final = std::move(exact);
  result.zeroth_final = std::move(zeroth);
  result.sigma_measured = (result.exact_final - result.zeroth_final).norm();
  return result;
}

EntangledCheck entangled_input_check(const GateSpec& gate, int qubit_count,
                                     const Vector& psi0, double tolerance,
                                     const IntegrationOptions& opts) {
  if (qubit_count < 1 || qubit_count > kMaxQubits)
    fail(ErrorCode::kConfig, "qubit count out of range");
  check_gate(gate, qubit_count);
  const int dim = 1 << qubit_count;
  check_state(psi0, dim);

  const double T = gate.path.duration();
  const HamiltonianPath full =
      round_path({gate}, T, qubit_count, /*idle_z=*/0.0);
  const Vector direct =
      integrate_schrodinger(full, psi0, {T}, opts).states.front();

  // psi0 = sum over spectator configurations |rest> (x) branch; each branch
  // rides through the bare gate on its own.
  const int mask = subset_mask(gate.qubits);
  const int local_dim = gate.path.dim();
  Vector rebuilt = Vector::Zero(dim);
  for (int rest = 0; rest < dim; ++rest) {
    if (rest & mask) continue;
    Vector branch(local_dim);
    for (int il = 0; il < local_dim; ++il)
      branch(il) = psi0(rest | scatter_bits(il, gate.qubits));
    if (branch.norm() < 1e-14) continue;
    const Vector out =
        integrate_schrodinger(gate.path, branch, {T}, opts).states.front();
    for (int il = 0; il < local_dim; ++il)
      rebuilt(rest | scatter_bits(il, gate.qubits)) = out(il);
  }

  EntangledCheck report;
  report.mismatch = (direct - rebuilt).norm();
  report.tolerance = tolerance;
  report.consistent = report.mismatch <= tolerance;
  return report;
}

ShorBound shor_bound(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    fail(ErrorCode::kOutOfRange, "per-gate error must lie in (0, 1)");
  return ShorBound{1.0 / epsilon,
                   std::pow(10.0, std::cbrt(1.0 / (300.0 * epsilon)))};
}

}  // namespace aqsim
