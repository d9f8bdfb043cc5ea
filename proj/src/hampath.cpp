#include "aqsim/hampath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aqsim {

namespace {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix kron2(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool integral(double x) { return std::nearbyint(x) == x; }

double require_param(const std::map<std::string, double>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end())
    fail(ErrorCode::kConfig, "named_gap_estimate: missing parameter '" + key + "'");
  return it->second;
}

}  // namespace

HamiltonianPath::HamiltonianPath(int dim, Schedule schedule, MatrixFn h, MatrixFn dh,
                                 std::vector<int> pattern, double gap_floor,
                                 bool closed, PathMetadata meta)
    : dim_(dim),
      schedule_(schedule),
      h_(std::move(h)),
      dh_(std::move(dh)),
      pattern_(std::move(pattern)),
      gap_floor_(gap_floor),
      closed_(closed),
      meta_(std::move(meta)) {
  if (dim_ < 1) fail(ErrorCode::kConfig, "path dimension must be positive");
  if (schedule_.T <= 0.0) fail(ErrorCode::kConfig, "path duration must be positive");
  if (!h_) fail(ErrorCode::kConfig, "path needs a Hamiltonian function");
}

Matrix HamiltonianPath::hamiltonian(double t) const { return h_(t); }

Matrix HamiltonianPath::derivative(double t) const {
  if (dh_) return dh_(t);
  const double step = 1e-6 * schedule_.T;
  return (h_(t + step) - h_(t - step)) / (2.0 * step);
}

Frame HamiltonianPath::frame(double t) const {
  return eigendecompose(h_(t), pattern_, t);
}

double HamiltonianPath::min_gap(int samples) const {
  double gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= samples; ++k) {
    const double t = schedule_.T * k / samples;
    const Frame f = eigendecompose(h_(t), pattern_, t);
    for (int b = 0; b + 1 < f.block_count(); ++b)
      gap = std::min(gap, f.block_energy(b + 1) - f.block_energy(b));
  }
  return gap;
}

void HamiltonianPath::validate(int samples) const {
  for (int k = 0; k <= samples; ++k) {
    const double t = schedule_.T * k / samples;
    require_hermitian(h_(t));
  }
  if (closed_) {
    const Matrix d = h_(schedule_.T) - h_(0.0);
    const double scale = std::max(h_(0.0).cwiseAbs().maxCoeff(), 1e-300);
    if (d.cwiseAbs().maxCoeff() > 1e-10 * scale)
      fail(ErrorCode::kEndpointMismatch, "path declared closed but H(T) != H(0)");
  }
  if (gap_floor_ > 0.0 && min_gap(samples) < 0.9 * gap_floor_)
    fail(ErrorCode::kBlockGapViolation,
         "sampled spectral gap fell below 0.9 x declared floor");
}

HamiltonianPath reversed(const HamiltonianPath& path) {
  const double T = path.duration();
  PathMetadata meta = path.metadata();
  meta.name += "_reversed";
  return HamiltonianPath(
      path.dim(), path.schedule(), [path, T](double t) { return path.hamiltonian(T - t); },
      [path, T](double t) { return Matrix(-path.derivative(T - t)); }, path.pattern(),
      path.gap_floor(), path.closed(), std::move(meta));
}

// --------------------------------------------------------------------------
// NMR single qubit
// --------------------------------------------------------------------------

HamiltonianPath nmr_single_path(const NmrParams& p, const Schedule& sched) {
  const double detuning = p.omega0 - p.omega;
  const double r = std::hypot(p.omega1, detuning);
  if (r < 1e-12) fail(ErrorCode::kZeroGap, "nmr_single: |R| vanishes, levels cross");

  const Matrix sx = pauli_x(), sy = pauli_y(), sz = pauli_z();
  auto phi = [p, sched](double t) { return p.phi_start + 2.0 * M_PI * p.turns * sched.s(t); };
  auto h = [=](double t) {
    const double f = phi(t);
    return Matrix(0.5 * (p.omega1 * std::cos(f) * sx + p.omega1 * std::sin(f) * sy +
                         detuning * sz));
  };
  auto dh = [=](double t) {
    const double f = phi(t);
    const double fdot = 2.0 * M_PI * p.turns * sched.ds(t);
    return Matrix(0.5 * p.omega1 * fdot * (-std::sin(f) * sx + std::cos(f) * sy));
  };
  PathMetadata meta{"nmr_single",
                    {{"omega0", p.omega0},
                     {"omega1", p.omega1},
                     {"omega", p.omega},
                     {"phi_start", p.phi_start},
                     {"turns", p.turns}}};
  return HamiltonianPath(2, sched, h, dh, {1, 1}, r, integral(p.turns), std::move(meta));
}

// --------------------------------------------------------------------------
// NMR qubit pair
// --------------------------------------------------------------------------

HamiltonianPath nmr_two_qubit_path(const NmrTwoQubitParams& p, const Schedule& sched) {
  const double detuning = p.omega_a0 - p.omega;
  const double r_up = std::hypot(p.omega1, detuning + 0.5 * p.j);
  const double r_down = std::hypot(p.omega1, detuning - 0.5 * p.j);
  if (r_up < 1e-12 || r_down < 1e-12)
    fail(ErrorCode::kZeroGap, "nmr_two_qubit: a conditional |R| vanishes");

  const Matrix id = Matrix::Identity(2, 2);
  const Matrix x_a = kron2(pauli_x(), id), y_a = kron2(pauli_y(), id),
               z_a = kron2(pauli_z(), id), zz = kron2(pauli_z(), pauli_z());

  auto phi = [p, sched](double t) { return p.phi_start + 2.0 * M_PI * p.turns * sched.s(t); };
  auto h = [=](double t) {
    const double f = phi(t);
    return Matrix(0.5 * p.omega1 * (std::cos(f) * x_a + std::sin(f) * y_a) +
                  0.5 * detuning * z_a + 0.25 * p.j * zz);
  };
  auto dh = [=](double t) {
    const double f = phi(t);
    const double fdot = 2.0 * M_PI * p.turns * sched.ds(t);
    return Matrix(0.5 * p.omega1 * fdot * (-std::sin(f) * x_a + std::cos(f) * y_a));
  };

  // Spectrum {+-r_up/2, +-r_down/2}; the two conditional sectors become
  // accidentally degenerate when the detuning vanishes.
  std::vector<double> ev{-0.5 * r_up, -0.5 * r_down, 0.5 * r_down, 0.5 * r_up};
  std::sort(ev.begin(), ev.end());
  const double scale = std::max(r_up, r_down);
  std::vector<int> pattern;
  double floor = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < ev.size();) {
    size_t j = i + 1;
    while (j < ev.size() && ev[j] - ev[j - 1] <= 1e-12 * scale) ++j;
    pattern.push_back(static_cast<int>(j - i));
    if (j < ev.size()) floor = std::min(floor, ev[j] - ev[j - 1]);
    i = j;
  }
  if (pattern.size() < 2) fail(ErrorCode::kZeroGap, "nmr_two_qubit: spectrum collapsed");

  PathMetadata meta{"nmr_two_qubit",
                    {{"omega_a0", p.omega_a0},
                     {"omega1", p.omega1},
                     {"omega", p.omega},
                     {"j", p.j},
                     {"phi_start", p.phi_start},
                     {"turns", p.turns}}};
  return HamiltonianPath(4, sched, h, dh, pattern, floor, integral(p.turns),
                         std::move(meta));
}

HamiltonianPath nmr_conditional_path(const NmrTwoQubitParams& p, const Schedule& sched,
                                     bool partner_up) {
  NmrParams q;
  q.omega0 = p.omega_a0 + (partner_up ? 0.5 : -0.5) * p.j;
  q.omega1 = p.omega1;
  q.omega = p.omega;
  q.phi_start = p.phi_start;
  q.turns = p.turns;
  HamiltonianPath path = nmr_single_path(q, sched);
  PathMetadata meta = path.metadata();
  meta.name = partner_up ? "nmr_conditional_up" : "nmr_conditional_down";
  return HamiltonianPath(2, sched, [path](double t) { return path.hamiltonian(t); },
                         [path](double t) { return path.derivative(t); }, path.pattern(),
                         path.gap_floor(), path.closed(), std::move(meta));
}

// --------------------------------------------------------------------------
// Josephson charge qubit
// --------------------------------------------------------------------------

HamiltonianPath josephson_charge_path(const JosephsonParams& p, const Schedule& sched) {
  const double rz = p.ec * (1.0 - 2.0 * p.n_off);
  const double r = std::hypot(p.ej, rz);
  if (r < 1e-12) fail(ErrorCode::kZeroGap, "josephson_charge: |R| vanishes");

  const Matrix sx = pauli_x(), sy = pauli_y(), sz = pauli_z();
  auto alpha = [p, sched](double t) {
    return p.alpha_start + 2.0 * M_PI * p.turns * sched.s(t);
  };
  auto h = [=](double t) {
    const double a = alpha(t);
    return Matrix(0.5 * (p.ej * std::cos(a) * sx - p.ej * std::sin(a) * sy + rz * sz));
  };
  auto dh = [=](double t) {
    const double a = alpha(t);
    const double adot = 2.0 * M_PI * p.turns * sched.ds(t);
    return Matrix(0.5 * p.ej * adot * (-std::sin(a) * sx - std::cos(a) * sy));
  };
  PathMetadata meta{"josephson_charge",
                    {{"ej", p.ej},
                     {"ec", p.ec},
                     {"n_off", p.n_off},
                     {"alpha_start", p.alpha_start},
                     {"turns", p.turns}}};
  return HamiltonianPath(2, sched, h, dh, {1, 1}, r, integral(p.turns), std::move(meta));
}

// --------------------------------------------------------------------------
// Tripod ion
// --------------------------------------------------------------------------

HamiltonianPath tripod_ion_path(const TripodCouplings& c, const Schedule& sched,
                                bool closed, PathMetadata meta) {
  auto h = [c, sched](double t) {
    const double s = sched.s(t);
    Matrix m = Matrix::Zero(4, 4);
    m(3, 0) = c.w0(s);
    m(3, 1) = c.w1(s);
    m(3, 2) = c.wa(s);
    m(0, 3) = std::conj(m(3, 0));
    m(1, 3) = std::conj(m(3, 1));
    m(2, 3) = std::conj(m(3, 2));
    return m;
  };
  auto dh = [c, sched](double t) {
    const double s = sched.s(t);
    const double sdot = sched.ds(t);
    Matrix m = Matrix::Zero(4, 4);
    m(3, 0) = c.dw0(s) * sdot;
    m(3, 1) = c.dw1(s) * sdot;
    m(3, 2) = c.dwa(s) * sdot;
    m(0, 3) = std::conj(m(3, 0));
    m(1, 3) = std::conj(m(3, 1));
    m(2, 3) = std::conj(m(3, 2));
    return m;
  };
  // Spectrum is (-w, 0, 0, +w); the dark-bright gap equals w(t).
  double floor = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 1000; ++k) {
    const double s = static_cast<double>(k) / 1000.0;
    const double w = std::sqrt(std::norm(c.w0(s)) + std::norm(c.w1(s)) + std::norm(c.wa(s)));
    floor = std::min(floor, w);
  }
  if (floor < 1e-12)
    fail(ErrorCode::kZeroGap, "tripod_ion: coupling norm vanishes along the path");
  return HamiltonianPath(4, sched, h, dh, {1, 2, 1}, floor, closed, std::move(meta));
}

HamiltonianPath tripod_ion_path(const TripodParams& p, const Schedule& sched) {
  if (p.omega <= 0.0) fail(ErrorCode::kZeroGap, "tripod_ion: coupling norm must be positive");
  const Complex e0 = std::polar(1.0, p.chi0), e1 = std::polar(1.0, p.chi1),
                ea = std::polar(1.0, p.chia);
  TripodCouplings c;
  bool closed = false;
  if (p.loop == "spherical") {
    const double st = std::sin(p.theta), ct = std::cos(p.theta);
    auto phi = [p](double s) { return p.phi_start + 2.0 * M_PI * p.turns * s; };
    const double dphi = 2.0 * M_PI * p.turns;
    c.w0 = [=](double s) { return p.omega * st * std::cos(phi(s)) * e0; };
    c.w1 = [=](double s) { return p.omega * st * std::sin(phi(s)) * e1; };
    c.wa = [=](double) { return p.omega * ct * ea; };
    c.dw0 = [=](double s) { return -p.omega * st * std::sin(phi(s)) * dphi * e0; };
    c.dw1 = [=](double s) { return p.omega * st * std::cos(phi(s)) * dphi * e1; };
    c.dwa = [](double) { return Complex(0.0); };
    closed = integral(p.turns);
  } else if (p.loop == "swap") {
    c.w0 = [=](double s) { return p.omega * std::cos(0.5 * M_PI * s) * e0; };
    c.w1 = [=](double s) { return p.omega * std::sin(0.5 * M_PI * s) * e1; };
    c.wa = [=](double) { return Complex(0.0); };
    c.dw0 = [=](double s) { return -0.5 * M_PI * p.omega * std::sin(0.5 * M_PI * s) * e0; };
    c.dw1 = [=](double s) { return 0.5 * M_PI * p.omega * std::cos(0.5 * M_PI * s) * e1; };
    c.dwa = [](double) { return Complex(0.0); };
  } else {
    fail(ErrorCode::kConfig, "tripod_ion: unknown loop kind '" + p.loop + "'");
  }
  PathMetadata meta{"tripod_ion",
                    {{"omega", p.omega},
                     {"theta", p.theta},
                     {"phi_start", p.phi_start},
                     {"turns", p.turns},
                     {"chi0", p.chi0},
                     {"chi1", p.chi1},
                     {"chia", p.chia}}};
  return tripod_ion_path(c, sched, closed, std::move(meta));
}

// --------------------------------------------------------------------------
// Trapped-ion pair
// --------------------------------------------------------------------------

HamiltonianPath ion_two_bit_path(const IonTwoBitParams& p, const Schedule& sched) {
  if (p.delta == 0.0) fail(ErrorCode::kConfig, "ion_two_bit: delta must be nonzero");
  const double g = p.eta * p.eta / p.delta;
  const double a2 = p.omega1 * p.omega1, b2 = p.omegaa * p.omegaa;
  const double w = std::hypot(a2, b2);
  if (std::abs(g) * w < 1e-12)
    fail(ErrorCode::kZeroGap, "ion_two_bit: effective coupling vanishes");

  auto phi = [p, sched](double t) { return p.phi_start + 2.0 * M_PI * p.turns * sched.s(t); };
  auto h = [=](double t) {
    const Complex e = std::polar(1.0, phi(t));
    Matrix m = Matrix::Zero(3, 3);
    m(2, 0) = -g * a2 * e;
    m(2, 1) = g * b2;
    m(0, 2) = std::conj(m(2, 0));
    m(1, 2) = std::conj(m(2, 1));
    return m;
  };
  auto dh = [=](double t) {
    const double fdot = 2.0 * M_PI * p.turns * sched.ds(t);
    const Complex e = std::polar(1.0, phi(t)) * Complex(0.0, fdot);
    Matrix m = Matrix::Zero(3, 3);
    m(2, 0) = -g * a2 * e;
    m(0, 2) = std::conj(m(2, 0));
    return m;
  };
  PathMetadata meta{"ion_two_bit",
                    {{"omega1", p.omega1},
                     {"omegaa", p.omegaa},
                     {"eta", p.eta},
                     {"delta", p.delta},
                     {"phi_start", p.phi_start},
                     {"turns", p.turns}}};
  return HamiltonianPath(3, sched, h, dh, {1, 1, 1}, std::abs(g) * w,
                         integral(p.turns), std::move(meta));
}

// --------------------------------------------------------------------------
// Gap formulas for the non-simulated proposals
// --------------------------------------------------------------------------

double named_gap_estimate(const std::string& model,
                          const std::map<std::string, double>& params) {
  double gap = 0.0;
  if (model == "choi_single") {
    const double h = require_param(params, "h");
    const double j1 = require_param(params, "j1");
    const double j2 = require_param(params, "j2");
    gap = std::sqrt(h * h + j1 * j1 + j2 * j2) - h;
  } else if (model == "choi_two") {
    const double jb = require_param(params, "jb");
    const double h = require_param(params, "h");
    gap = std::min(std::sqrt(jb * jb + 4.0 * h * h) - 2.0 * h, 2.0 * h);
  } else if (model == "faoro_single") {
    const double dec = require_param(params, "delta_ec");
    const double j = require_param(params, "j");
    double coeff = 2.0;
    if (auto it = params.find("plus_branch_coefficient"); it != params.end()) {
      coeff = it->second;
      if (coeff != 1.0 && coeff != 2.0)
        fail(ErrorCode::kConfig, "faoro_single: plus_branch_coefficient must be 1 or 2");
    }
    const double upper = std::abs(dec + std::sqrt(dec * dec + coeff * j * j));
    const double lower = std::abs(dec - std::sqrt(dec * dec + j * j));
    gap = std::min(upper, lower);
  } else if (model == "faoro_two") {
    const double jx = require_param(params, "jx");
    const double jm2 = require_param(params, "jm2");
    gap = 0.5 * std::hypot(jx, jm2);
  } else {
    fail(ErrorCode::kConfig, "named_gap_estimate: unknown model '" + model + "'");
  }
  if (!(gap > 0.0))
    fail(ErrorCode::kNonPositiveGap, "named_gap_estimate: gap is not positive");
  return gap;
}

}  // namespace aqsim
