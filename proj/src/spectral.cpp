#include "aqsim/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace aqsim {

namespace {

// Deterministic per-column gauge: rotate the entry of largest modulus
// (lowest index on ties) to the positive real axis.
void fix_column_phases(Matrix& v) {
  for (int j = 0; j < v.cols(); ++j) {
    int anchor = 0;
    double best = -1.0;
    for (int i = 0; i < v.rows(); ++i) {
      const double a = std::abs(v(i, j));
      if (a > best + 1e-15 * best) {
        best = a;
        anchor = i;
      }
    }
    const Complex z = v(anchor, j);
    if (std::abs(z) > 0.0) v.col(j) *= std::conj(z) / std::abs(z);
  }
}

std::vector<Block> group_by_tolerance(const RealVector& ev, double tol_abs) {
  std::vector<Block> blocks;
  int begin = 0;
  for (int i = 1; i <= ev.size(); ++i) {
    if (i == ev.size() || ev[i] - ev[i - 1] > tol_abs) {
      blocks.push_back({static_cast<int>(blocks.size()), begin, i - begin});
      begin = i;
    }
  }
  return blocks;
}

std::vector<Block> group_by_pattern(const RealVector& ev,
                                    const std::vector<int>& pattern,
                                    double tol_abs) {
  const int dim = static_cast<int>(ev.size());
  int total = 0;
  for (int m : pattern) {
    if (m <= 0) fail(ErrorCode::kDegeneracyMismatch, "non-positive multiplicity in degeneracy pattern");
    total += m;
  }
  if (total != dim) {
    std::ostringstream os;
    os << "degeneracy pattern sums to " << total << " but operator dimension is " << dim;
    fail(ErrorCode::kDegeneracyMismatch, os.str());
  }
  std::vector<Block> blocks;
  int begin = 0;
  for (size_t b = 0; b < pattern.size(); ++b) {
    const int m = pattern[b];
    const double spread = ev[begin + m - 1] - ev[begin];
    if (spread > tol_abs) {
      std::ostringstream os;
      os << "declared block " << b << " (multiplicity " << m << ") spans eigenvalue spread "
         << spread << " > tolerance " << tol_abs;
      fail(ErrorCode::kDegeneracyMismatch, os.str());
    }
    if (begin + m < dim) {
      const double gap = ev[begin + m] - ev[begin + m - 1];
      if (gap <= tol_abs) {
        std::ostringstream os;
        os << "gap " << gap << " after declared block " << b
           << " is below tolerance " << tol_abs << "; blocks are not separated";
        fail(ErrorCode::kDegeneracyMismatch, os.str());
      }
    }
    blocks.push_back({static_cast<int>(b), begin, m});
    begin += m;
  }
  return blocks;
}

}  // namespace

const Block& Frame::block(int level) const {
  if (level < 0 || level >= block_count())
    fail(ErrorCode::kOutOfRange, "block level out of range");
  return blocks[level];
}

double Frame::block_energy(int level) const {
  const Block& b = block(level);
  return eigenvalues.segment(b.begin, b.dim).mean();
}

Matrix Frame::block_basis(int level) const {
  const Block& b = block(level);
  return eigenvectors.middleCols(b.begin, b.dim);
}

int Frame::column(int level, int sub) const {
  const Block& b = block(level);
  if (sub < 0 || sub >= b.dim)
    fail(ErrorCode::kOutOfRange, "sub index out of range within block");
  return b.begin + sub;
}

int Frame::level_of_column(int col) const {
  for (const Block& b : blocks)
    if (col >= b.begin && col < b.begin + b.dim) return b.level;
  fail(ErrorCode::kOutOfRange, "column out of range");
}

bool is_hermitian(const Matrix& h, double tol_rel) {
  if (h.rows() != h.cols()) return false;
  const double scale = std::max(h.cwiseAbs().maxCoeff(), 1e-300);
  return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol_rel * scale;
}

void require_hermitian(const Matrix& h, double tol_rel) {
  if (!is_hermitian(h, tol_rel))
    fail(ErrorCode::kNonHermitian, "operator is not Hermitian within tolerance");
}

Frame eigendecompose(const Matrix& h, const std::vector<int>& pattern,
                     double time, double tol_rel) {
  require_hermitian(h);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::kNonHermitian, "eigendecomposition failed to converge");

  Frame f;
  f.time = time;
  f.eigenvalues = solver.eigenvalues();
  f.eigenvectors = solver.eigenvectors();
  fix_column_phases(f.eigenvectors);
  f.spectral_norm =
      std::max(std::abs(f.eigenvalues[0]), std::abs(f.eigenvalues[f.eigenvalues.size() - 1]));

  const double tol_abs = tol_rel * f.spectral_norm + 1e-300;
  f.blocks = pattern.empty() ? group_by_tolerance(f.eigenvalues, tol_abs)
                             : group_by_pattern(f.eigenvalues, pattern, tol_abs);
  return f;
}

Frame align_gauge(const Frame& prev, const Frame& curr) {
  if (prev.dim() != curr.dim() || prev.block_count() != curr.block_count())
    fail(ErrorCode::kDegeneracyMismatch, "align_gauge: frames have different block structure");

  Frame out = curr;
  for (const Block& b : curr.blocks) {
    if (prev.blocks[b.level].dim != b.dim)
      fail(ErrorCode::kDegeneracyMismatch, "align_gauge: block multiplicities differ");
    if (b.dim == 1) {
      const Complex z = prev.eigenvectors.col(prev.blocks[b.level].begin)
                            .dot(curr.eigenvectors.col(b.begin));
      const double r = std::abs(z);
      if (r < 1e-6)
        fail(ErrorCode::kBlockOverlapSingular,
             "align_gauge: near-orthogonal 1-dim block overlap");
      out.eigenvectors.col(b.begin) *= std::conj(z) / r;
    } else {
      const Matrix overlap =
          prev.eigenvectors.middleCols(prev.blocks[b.level].begin, b.dim).adjoint() *
          curr.eigenvectors.middleCols(b.begin, b.dim);
      Eigen::JacobiSVD<Matrix> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
      if (svd.singularValues().minCoeff() < 1e-6)
        fail(ErrorCode::kBlockOverlapSingular,
             "align_gauge: block overlap is near singular");
      // overlap = U S V^dag; right-multiplying by V U^dag makes it U S U^dag > 0.
      out.eigenvectors.middleCols(b.begin, b.dim) =
          curr.eigenvectors.middleCols(b.begin, b.dim) *
          (svd.matrixV() * svd.matrixU().adjoint());
    }
  }
  return out;
}

Complex derivative_coupling(const Frame& frame, const Matrix& dh, int level_m,
                            int sub_m, int level_n, int sub_n) {
  if (level_m == level_n)
    fail(ErrorCode::kSameBlock,
         "derivative coupling is undefined inside a degenerate block");
  const double de = frame.block_energy(level_n) - frame.block_energy(level_m);
  if (std::abs(de) < 1e-300)
    fail(ErrorCode::kZeroGap, "derivative coupling across a vanishing gap");
  const int cm = frame.column(level_m, sub_m);
  const int cn = frame.column(level_n, sub_n);
  return frame.eigenvectors.col(cm).dot(dh * frame.eigenvectors.col(cn)) / de;
}

Matrix coupling_matrix(const Frame& frame, const Matrix& dh) {
  const int dim = frame.dim();
  const Matrix a = frame.eigenvectors.adjoint() * dh * frame.eigenvectors;
  Matrix c = Matrix::Zero(dim, dim);
  for (const Block& bm : frame.blocks) {
    for (const Block& bn : frame.blocks) {
      if (bm.level == bn.level) continue;
      const double de = frame.block_energy(bn.level) - frame.block_energy(bm.level);
      for (int i = bm.begin; i < bm.begin + bm.dim; ++i)
        for (int j = bn.begin; j < bn.begin + bn.dim; ++j) c(i, j) = a(i, j) / de;
    }
  }
  return c;
}

}  // namespace aqsim
