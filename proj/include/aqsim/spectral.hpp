#ifndef AQSIM_SPECTRAL_HPP
#define AQSIM_SPECTRAL_HPP

#include <vector>

#include "aqsim/types.hpp"

namespace aqsim {

// Contiguous group of eigenvector columns sharing one eigenvalue.
struct Block {
  int level;  // block index in ascending-energy order
  int begin;  // first column
  int dim;    // multiplicity
};

// Instantaneous eigenframe of a Hermitian operator.  Columns are orthonormal
// and ordered by ascending eigenvalue; degenerate columns are grouped into
// blocks.  The per-column phase (and intra-block basis) follows a
// deterministic solver gauge, so identical input bits give identical frames.
struct Frame {
  double time = 0.0;
  RealVector eigenvalues;
  Matrix eigenvectors;
  std::vector<Block> blocks;
  double spectral_norm = 0.0;  // max |eigenvalue|

  int dim() const { return static_cast<int>(eigenvalues.size()); }
  int block_count() const { return static_cast<int>(blocks.size()); }

  const Block& block(int level) const;
  // Mean eigenvalue over the block (they agree to round-off by construction).
  double block_energy(int level) const;
  Matrix block_basis(int level) const;
  int column(int level, int sub) const;
  // Block that column `col` belongs to.
  int level_of_column(int col) const;
};

bool is_hermitian(const Matrix& h, double tol_rel = 1e-12);
void require_hermitian(const Matrix& h, double tol_rel = 1e-12);

// Eigendecompose `h`.  `pattern` lists block multiplicities in ascending
// eigenvalue order and is checked against the computed spectrum; an empty
// pattern groups eigenvalues closer than tol_rel * spectral norm.
Frame eigendecompose(const Matrix& h, const std::vector<int>& pattern = {},
                     double time = 0.0, double tol_rel = 1e-8);

// Rotate each block basis of `curr` by the unitary polar factor of its
// overlap with `prev`, making the overlap Hermitian positive definite
// (real positive for 1-dim blocks).  This is one step of discrete parallel
// transport.  Throws if any block overlap has a singular value below 1e-6,
// i.e. the two frames do not describe continuously connected blocks.
Frame align_gauge(const Frame& prev, const Frame& curr);

// <phi_m | d/dt phi_n> = <phi_m | dH/dt | phi_n> / (E_n - E_m) for states in
// distinct blocks (m and n are (level, sub) labels).
Complex derivative_coupling(const Frame& frame, const Matrix& dh, int level_m,
                            int sub_m, int level_n, int sub_n);

// Full matrix of cross-block derivative couplings in the frame basis:
// C(i, j) = <col_i | dH/dt | col_j> / (E_j - E_i), zero inside blocks.
// Exactly anti-Hermitian for Hermitian dh.
Matrix coupling_matrix(const Frame& frame, const Matrix& dh);

}  // namespace aqsim

#endif  // AQSIM_SPECTRAL_HPP
