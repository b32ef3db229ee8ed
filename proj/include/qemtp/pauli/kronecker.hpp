#pragma once

#include "qemtp/common.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qemtp::pauli {

/// Block structure of an (m1*m2) x (n1*n2) matrix seen as an m1 x n1 grid of
/// m2 x n2 blocks.
struct BlockDims {
  int m1 = 0;
  int n1 = 0;
  int m2 = 0;
  int n2 = 0;

  /// 2^ceil(n/2) x 2^ceil(n/2) grid of 2^floor(n/2) square blocks.
  static BlockDims square_split(int n_qubits);
};

/// Van Loan-Pitsianis rearrangement. Row j*m1 + i of the (m1*n1) x (m2*n2)
/// result is vec(G_ij)^T, with blocks enumerated down each block column and
/// vec() stacking columns. Then ||G - B (x) C||_F = ||R(G) - vec(B) vec(C)^T||_F.
Matrix rearrange(const Matrix& g, const BlockDims& dims);

/// Inverse of rearrange().
Matrix unrearrange(const Matrix& r, const BlockDims& dims);

/// Rank-R Kronecker decomposition G ~= sum_r leading[r] (x) trailing[r].
struct KroneckerFactorSet {
  BlockDims dims;
  std::vector<Matrix> leading;   ///< m1 x n1 factors (Gamma_r).
  std::vector<Matrix> trailing;  ///< m2 x n2 factors (Z_r).
  Vector singular_values;        ///< Full spectrum of R(G), descending.

  int rank() const noexcept { return static_cast<int>(leading.size()); }
  Matrix reconstruct() const;
  /// sqrt(sum_{r > R} sigma_r^2): the optimal Frobenius error at this rank.
  double tail_norm() const;
};

/// Singular values at or below this fraction of sigma_1 count as zero when the
/// rank is chosen automatically.
inline constexpr double kRankCutoff = 1e-12;

/// Largest valid rank min(m1*n1, m2*n2) for the split.
int max_rank(const BlockDims& dims);

/// Generalized Kronecker decomposition from the top-R singular triples of
/// rearrange(g): vec(Gamma_r) = sqrt(s_r) u_r, vec(Z_r) = sqrt(s_r) v_r.
/// With no rank given, R is the numerical rank of R(G) under kRankCutoff.
/// Throws InvalidParameter when R is outside [1, max_rank].
KroneckerFactorSet gkd(const Matrix& g, const BlockDims& dims, std::optional<int> rank = std::nullopt);

/// Square power-of-two input split as 2^ceil(n/2) / 2^floor(n/2).
KroneckerFactorSet gkd(const Matrix& g, std::optional<int> rank = std::nullopt);

/// Nearest single Kronecker product (the R = 1 case).
std::pair<Matrix, Matrix> nkd(const Matrix& g);

}  // namespace qemtp::pauli
