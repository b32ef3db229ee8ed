#include "qemtp/pauli/kronecker.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace qemtp::pauli {

BlockDims BlockDims::square_split(int n_qubits) {
  if (n_qubits < 1) throw InvalidParameter("square_split: need at least one qubit");
  const int lead = 1 << ((n_qubits + 1) / 2);
  const int trail = 1 << (n_qubits / 2);
  return {lead, lead, trail, trail};
}

namespace {

void check_dims(const Matrix& g, const BlockDims& d) {
  if (d.m1 < 1 || d.n1 < 1 || d.m2 < 1 || d.n2 < 1)
    throw InvalidParameter("kronecker: block dimensions must be positive");
  if (g.rows() != static_cast<Eigen::Index>(d.m1) * d.m2 || g.cols() != static_cast<Eigen::Index>(d.n1) * d.n2)
    throw InvalidParameter("kronecker: " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()) +
                           " matrix does not factor as (" + std::to_string(d.m1) + "*" + std::to_string(d.m2) +
                           ")x(" + std::to_string(d.n1) + "*" + std::to_string(d.n2) + ")");
}

}  // namespace

Matrix rearrange(const Matrix& g, const BlockDims& d) {
  check_dims(g, d);
  Matrix r(static_cast<Eigen::Index>(d.m1) * d.n1, static_cast<Eigen::Index>(d.m2) * d.n2);
  for (int j = 0; j < d.n1; ++j)
    for (int i = 0; i < d.m1; ++i) {
      const Eigen::Index row = static_cast<Eigen::Index>(j) * d.m1 + i;
      for (int q = 0; q < d.n2; ++q)
        for (int p = 0; p < d.m2; ++p)
          r(row, static_cast<Eigen::Index>(q) * d.m2 + p) = g(static_cast<Eigen::Index>(i) * d.m2 + p,
                                                              static_cast<Eigen::Index>(j) * d.n2 + q);
    }
  return r;
}

Matrix unrearrange(const Matrix& r, const BlockDims& d) {
  if (r.rows() != static_cast<Eigen::Index>(d.m1) * d.n1 || r.cols() != static_cast<Eigen::Index>(d.m2) * d.n2)
    throw InvalidParameter("unrearrange: dimension mismatch");
  Matrix g(static_cast<Eigen::Index>(d.m1) * d.m2, static_cast<Eigen::Index>(d.n1) * d.n2);
  for (int j = 0; j < d.n1; ++j)
    for (int i = 0; i < d.m1; ++i) {
      const Eigen::Index row = static_cast<Eigen::Index>(j) * d.m1 + i;
      for (int q = 0; q < d.n2; ++q)
        for (int p = 0; p < d.m2; ++p)
          g(static_cast<Eigen::Index>(i) * d.m2 + p, static_cast<Eigen::Index>(j) * d.n2 + q) =
              r(row, static_cast<Eigen::Index>(q) * d.m2 + p);
    }
  return g;
}

int max_rank(const BlockDims& d) { return std::min(d.m1 * d.n1, d.m2 * d.n2); }

Matrix KroneckerFactorSet::reconstruct() const {
  Matrix g = Matrix::Zero(static_cast<Eigen::Index>(dims.m1) * dims.m2, static_cast<Eigen::Index>(dims.n1) * dims.n2);
  for (std::size_t r = 0; r < leading.size(); ++r) {
    const Matrix& b = leading[r];
    const Matrix& c = trailing[r];
    for (int i = 0; i < dims.m1; ++i)
      for (int j = 0; j < dims.n1; ++j)
        g.block(static_cast<Eigen::Index>(i) * dims.m2, static_cast<Eigen::Index>(j) * dims.n2, dims.m2, dims.n2) +=
            b(i, j) * c;
  }
  return g;
}

double KroneckerFactorSet::tail_norm() const {
  const Eigen::Index r = rank();
  if (r >= singular_values.size()) return 0.0;
  return singular_values.tail(singular_values.size() - r).norm();
}

KroneckerFactorSet gkd(const Matrix& g, const BlockDims& dims, std::optional<int> rank) {
  const Matrix r = rearrange(g, dims);
  const int limit = max_rank(dims);
  if (rank && (*rank < 1 || *rank > limit))
    throw InvalidParameter("gkd: rank " + std::to_string(*rank) + " outside [1, " + std::to_string(limit) + "]");

  Eigen::BDCSVD<Matrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  KroneckerFactorSet out;
  out.dims = dims;
  out.singular_values = svd.singularValues();

  int chosen = 0;
  if (rank) {
    chosen = *rank;
  } else {
    const double sigma1 = out.singular_values.size() > 0 ? out.singular_values(0) : 0.0;
    for (Eigen::Index k = 0; k < out.singular_values.size(); ++k)
      if (out.singular_values(k) > kRankCutoff * sigma1) chosen = static_cast<int>(k) + 1;
    chosen = std::max(chosen, 1);
  }

  out.leading.reserve(static_cast<std::size_t>(chosen));
  out.trailing.reserve(static_cast<std::size_t>(chosen));
  for (int k = 0; k < chosen; ++k) {
    const double s = std::sqrt(out.singular_values(k));
    const Vector u = s * svd.matrixU().col(k);
    const Vector v = s * svd.matrixV().col(k);
    out.leading.push_back(Eigen::Map<const Matrix>(u.data(), dims.m1, dims.n1));
    out.trailing.push_back(Eigen::Map<const Matrix>(v.data(), dims.m2, dims.n2));
  }
  return out;
}

KroneckerFactorSet gkd(const Matrix& g, std::optional<int> rank) {
  if (g.rows() != g.cols() || !is_power_of_two(static_cast<std::size_t>(g.rows())) || g.rows() < 2)
    throw InvalidParameter("gkd: input must be square with power-of-two dimension >= 2");
  return gkd(g, BlockDims::square_split(exact_log2(static_cast<std::size_t>(g.rows()))), rank);
}

std::pair<Matrix, Matrix> nkd(const Matrix& g) {
  KroneckerFactorSet f = gkd(g, 1);
  return {std::move(f.leading.front()), std::move(f.trailing.front())};
}

}  // namespace qemtp::pauli
