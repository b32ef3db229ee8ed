#include "qemtp/embed/extended_system.hpp"

#include <string>

namespace qemtp::embed {

int qubits_for(std::size_t dim) {
  if (dim == 0) throw InvalidParameter("embed: empty system");
  int n = 1;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

Matrix extend_matrix(const Matrix& g) {
  if (g.rows() != g.cols()) throw InvalidParameter("embed: admittance matrix must be square");
  const Eigen::Index padded = Eigen::Index{1} << qubits_for(static_cast<std::size_t>(g.rows()));
  if (padded == g.rows()) return g;
  Matrix out = Matrix::Identity(padded, padded);
  out.topLeftCorner(g.rows(), g.cols()) = g;
  return out;
}

Vector extend_vector(const Vector& v, std::size_t padded_dim) {
  if (static_cast<std::size_t>(v.size()) > padded_dim) throw InvalidParameter("embed: vector longer than register");
  Vector out = Vector::Zero(static_cast<Eigen::Index>(padded_dim));
  out.head(v.size()) = v;
  return out;
}

ExtendedSystem extend_system(const Matrix& g, const Vector& i) {
  if (g.rows() != i.size())
    throw InvalidParameter("embed: matrix is " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()) +
                           " but current vector has " + std::to_string(i.size()) + " entries");
  ExtendedSystem s;
  s.original_dim = static_cast<int>(g.rows());
  s.n_qubits = qubits_for(static_cast<std::size_t>(g.rows()));
  s.g_tilde = extend_matrix(g);
  s.i_hat = extend_vector(i, std::size_t{1} << s.n_qubits);
  s.i_norm = s.i_hat.norm();
  return s;
}

std::pair<Vector, double> normalize(const Vector& v) {
  const double norm = v.norm();
  if (norm == 0.0) throw InvalidParameter("normalize: zero vector has no quantum state");
  return {v / norm, norm};
}

double recover_scale(const Vector& v_unit, const Matrix& g_tilde, const Vector& i_hat) {
  const Vector gv = g_tilde * v_unit;
  const double gv2 = gv.squaredNorm();
  if (gv2 == 0.0) throw InvalidParameter("recover_solution: degenerate state, G v vanishes");
  return gv.dot(i_hat) / gv2;
}

Vector recover_solution(const Vector& v_unit, const Matrix& g_tilde, const Vector& i_hat, std::size_t original_dim) {
  if (original_dim > static_cast<std::size_t>(v_unit.size()))
    throw InvalidParameter("recover_solution: original dimension exceeds register");
  return recover_scale(v_unit, g_tilde, i_hat) * v_unit.head(static_cast<Eigen::Index>(original_dim));
}

}  // namespace qemtp::embed
