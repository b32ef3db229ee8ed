#pragma once

#include "qemtp/common.hpp"

#include <utility>

namespace qemtp::embed {

/// The nodal system padded to the next power-of-two dimension: G sits in the
/// top-left block, the trailing block is an identity, and the current vector
/// is zero-extended.
struct ExtendedSystem {
  Matrix g_tilde;
  Vector i_hat;
  double i_norm = 0.0;  ///< ||i_hat||_2
  int original_dim = 0;
  int n_qubits = 0;
};

/// Smallest register holding `dim` amplitudes (at least one qubit).
int qubits_for(std::size_t dim);

Matrix extend_matrix(const Matrix& g);
Vector extend_vector(const Vector& v, std::size_t padded_dim);
ExtendedSystem extend_system(const Matrix& g, const Vector& i);

/// (v / ||v||, ||v||). Throws InvalidParameter for the zero vector.
std::pair<Vector, double> normalize(const Vector& v);

/// Least-squares scale s minimizing ||s G v_unit - i_hat||: <G v, i> / ||G v||^2.
/// The sign of s also fixes the global sign of the state. Throws
/// InvalidParameter when G v_unit vanishes.
double recover_scale(const Vector& v_unit, const Matrix& g_tilde, const Vector& i_hat);

/// First `original_dim` entries of recover_scale(...) * v_unit.
Vector recover_solution(const Vector& v_unit, const Matrix& g_tilde, const Vector& i_hat, std::size_t original_dim);

}  // namespace qemtp::embed
