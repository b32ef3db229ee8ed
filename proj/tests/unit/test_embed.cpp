#include <gtest/gtest.h>

#include <random>

#include "qemtp/embed/extended_system.hpp"
#include "qemtp/emtp/solver.hpp"
#include "qemtp/pauli/decomposition.hpp"

using namespace qemtp;
using namespace qemtp::embed;

namespace {

Vector random_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = normal(rng);
  return v;
}

Matrix random_spd(Eigen::Index n, std::uint64_t seed) {
  const Matrix a = pauli::random_symmetric(static_cast<std::size_t>(n), seed);
  return a * a.transpose() + Matrix::Identity(n, n);
}

}  // namespace

TEST(ExtendSystem, ThreeNodesPadToFour) {
  const Matrix g = random_spd(3, 1);
  const ExtendedSystem s = extend_system(g, random_vector(3, 2));
  ASSERT_EQ(s.g_tilde.rows(), 4);
  EXPECT_EQ(s.n_qubits, 2);
  EXPECT_EQ(s.original_dim, 3);
  EXPECT_EQ(s.g_tilde(3, 3), 1.0);
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(s.g_tilde(3, k), 0.0);
    EXPECT_EQ(s.g_tilde(k, 3), 0.0);
  }
  EXPECT_EQ(s.i_hat(3), 0.0);
}

TEST(ExtendSystem, PowerOfTwoIsUnchanged) {
  const Matrix g = random_spd(4, 3);
  const ExtendedSystem s = extend_system(g, random_vector(4, 4));
  EXPECT_EQ(s.n_qubits, 2);
  EXPECT_EQ(s.g_tilde, g);
}

TEST(ExtendSystem, FiveNodesGetIdentityBlockOfThree) {
  const Matrix g = random_spd(5, 5);
  const ExtendedSystem s = extend_system(g, random_vector(5, 6));
  ASSERT_EQ(s.g_tilde.rows(), 8);
  EXPECT_EQ(s.n_qubits, 3);
  EXPECT_EQ(s.g_tilde.bottomRightCorner(3, 3), Matrix::Identity(3, 3));
  EXPECT_EQ(s.g_tilde.topRightCorner(5, 3), Matrix::Zero(5, 3));
  EXPECT_EQ(s.g_tilde.bottomLeftCorner(3, 5), Matrix::Zero(3, 5));
}

TEST(ExtendSystem, SingleNodeUsesOneQubit) {
  Matrix g(1, 1);
  g << 4.0;
  const ExtendedSystem s = extend_system(g, Vector::Constant(1, 2.0));
  EXPECT_EQ(s.n_qubits, 1);
  EXPECT_EQ(s.g_tilde.rows(), 2);
  EXPECT_EQ(qubits_for(1), 1);
  EXPECT_EQ(qubits_for(2), 1);
  EXPECT_EQ(qubits_for(9), 4);
}

TEST(ExtendSystem, RoundTripAndSymmetry) {
  const Matrix g = random_spd(6, 7);
  const Vector i = random_vector(6, 8);
  const ExtendedSystem s = extend_system(g, i);
  EXPECT_EQ(s.g_tilde.topLeftCorner(6, 6), g);
  EXPECT_EQ(s.i_hat.head(6), i);
  EXPECT_EQ(s.g_tilde, s.g_tilde.transpose());
  EXPECT_NEAR((s.i_hat / s.i_norm).norm(), 1.0, 1e-15);

  Matrix asym = g;
  asym(0, 1) += 1.0;
  const Matrix t = extend_matrix(asym);
  EXPECT_NE(t, t.transpose());
}

TEST(Normalize, ThreeFourFive) {
  Vector v(4);
  v << 3, 4, 0, 0;
  const auto [u, n] = normalize(v);
  EXPECT_DOUBLE_EQ(n, 5.0);
  EXPECT_DOUBLE_EQ(u(0), 0.6);
  EXPECT_DOUBLE_EQ(u(1), 0.8);
}

TEST(Normalize, UnitVectorUnchanged) {
  const auto [u, n] = normalize(Vector::Unit(4, 2));
  EXPECT_DOUBLE_EQ(n, 1.0);
  EXPECT_EQ(u, Vector::Unit(4, 2));
}

TEST(Normalize, RandomVectorHasUnitNorm) {
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    EXPECT_NEAR(normalize(random_vector(8, seed)).first.norm(), 1.0, 1e-15);
}

TEST(Normalize, ZeroVectorThrows) { EXPECT_THROW(normalize(Vector::Zero(4)), InvalidParameter); }

TEST(RecoverSolution, IdentityCase) {
  Vector i(4);
  i << 7, 0, 0, 0;
  const Vector v = recover_solution(Vector::Unit(4, 0), Matrix::Identity(4, 4), i, 3);
  ASSERT_EQ(v.size(), 3);
  EXPECT_DOUBLE_EQ(v(0), 7.0);
  EXPECT_DOUBLE_EQ(v(1), 0.0);
}

TEST(RecoverSolution, ExactDirectionRecoversSolutionForEitherSign) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix g = random_spd(5, seed);
    const Vector i = random_vector(5, seed + 50);
    const ExtendedSystem s = extend_system(g, i);
    const Vector v_star = emtp::classical_solve(g, i);
    Vector v_ext = Vector::Zero(8);
    v_ext.head(5) = v_star;
    for (double sign : {1.0, -1.0}) {
      const Vector v = recover_solution(sign * v_ext.normalized(), s.g_tilde, s.i_hat, 5);
      EXPECT_LE((v - v_star).norm(), 1e-12 * v_star.norm());
    }
  }
}

TEST(RecoverSolution, OrthogonalDirectionDoesNotShrinkResidual) {
  const Matrix g = random_spd(4, 9);
  const Vector i = random_vector(4, 10);
  // w with <G w, i> = 0 by Gram-Schmidt of a random direction against G i.
  const Vector gi = g * i;
  Vector w = random_vector(4, 11);
  w -= (w.dot(gi) / gi.squaredNorm()) * gi;
  w.normalize();
  const Vector v = recover_solution(w, g, i, 4);
  EXPECT_NEAR((g * v - i).norm(), i.norm(), 1e-12);
  EXPECT_NEAR(recover_scale(w, g, i), 0.0, 1e-12);
}

TEST(RecoverSolution, DegenerateStateThrows) {
  Matrix g = Matrix::Identity(2, 2);
  g(1, 1) = 0.0;
  EXPECT_THROW(recover_scale(Vector::Unit(2, 1), g, Vector::Unit(2, 0)), Error);
}
