#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "qemtp/pauli/accounting.hpp"
#include "qemtp/pauli/decomposition.hpp"
#include "qemtp/pauli/kronecker.hpp"
#include "qemtp/pauli/mlqc.hpp"
#include "qemtp/pauli/pauli_string.hpp"

using namespace qemtp;
using namespace qemtp::pauli;

namespace {

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

template <typename M>
M kron(const M& a, const M& b) {
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Coefficients of every string, zero where not stored.
Vector dense_coefficients(const PauliDecomposition& d) {
  Vector c = Vector::Zero(Eigen::Index{1} << (2 * d.n_qubits()));
  for (const auto& t : d.terms()) c(static_cast<Eigen::Index>(t.string.index())) = t.coefficient;
  return c;
}

}  // namespace

// ---------------------------------------------------------------- strings

TEST(PauliString, ParsePrintRoundTrip) {
  for (const char* s : {"I", "XYZ", "ZZIY", "YYYYY"}) EXPECT_EQ(PauliString::parse(s).str(), s);
  EXPECT_THROW(PauliString::parse("XQ"), InvalidParameter);
  EXPECT_THROW(PauliString::parse(""), InvalidParameter);
}

TEST(PauliString, LeftmostLetterActsOnQubitZero) {
  const PauliString s = PauliString::parse("XI");
  EXPECT_EQ(s[0], PauliLetter::X);
  EXPECT_EQ(s[1], PauliLetter::I);
  const ComplexMatrix x = PauliString::parse("X").to_matrix();
  const ComplexMatrix expected = kron<Matrix>(x.real(), Matrix::Identity(2, 2)).cast<Complex>();
  EXPECT_LE((s.to_matrix() - expected).norm(), 1e-15);
}

TEST(PauliString, EntryMatchesDenseMatrix) {
  for (std::uint64_t idx = 0; idx < 64; ++idx) {
    const PauliString s(3, idx);
    const ComplexMatrix m = s.to_matrix();
    for (std::uint64_t r = 0; r < 8; ++r)
      for (std::uint64_t c = 0; c < 8; ++c)
        EXPECT_EQ(s.entry(r, c), m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))) << s.str();
  }
}

TEST(PauliString, YCountAndParity) {
  EXPECT_TRUE(is_odd_y(PauliString::parse("IY")));
  EXPECT_FALSE(is_odd_y(PauliString::parse("YY")));
  EXPECT_TRUE(is_odd_y(PauliString::parse("XYZ")));
  EXPECT_EQ(PauliString::parse("YIYY").y_count(), 3);
}

TEST(PauliString, ConcatIsKroneckerProduct) {
  const PauliString a = PauliString::parse("XY");
  const PauliString b = PauliString::parse("Z");
  const PauliString ab = a.concat(b);
  EXPECT_EQ(ab.str(), "XYZ");
  EXPECT_LE((ab.to_matrix() - kron(a.to_matrix(), b.to_matrix())).norm(), 1e-15);
}

// ---------------------------------------------------------- decomposition

TEST(NaiveDecompose, TwoByTwo) {
  Matrix g(2, 2);
  g << 2, 1, 1, 2;
  const PauliDecomposition d = naive_pauli_decompose(g);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d.coefficient(PauliString::parse("I")), 2.0, 1e-15);
  EXPECT_NEAR(d.coefficient(PauliString::parse("X")), 1.0, 1e-15);
}

TEST(NaiveDecompose, IdentityIsSingleTerm) {
  const PauliDecomposition d = naive_pauli_decompose(Matrix(Matrix::Identity(4, 4)));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.terms()[0].string.str(), "II");
  EXPECT_DOUBLE_EQ(d.terms()[0].coefficient, 1.0);
}

TEST(NaiveDecompose, ComplexPauliY) {
  ComplexMatrix y(2, 2);
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  const PauliDecomposition d = naive_pauli_decompose(y);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.terms()[0].string.str(), "Y");
  EXPECT_NEAR(d.terms()[0].coefficient, 1.0, 1e-15);
}

TEST(NaiveDecompose, RejectsNonPowerOfTwo) {
  EXPECT_THROW(naive_pauli_decompose(Matrix(Matrix::Identity(3, 3))), InvalidParameter);
  EXPECT_THROW(naive_pauli_decompose(Matrix(Matrix::Identity(4, 2))), InvalidParameter);
}

TEST(NaiveDecompose, MatchesDenseTraceOracle) {
  for (int n = 1; n <= 4; ++n) {
    const Matrix g = random_symmetric(std::size_t{1} << n, 10 + n);
    const ComplexVector oracle = dense_reference_coefficients(g.cast<Complex>());
    for (TraceKernel k : {TraceKernel::kFullInnerProduct, TraceKernel::kRowSparse}) {
      DecomposeOptions o;
      o.kernel = k;
      const Vector c = dense_coefficients(naive_pauli_decompose(g, o));
      EXPECT_LE((c.cast<Complex>() - oracle).cwiseAbs().maxCoeff(), 1e-13) << "n=" << n;
    }
  }
}

TEST(NaiveDecompose, ReconstructsInput) {
  for (int n = 1; n <= 6; ++n) {
    const Matrix g = random_symmetric(std::size_t{1} << n, 100 + n);
    EXPECT_LE(mapping_error(g, naive_pauli_decompose(g)), 1e-13);
  }
}

TEST(NaiveDecompose, YEvenPrincipleAndFilter) {
  for (int n = 1; n <= 5; ++n) {
    const Matrix g = random_symmetric(std::size_t{1} << n, 200 + n);
    const ComplexVector all = dense_reference_coefficients(g.cast<Complex>());
    for (Eigen::Index k = 0; k < all.size(); ++k)
      if (is_odd_y(PauliString(n, static_cast<std::uint64_t>(k)))) {
        EXPECT_LE(std::abs(all(k)), 1e-14);
      }

    DecomposeStats plain, filtered;
    DecomposeOptions fo;
    fo.symmetric_filter = true;
    const PauliDecomposition a = naive_pauli_decompose(g, {}, &plain);
    const PauliDecomposition b = naive_pauli_decompose(g, fo, &filtered);
    std::uint64_t odd = 0;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << (2 * n)); ++k) odd += is_odd_y(PauliString(n, k));
    EXPECT_EQ(filtered.strings_skipped, odd);
    EXPECT_EQ(plain.strings_skipped, 0u);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t t = 0; t < a.size(); ++t) {
      EXPECT_EQ(a.terms()[t].string, b.terms()[t].string);
      EXPECT_FALSE(is_odd_y(a.terms()[t].string));
    }
  }
}

TEST(NaiveDecompose, ParsevalIdentity) {
  for (int n = 1; n <= 5; ++n) {
    const Matrix g = random_symmetric(std::size_t{1} << n, 300 + n);
    const PauliDecomposition d = naive_pauli_decompose(g);
    double sum = 0.0;
    for (const auto& t : d.terms()) sum += t.coefficient * t.coefficient;
    EXPECT_NEAR(sum * std::ldexp(1.0, n), g.squaredNorm(), 1e-12 * g.squaredNorm());
  }
}

TEST(NaiveDecompose, DropToleranceIsRelative) {
  const Matrix g = random_symmetric(8, 5);
  const PauliDecomposition a = naive_pauli_decompose(g);
  const PauliDecomposition b = naive_pauli_decompose(Matrix(1e-20 * g));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t t = 0; t < a.size(); ++t) EXPECT_EQ(a.terms()[t].string, b.terms()[t].string);
}

TEST(PauliDecomposition, TextRoundTripIsSorted) {
  const PauliDecomposition d = naive_pauli_decompose(random_symmetric(8, 9));
  std::stringstream ss;
  d.write(ss);
  const PauliDecomposition r = PauliDecomposition::read(ss);
  ASSERT_EQ(r.size(), d.size());
  for (std::size_t t = 0; t < d.size(); ++t) {
    EXPECT_EQ(r.terms()[t].string, d.terms()[t].string);
    EXPECT_EQ(r.terms()[t].coefficient, d.terms()[t].coefficient);
    if (t) {
      EXPECT_LT(d.terms()[t - 1].string.str(), d.terms()[t].string.str());
    }
  }
}

TEST(PauliDecomposition, RejectsDuplicatesAndMixedSizes) {
  const PauliString xx = PauliString::parse("XX");
  EXPECT_THROW(PauliDecomposition(2, {{xx, 1.0}, {xx, 2.0}}), InvalidParameter);
  EXPECT_THROW(PauliDecomposition(2, {{PauliString::parse("X"), 1.0}}), InvalidParameter);
}

// ---------------------------------------------------------- mapping error

TEST(MappingError, ZeroedCoefficientGivesOrthogonalError) {
  const int n = 3;
  const Matrix g = random_symmetric(8, 77);
  const PauliDecomposition d = naive_pauli_decompose(g);
  std::vector<PauliTerm> terms = d.terms();
  const double c = terms[3].coefficient;
  terms.erase(terms.begin() + 3);
  const PauliDecomposition partial(n, terms);
  EXPECT_NEAR(mapping_error(g, partial), std::abs(c) * std::pow(2.0, n / 2.0) / g.norm(), 1e-14);
}

TEST(MappingError, EmptyDecompositionIsOne) {
  const Matrix g = random_symmetric(4, 1);
  EXPECT_DOUBLE_EQ(mapping_error(g, PauliDecomposition(2, {})), 1.0);
}

TEST(MappingError, ZeroMatrixThrows) {
  EXPECT_THROW(mapping_error(Matrix::Zero(4, 4), PauliDecomposition(2, {})), InvalidParameter);
}

// ----------------------------------------------------------- kronecker

TEST(Rearrange, IdentityHasRankOne) {
  const BlockDims dims{2, 2, 2, 2};
  const Matrix r = rearrange(Matrix::Identity(4, 4), dims);
  Eigen::JacobiSVD<Matrix> svd(r);
  EXPECT_GT(svd.singularValues()(0), 1.0);
  EXPECT_LE(svd.singularValues().tail(3).norm(), 1e-15);
  const auto [b, c] = nkd(Matrix::Identity(4, 4));
  EXPECT_LE((kron<Matrix>(b, c) - Matrix::Identity(4, 4)).norm(), 1e-14);
}

TEST(Rearrange, KroneckerProductIsOuterProductOfVecs) {
  const Matrix a = random_matrix(2, 2, 1);
  const Matrix b = random_matrix(2, 2, 2);
  const Matrix r = rearrange(kron(a, b), BlockDims{2, 2, 2, 2});
  const Matrix expected = Eigen::Map<const Vector>(a.data(), 4) * Eigen::Map<const Vector>(b.data(), 4).transpose();
  EXPECT_LE((r - expected).norm(), 1e-15);
  Eigen::JacobiSVD<Matrix> svd(r);
  EXPECT_NEAR(svd.singularValues()(0), a.norm() * b.norm(), 1e-13);
}

TEST(Rearrange, RowsAreVecOfBlocksInColumnMajorBlockOrder) {
  const Matrix g = random_matrix(6, 4, 3);  // 3x2 grid of 2x2 blocks
  const BlockDims dims{3, 2, 2, 2};
  const Matrix r = rearrange(g, dims);
  ASSERT_EQ(r.rows(), 6);
  ASSERT_EQ(r.cols(), 4);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i) {
      const Matrix block = g.block(i * 2, j * 2, 2, 2);
      EXPECT_EQ(r.row(j * 3 + i), Eigen::Map<const Vector>(block.data(), 4).transpose());
    }
}

TEST(Rearrange, IsABijection) {
  const BlockDims dims{4, 4, 2, 2};
  const Matrix g = random_matrix(8, 8, 4);
  EXPECT_EQ(unrearrange(rearrange(g, dims), dims), g);
  EXPECT_THROW(rearrange(Matrix::Zero(8, 6), dims), InvalidParameter);
}

TEST(Gkd, FullRankIsLossless) {
  for (int n = 2; n <= 7; ++n) {
    const Matrix g = random_symmetric(std::size_t{1} << n, 400 + n);
    const KroneckerFactorSet f = gkd(g);
    EXPECT_LE((f.reconstruct() - g).norm(), 1e-12 * g.norm());
    EXPECT_EQ(f.leading[0].rows(), 1 << ((n + 1) / 2));
    EXPECT_EQ(f.trailing[0].rows(), 1 << (n / 2));
  }
}

TEST(Gkd, EckartYoungTailNorm) {
  const Matrix g = random_symmetric(32, 8);
  const BlockDims dims = BlockDims::square_split(5);
  for (int r = 1; r <= max_rank(dims); ++r) {
    const KroneckerFactorSet f = gkd(g, dims, r);
    const Vector& s = f.singular_values;
    EXPECT_NEAR((f.reconstruct() - g).norm(), s.tail(s.size() - r).norm(), 1e-12);
    for (Eigen::Index k = 1; k < s.size(); ++k) EXPECT_GE(s(k - 1), s(k));
  }
}

TEST(Gkd, RankOneRecoversKroneckerProduct) {
  const Matrix a = random_matrix(4, 4, 5);
  const Matrix b = random_matrix(2, 2, 6);
  const Matrix g = kron(a, b);
  const KroneckerFactorSet f = gkd(g, BlockDims::square_split(3), 1);
  EXPECT_LE((kron(f.leading[0], f.trailing[0]) - g).norm(), 1e-12 * g.norm());
  const auto [nb, nc] = nkd(g);
  EXPECT_LE((kron(nb, nc) - g).norm(), 1e-12 * g.norm());
}

TEST(Gkd, NkdIsOptimalRankOne) {
  const Matrix g = random_symmetric(16, 12);
  const auto [b, c] = nkd(g);
  Eigen::JacobiSVD<Matrix> svd(rearrange(g, BlockDims::square_split(4)));
  const Vector s = svd.singularValues();
  EXPECT_NEAR((kron(b, c) - g).norm(), s.tail(s.size() - 1).norm(), 1e-12);
}

TEST(Gkd, RankOutOfRangeThrows) {
  const Matrix g = random_symmetric(16, 1);
  EXPECT_THROW(gkd(g, BlockDims::square_split(4), 0), InvalidParameter);
  EXPECT_THROW(gkd(g, BlockDims::square_split(4), 17), InvalidParameter);
}

// ---------------------------------------------------------------- mlqc

TEST(Mlqc, IdentityRankOne) {
  MlqcOptions o;
  o.rank = 1;
  const PauliDecomposition d = mlqc_decompose(Matrix::Identity(4, 4), o);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.terms()[0].string.str(), "II");
  EXPECT_NEAR(d.terms()[0].coefficient, 1.0, 1e-14);
  EXPECT_EQ(d.provenance().method, Provenance::Method::kMlqc);
}

TEST(Mlqc, MatchesNaiveTermByTerm) {
  for (int n = 1; n <= 7; ++n) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const Matrix g = random_symmetric(std::size_t{1} << n, 1000 * n + seed);
      const Vector a = dense_coefficients(naive_pauli_decompose(g));
      const Vector b = dense_coefficients(mlqc_decompose(g));
      EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-12) << "n=" << n;
    }
  }
}

TEST(Mlqc, SparseKernelAndFilterAgree) {
  const Matrix g = random_symmetric(64, 3);
  MlqcOptions o;
  o.kernel = TraceKernel::kRowSparse;
  o.symmetric_filter = true;
  const Vector a = dense_coefficients(mlqc_decompose(g));
  const Vector b = dense_coefficients(mlqc_decompose(g, o));
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Mlqc, LargeReconstructionIsLossless) {
  const Matrix g = random_symmetric(256, 42);
  EXPECT_LE(mapping_error(g, mlqc_decompose(g)), 1e-13);
}

TEST(Mlqc, TruncatedRankErrorEqualsTailNorm) {
  const Matrix g = random_symmetric(64, 21);
  const BlockDims dims = BlockDims::square_split(6);
  for (int r : {1, 2, 5, 8}) {
    const KroneckerFactorSet f = gkd(g, dims, r);
    const PauliDecomposition d = mlqc_from_factors(f, g.cwiseAbs().maxCoeff());
    EXPECT_NEAR(mapping_error(g, d), f.tail_norm() / g.norm(), 1e-12);
  }
}

// ---------------------------------------------------------- accounting

TEST(Accounting, EffectiveBasisBounds) {
  EXPECT_EQ(effective_basis_bounds(1), (std::pair<std::uint64_t, std::uint64_t>{2, 3}));
  EXPECT_EQ(effective_basis_bounds(2), (std::pair<std::uint64_t, std::uint64_t>{4, 10}));
  EXPECT_EQ(effective_basis_bounds(3).second, 36u);
  EXPECT_THROW(effective_basis_bounds(0), InvalidParameter);
}

TEST(Accounting, UpperBoundEqualsBruteForceEvenYCount) {
  for (int n = 1; n <= 8; ++n) {
    std::uint64_t even = 0;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << (2 * n)); ++k) even += !is_odd_y(PauliString(n, k));
    EXPECT_EQ(effective_basis_bounds(n).second, even) << "n=" << n;
  }
}

TEST(Accounting, RandomSymmetricTermCountWithinBounds) {
  for (int n = 1; n <= 6; ++n) {
    const auto [lo, hi] = effective_basis_bounds(n);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const std::size_t count = naive_pauli_decompose(random_symmetric(std::size_t{1} << n, seed)).size();
      EXPECT_GT(count, lo);
      EXPECT_LE(count, hi);
    }
  }
}

TEST(Accounting, CircuitsReduced) {
  EXPECT_EQ(circuits_reduced(2, 8), 128u);
  EXPECT_EQ(circuits_reduced(3, 30), 2700u);
  EXPECT_EQ(circuits_reduced(2, 0), 0u);
}
