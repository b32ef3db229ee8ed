#pragma once

#include "qemtp/common.hpp"
#include "qemtp/pauli/pauli_string.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace qemtp::pauli {

struct PauliTerm {
  PauliString string;
  double coefficient = 0.0;
};

struct Provenance {
  enum class Method { kNaive, kMlqc, kExternal };
  Method method = Method::kExternal;
  int rank = 0;  ///< Kronecker rank R for kMlqc, 0 otherwise.
};

/// Sparse real expansion G = sum_k c_k g_k over the n-qubit Pauli basis.
///
/// Terms are unique and sorted by string index (lexicographic letter order).
/// Coefficients at or below the drop tolerance are never stored.
class PauliDecomposition {
 public:
  /// Relative to the largest matrix entry of the decomposed input.
  static constexpr double kDropTolerance = 1e-14;

  PauliDecomposition() = default;
  PauliDecomposition(int n_qubits, std::vector<PauliTerm> terms, Provenance provenance = {});

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return std::size_t{1} << n_qubits_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const Provenance& provenance() const noexcept { return provenance_; }

  /// Coefficient of `s`, zero when not stored.
  double coefficient(const PauliString& s) const;

  /// sum_k c_k g_k as a dense matrix.
  ComplexMatrix reconstruct() const;

  /// Lines of `<string> <coefficient>` in stored (lexicographic) order.
  void write(std::ostream& out) const;
  static PauliDecomposition read(std::istream& in);

 private:
  int n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
  Provenance provenance_;
};

/// How the per-string trace Tr(G g) is evaluated.
enum class TraceKernel {
  /// Frobenius inner product over every matrix entry, with the Pauli entry
  /// evaluated analytically: O(4^n) per string, O(16^n) for the full basis.
  kFullInnerProduct,
  /// Only the single nonzero Pauli entry per row: O(2^n) per string.
  kRowSparse,
};

struct DecomposeStats {
  std::uint64_t strings_evaluated = 0;
  std::uint64_t strings_skipped = 0;
};

struct DecomposeOptions {
  bool symmetric_filter = false;
  TraceKernel kernel = TraceKernel::kFullInnerProduct;
};

/// c_k = Tr(G g_k) / 2^n for every string (odd-Y strings skipped under the
/// symmetric filter). Real input must be symmetric; complex input must be
/// Hermitian. Throws InvalidParameter otherwise or on a non-power-of-two size.
PauliDecomposition naive_pauli_decompose(const Matrix& g, const DecomposeOptions& options = {},
                                         DecomposeStats* stats = nullptr);
PauliDecomposition naive_pauli_decompose(const ComplexMatrix& g, const DecomposeOptions& options = {},
                                         DecomposeStats* stats = nullptr);

/// Reference path that materializes every g_k and forms Tr(G g_k) with a dense
/// product. Returns all 4^n complex coefficients in index order.
ComplexVector dense_reference_coefficients(const ComplexMatrix& g);

/// Full table of coefficients of a real square matrix in reduced form:
/// c_k = rho[k] * (i if g_k has odd Y count else 1). Works for any real
/// matrix (symmetric or not); used for Kronecker factors.
Vector reduced_coefficient_table(const Matrix& m, TraceKernel kernel);

/// || G - sum c_k g_k ||_F / ||G||_F. Throws InvalidParameter on a zero matrix
/// or a dimension mismatch.
double mapping_error(const Matrix& g, const PauliDecomposition& d);

/// Mirrors the upper triangle of a matrix with entries uniform in [0, 1).
Matrix random_symmetric(std::size_t dim, std::uint64_t seed);

}  // namespace qemtp::pauli
