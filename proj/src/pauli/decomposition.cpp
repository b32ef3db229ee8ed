#include "qemtp/pauli/decomposition.hpp"

#include "trace_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

namespace qemtp::pauli {

PauliDecomposition::PauliDecomposition(int n_qubits, std::vector<PauliTerm> terms, Provenance provenance)
    : n_qubits_(n_qubits), terms_(std::move(terms)), provenance_(provenance) {
  for (const auto& t : terms_)
    if (t.string.size() != n_qubits_) throw InvalidParameter("PauliDecomposition: string length mismatch");
  std::sort(terms_.begin(), terms_.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.string < b.string; });
  for (std::size_t k = 1; k < terms_.size(); ++k)
    if (terms_[k].string == terms_[k - 1].string)
      throw InvalidParameter("PauliDecomposition: duplicate string " + terms_[k].string.str());
}

double PauliDecomposition::coefficient(const PauliString& s) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), s,
                             [](const PauliTerm& t, const PauliString& key) { return t.string < key; });
  return (it != terms_.end() && it->string == s) ? it->coefficient : 0.0;
}

ComplexMatrix PauliDecomposition::reconstruct() const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& t : terms_) {
    const detail::StringMasks s = detail::masks_of(t.string.index(), n_qubits_);
    const Complex phase = t.coefficient * i_power(s.y_count);
    for (std::uint64_t col = 0; col < dimension(); ++col) {
      const double sign = detail::parity(s.z & col) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(col ^ s.x), static_cast<Eigen::Index>(col)) += sign * phase;
    }
  }
  return m;
}

void PauliDecomposition::write(std::ostream& out) const {
  char buf[64];
  for (const auto& t : terms_) {
    std::snprintf(buf, sizeof buf, "%.17g", t.coefficient);
    out << t.string.str() << ' ' << buf << '\n';
  }
}

PauliDecomposition PauliDecomposition::read(std::istream& in) {
  std::vector<PauliTerm> terms;
  int n_qubits = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string letters;
    double c = 0.0;
    if (!(ls >> letters >> c)) throw ParseError("expected '<string> <coefficient>'", line_no);
    PauliString s;
    try {
      s = PauliString::parse(letters);
    } catch (const InvalidParameter& e) {
      throw ParseError(e.what(), line_no);
    }
    if (n_qubits < 0) n_qubits = s.size();
    if (s.size() != n_qubits) throw ParseError("inconsistent string length", line_no);
    terms.push_back({s, c});
  }
  return PauliDecomposition(std::max(n_qubits, 0), std::move(terms));
}

namespace {

int checked_qubits(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols) throw InvalidParameter("pauli decomposition: matrix must be square");
  if (!is_power_of_two(static_cast<std::size_t>(rows)))
    throw InvalidParameter("pauli decomposition: dimension " + std::to_string(rows) + " is not a power of two");
  const int n = exact_log2(static_cast<std::size_t>(rows));
  if (n > 15) throw InvalidParameter("pauli decomposition: more than 15 qubits is not supported");
  return n;
}

template <typename Mat>
void require_hermitian(const Mat& g) {
  const double scale = g.cwiseAbs().maxCoeff();
  const double asym = (g - g.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale)
    throw InvalidParameter("pauli decomposition: input is not symmetric/Hermitian; coefficients would be complex");
}

}  // namespace

PauliDecomposition naive_pauli_decompose(const Matrix& g, const DecomposeOptions& options, DecomposeStats* stats) {
  const int n = checked_qubits(g.rows(), g.cols());
  require_hermitian(g);
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t count = dim * dim;
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = g;
  const double tol = PauliDecomposition::kDropTolerance * g.cwiseAbs().maxCoeff();

  DecomposeStats local;
  std::vector<PauliTerm> terms;
  for (std::uint64_t index = 0; index < count; ++index) {
    const detail::StringMasks s = detail::masks_of(index, n);
    const bool odd = (s.y_count & 1) != 0;
    if (options.symmetric_filter && odd) {
      ++local.strings_skipped;
      continue;
    }
    ++local.strings_evaluated;
    const double trace = detail::real_trace(rm.data(), dim, s.x, s.z, options.kernel);
    // An odd-Y coefficient of a real matrix is purely imaginary; for symmetric
    // input its real part is exactly zero, so nothing is stored.
    if (odd) continue;
    const double c = ((s.y_count % 4) == 0 ? 1.0 : -1.0) * trace / static_cast<double>(dim);
    if (std::abs(c) > tol) terms.push_back({PauliString(n, index), c});
  }
  if (stats) *stats = local;
  return PauliDecomposition(n, std::move(terms), {Provenance::Method::kNaive, 0});
}

PauliDecomposition naive_pauli_decompose(const ComplexMatrix& g, const DecomposeOptions& options,
                                         DecomposeStats* stats) {
  const int n = checked_qubits(g.rows(), g.cols());
  require_hermitian(g);
  const bool real_input = g.imag().cwiseAbs().maxCoeff() == 0.0;
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t count = dim * dim;
  const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = g;
  const double tol = PauliDecomposition::kDropTolerance * g.cwiseAbs().maxCoeff();

  DecomposeStats local;
  std::vector<PauliTerm> terms;
  for (std::uint64_t index = 0; index < count; ++index) {
    const detail::StringMasks s = detail::masks_of(index, n);
    // The filter only applies when the input is actually real symmetric.
    if (options.symmetric_filter && real_input && (s.y_count & 1)) {
      ++local.strings_skipped;
      continue;
    }
    ++local.strings_evaluated;
    const Complex trace = detail::complex_trace(rm.data(), dim, s.x, s.z, options.kernel);
    const Complex c = i_power(s.y_count) * trace / static_cast<double>(dim);
    if (std::abs(c.real()) > tol) terms.push_back({PauliString(n, index), c.real()});
  }
  if (stats) *stats = local;
  return PauliDecomposition(n, std::move(terms), {Provenance::Method::kNaive, 0});
}

ComplexVector dense_reference_coefficients(const ComplexMatrix& g) {
  const int n = checked_qubits(g.rows(), g.cols());
  const std::uint64_t count = std::uint64_t{1} << (2 * n);
  ComplexVector out(static_cast<Eigen::Index>(count));
  for (std::uint64_t index = 0; index < count; ++index) {
    const ComplexMatrix basis = PauliString(n, index).to_matrix();
    out(static_cast<Eigen::Index>(index)) = (g * basis).trace() / static_cast<double>(g.rows());
  }
  return out;
}

Vector reduced_coefficient_table(const Matrix& m, TraceKernel kernel) {
  const int n = checked_qubits(m.rows(), m.cols());
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t count = dim * dim;
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  Vector rho(static_cast<Eigen::Index>(count));
  for (std::uint64_t index = 0; index < count; ++index) {
    const detail::StringMasks s = detail::masks_of(index, n);
    const double trace = detail::real_trace(rm.data(), dim, s.x, s.z, kernel);
    // i^{#Y} = (+1 | -1) * (1 | i): the real sign flips for #Y mod 4 in {2, 3}.
    rho(static_cast<Eigen::Index>(index)) = ((s.y_count % 4) < 2 ? 1.0 : -1.0) * trace / static_cast<double>(dim);
  }
  return rho;
}

double mapping_error(const Matrix& g, const PauliDecomposition& d) {
  if (g.rows() != g.cols() || static_cast<std::size_t>(g.rows()) != d.dimension())
    throw InvalidParameter("mapping_error: dimension mismatch");
  const double norm = g.norm();
  if (norm == 0.0) throw InvalidParameter("mapping_error: zero matrix");
  const ComplexMatrix diff = g.cast<Complex>() - d.reconstruct();
  return diff.norm() / norm;
}

Matrix random_symmetric(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) m(i, j) = m(j, i) = uniform(rng);
  return m;
}

}  // namespace qemtp::pauli
