#include "qemtp/pauli/mlqc.hpp"

#include "trace_kernel.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace qemtp::pauli {

namespace {

std::vector<std::uint8_t> odd_y_table(int n) {
  const std::uint64_t count = std::uint64_t{1} << (2 * n);
  std::vector<std::uint8_t> odd(count);
  for (std::uint64_t index = 0; index < count; ++index)
    odd[index] = static_cast<std::uint8_t>(detail::masks_of(index, n).y_count & 1);
  return odd;
}

}  // namespace

PauliDecomposition mlqc_from_factors(const KroneckerFactorSet& factors, double drop_scale, TraceKernel kernel) {
  const BlockDims& d = factors.dims;
  if (d.m1 != d.n1 || d.m2 != d.n2 || !is_power_of_two(static_cast<std::size_t>(d.m1)) ||
      !is_power_of_two(static_cast<std::size_t>(d.m2)))
    throw InvalidParameter("mlqc: factors must be square with power-of-two dimensions");
  const int n_lead = exact_log2(static_cast<std::size_t>(d.m1));
  const int n_trail = exact_log2(static_cast<std::size_t>(d.m2));
  const int rank = factors.rank();

  const Eigen::Index lead_count = Eigen::Index{1} << (2 * n_lead);
  const Eigen::Index trail_count = Eigen::Index{1} << (2 * n_trail);
  Matrix lead_coeffs(lead_count, rank);
  Matrix trail_coeffs(trail_count, rank);
  for (int r = 0; r < rank; ++r) {
    lead_coeffs.col(r) = reduced_coefficient_table(factors.leading[static_cast<std::size_t>(r)], kernel);
    trail_coeffs.col(r) = reduced_coefficient_table(factors.trailing[static_cast<std::size_t>(r)], kernel);
  }

  // merged(a, b) = sum_r rho_ar rho_br; the true coefficient is that times
  // i^{odd_a + odd_b}: real for matching parities (negated when both odd),
  // imaginary otherwise.
  const Matrix merged = lead_coeffs * trail_coeffs.transpose();
  const auto lead_odd = odd_y_table(n_lead);
  const auto trail_odd = odd_y_table(n_trail);
  const double tol = PauliDecomposition::kDropTolerance * drop_scale;
  const int n = n_lead + n_trail;

  std::vector<PauliTerm> terms;
  for (Eigen::Index a = 0; a < lead_count; ++a)
    for (Eigen::Index b = 0; b < trail_count; ++b) {
      const bool odd_a = lead_odd[static_cast<std::size_t>(a)] != 0;
      const bool odd_b = trail_odd[static_cast<std::size_t>(b)] != 0;
      if (odd_a != odd_b) continue;
      const double c = odd_a ? -merged(a, b) : merged(a, b);
      if (std::abs(c) > tol) {
        const auto index = (static_cast<std::uint64_t>(a) << (2 * n_trail)) | static_cast<std::uint64_t>(b);
        terms.push_back({PauliString(n, index), c});
      }
    }
  return PauliDecomposition(n, std::move(terms), {Provenance::Method::kMlqc, rank});
}

PauliDecomposition mlqc_decompose(const Matrix& g, const MlqcOptions& options) {
  if (g.rows() != g.cols() || !is_power_of_two(static_cast<std::size_t>(g.rows())) || g.rows() < 2)
    throw InvalidParameter("mlqc: input must be square with power-of-two dimension >= 2");
  const double scale = g.cwiseAbs().maxCoeff();
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidParameter("mlqc: input is not symmetric; coefficients would be complex");
  // Odd-Y strings are dropped after merging whether or not the filter is
  // requested: for symmetric input their coefficients vanish.
  return mlqc_from_factors(gkd(g, options.rank), scale, options.kernel);
}

}  // namespace qemtp::pauli
