#pragma once

#include "qemtp/pauli/decomposition.hpp"
#include "qemtp/pauli/kronecker.hpp"

#include <optional>

namespace qemtp::pauli {

struct MlqcOptions {
  std::optional<int> rank;  ///< Kronecker rank R; empty means full numerical rank.
  bool symmetric_filter = false;
  TraceKernel kernel = TraceKernel::kFullInnerProduct;
};

/// Pauli decomposition through the Kronecker factors of G.
///
/// G is split by gkd(), every Gamma_r and Z_r is expanded on its own small
/// Pauli basis, and the products c_ir * c_jr are accumulated onto the
/// concatenated strings gamma_i || zeta_j. At full rank the result equals
/// naive_pauli_decompose() because the Pauli expansion of a matrix is unique.
///
/// The factors of a symmetric G may be skew-symmetric, so their own expansions
/// carry imaginary odd-Y coefficients; only the merged result is filtered.
PauliDecomposition mlqc_decompose(const Matrix& g, const MlqcOptions& options = {});

/// Same pipeline starting from an existing factor set.
PauliDecomposition mlqc_from_factors(const KroneckerFactorSet& factors, double drop_scale,
                                     TraceKernel kernel = TraceKernel::kFullInnerProduct);

}  // namespace qemtp::pauli
