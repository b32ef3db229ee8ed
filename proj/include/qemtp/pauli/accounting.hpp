#pragma once

#include <cstdint>
#include <utility>

namespace qemtp::pauli {

/// Bounds on the number of nonzero Pauli coefficients of a real symmetric
/// 2^n x 2^n matrix: lower = 2^n (diagonal-only matrices, strict in practice),
/// upper = sum_{i, 2i <= n} C(n, 2i) 3^{n-2i} (all even-Y strings).
std::pair<std::uint64_t, std::uint64_t> effective_basis_bounds(int n_qubits);

/// Hadamard-test circuits removed from one cost evaluation by the real-only
/// construction: n * N_nonzero^2.
std::uint64_t circuits_reduced(int n_qubits, std::uint64_t n_nonzero);

}  // namespace qemtp::pauli
