#include "qemtp/pauli/accounting.hpp"

#include "qemtp/common.hpp"

namespace qemtp::pauli {

namespace {

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t pow3(int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> effective_basis_bounds(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 31) throw InvalidParameter("effective_basis_bounds: n out of range");
  std::uint64_t upper = 0;
  const int top = (n_qubits + 1) / 2;
  for (int i = 0; i <= top; ++i) {
    if (2 * i > n_qubits) break;  // ceil(n/2) reaches 2i = n + 1 for odd n, where C(n, 2i) = 0
    upper += binomial(n_qubits, 2 * i) * pow3(n_qubits - 2 * i);
  }
  return {std::uint64_t{1} << n_qubits, upper};
}

std::uint64_t circuits_reduced(int n_qubits, std::uint64_t n_nonzero) {
  if (n_qubits < 0) throw InvalidParameter("circuits_reduced: negative qubit count");
  return static_cast<std::uint64_t>(n_qubits) * n_nonzero * n_nonzero;
}

}  // namespace qemtp::pauli
