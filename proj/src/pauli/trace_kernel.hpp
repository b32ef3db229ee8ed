#pragma once

#include "qemtp/pauli/decomposition.hpp"

#include <bit>
#include <cstdint>

namespace qemtp::pauli::detail {

struct StringMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int y_count = 0;
};

inline StringMasks masks_of(std::uint64_t index, int n) {
  StringMasks s;
  for (int b = 0; b < n; ++b) {
    const auto letter = (index >> (2 * b)) & 3u;
    if (letter == 1u || letter == 2u) s.x |= std::uint64_t{1} << b;
    if (letter == 2u || letter == 3u) s.z |= std::uint64_t{1} << b;
    if (letter == 2u) ++s.y_count;
  }
  return s;
}

inline bool parity(std::uint64_t v) { return (std::popcount(v) & 1) != 0; }

// Sum_r (-1)^{popcount(z & r)} G[r, r ^ x], i.e. Tr(G g) / i^{#Y}, for a
// row-major dim x dim buffer.
//
// kFullInnerProduct walks every entry of row r and multiplies it by the
// analytic Pauli entry; four accumulators keep the add chain short.
template <typename T>
T trace_kernel(const T* rm, std::uint64_t dim, std::uint64_t x, std::uint64_t z, TraceKernel kernel) {
  T total{};
  if (kernel == TraceKernel::kRowSparse) {
    for (std::uint64_t r = 0; r < dim; ++r) {
      const T v = rm[r * dim + (r ^ x)];
      total += parity(z & r) ? -v : v;
    }
    return total;
  }
  for (std::uint64_t r = 0; r < dim; ++r) {
    const T* row = rm + r * dim;
    const std::uint64_t target = r ^ x;
    T a0{}, a1{}, a2{}, a3{};
    std::uint64_t k = 0;
    for (; k + 4 <= dim; k += 4) {
      a0 += row[k] * static_cast<double>(k == target);
      a1 += row[k + 1] * static_cast<double>(k + 1 == target);
      a2 += row[k + 2] * static_cast<double>(k + 2 == target);
      a3 += row[k + 3] * static_cast<double>(k + 3 == target);
    }
    for (; k < dim; ++k) a0 += row[k] * static_cast<double>(k == target);
    const T acc = (a0 + a1) + (a2 + a3);
    total += parity(z & r) ? -acc : acc;
  }
  return total;
}

inline double real_trace(const double* rm, std::uint64_t dim, std::uint64_t x, std::uint64_t z, TraceKernel kernel) {
  return trace_kernel<double>(rm, dim, x, z, kernel);
}

inline Complex complex_trace(const Complex* rm, std::uint64_t dim, std::uint64_t x, std::uint64_t z,
                             TraceKernel kernel) {
  return trace_kernel<Complex>(rm, dim, x, z, kernel);
}

}  // namespace qemtp::pauli::detail
