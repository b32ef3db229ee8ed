#pragma once

#include "qemtp/common.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qemtp::pauli {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliLetter letter);

/// Tensor product of single-qubit Pauli operators.
///
/// Qubit 0 is the leftmost letter and the most significant bit of a basis
/// index, matching the Kronecker order |q0> (x) |q1> (x) ... The string is
/// stored as its base-4 index (I=0, X=1, Y=2, Z=3, qubit 0 most significant),
/// so numeric order of index() is lexicographic order of the letters.
class PauliString {
 public:
  static constexpr int kMaxQubits = 31;

  PauliString() = default;
  PauliString(int n_qubits, std::uint64_t index);

  static PauliString parse(std::string_view letters);
  static PauliString identity(int n_qubits) { return PauliString(n_qubits, 0); }

  int size() const noexcept { return n_qubits_; }
  std::uint64_t index() const noexcept { return index_; }
  PauliLetter operator[](int qubit) const;

  int y_count() const noexcept;
  /// Bit (n-1-q) set when qubit q carries X or Y.
  std::uint64_t x_mask() const noexcept;
  /// Bit (n-1-q) set when qubit q carries Z or Y.
  std::uint64_t z_mask() const noexcept;

  /// Kronecker product this (x) tail, as a string of size() + tail.size().
  PauliString concat(const PauliString& tail) const;

  /// Matrix entry (row, col) evaluated without materializing the operator.
  Complex entry(std::uint64_t row, std::uint64_t col) const noexcept;
  /// Dense 2^n x 2^n matrix. Test/oracle use only.
  ComplexMatrix to_matrix() const;

  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) {
    if (auto c = a.n_qubits_ <=> b.n_qubits_; c != 0) return c;
    return a.index_ <=> b.index_;
  }

 private:
  int n_qubits_ = 0;
  std::uint64_t index_ = 0;
};

/// True iff the string holds an odd number of Y letters. Such strings carry a
/// zero coefficient in the expansion of any real symmetric matrix.
bool is_odd_y(const PauliString& s) noexcept;

/// i^k for integer k.
Complex i_power(int k) noexcept;

}  // namespace qemtp::pauli
