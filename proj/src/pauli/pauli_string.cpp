#include "qemtp/pauli/pauli_string.hpp"

#include <bit>

namespace qemtp::pauli {

char to_char(PauliLetter letter) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(letter)];
}

PauliString::PauliString(int n_qubits, std::uint64_t index)
    : n_qubits_(n_qubits), index_(index) {
  if (n_qubits < 0 || n_qubits > kMaxQubits)
    throw InvalidParameter("PauliString: qubit count out of range");
  if (n_qubits < 32 && (index >> (2 * n_qubits)) != 0)
    throw InvalidParameter("PauliString: index exceeds 4^n");
}

PauliString PauliString::parse(std::string_view letters) {
  if (letters.empty()) throw InvalidParameter("PauliString: empty string");
  if (letters.size() > static_cast<std::size_t>(kMaxQubits))
    throw InvalidParameter("PauliString: too many letters");
  std::uint64_t index = 0;
  for (char c : letters) {
    std::uint64_t v = 0;
    switch (c) {
      case 'I': v = 0; break;
      case 'X': v = 1; break;
      case 'Y': v = 2; break;
      case 'Z': v = 3; break;
      default:
        throw InvalidParameter(std::string("PauliString: invalid letter '") + c + "'");
    }
    index = (index << 2) | v;
  }
  return PauliString(static_cast<int>(letters.size()), index);
}

PauliLetter PauliString::operator[](int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_) throw InvalidParameter("PauliString: qubit out of range");
  const int shift = 2 * (n_qubits_ - 1 - qubit);
  return static_cast<PauliLetter>((index_ >> shift) & 3u);
}

int PauliString::y_count() const noexcept {
  int count = 0;
  for (int q = 0; q < n_qubits_; ++q)
    if (((index_ >> (2 * q)) & 3u) == 2u) ++count;
  return count;
}

std::uint64_t PauliString::x_mask() const noexcept {
  std::uint64_t mask = 0;
  for (int b = 0; b < n_qubits_; ++b) {
    const auto letter = (index_ >> (2 * b)) & 3u;
    if (letter == 1u || letter == 2u) mask |= std::uint64_t{1} << b;
  }
  return mask;
}

std::uint64_t PauliString::z_mask() const noexcept {
  std::uint64_t mask = 0;
  for (int b = 0; b < n_qubits_; ++b) {
    const auto letter = (index_ >> (2 * b)) & 3u;
    if (letter == 2u || letter == 3u) mask |= std::uint64_t{1} << b;
  }
  return mask;
}

PauliString PauliString::concat(const PauliString& tail) const {
  return PauliString(n_qubits_ + tail.n_qubits_, (index_ << (2 * tail.n_qubits_)) | tail.index_);
}

Complex i_power(int k) noexcept {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Y = i X Z per qubit, so g = i^{#Y} (X^x Z^z) and (X^x Z^z)[row, col] is
// nonzero only at row = col ^ x, with value (-1)^{popcount(z & col)}.
Complex PauliString::entry(std::uint64_t row, std::uint64_t col) const noexcept {
  if ((row ^ col) != x_mask()) return {0.0, 0.0};
  const double sign = (std::popcount(z_mask() & col) & 1) ? -1.0 : 1.0;
  return sign * i_power(y_count());
}

ComplexMatrix PauliString::to_matrix() const {
  const std::uint64_t dim = std::uint64_t{1} << n_qubits_;
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const auto x = x_mask();
  for (std::uint64_t col = 0; col < dim; ++col) m(static_cast<Eigen::Index>(col ^ x), static_cast<Eigen::Index>(col)) = entry(col ^ x, col);
  return m;
}

std::string PauliString::str() const {
  std::string s(static_cast<std::size_t>(n_qubits_), 'I');
  for (int q = 0; q < n_qubits_; ++q) s[static_cast<std::size_t>(q)] = to_char((*this)[q]);
  return s;
}

bool is_odd_y(const PauliString& s) noexcept { return (s.y_count() & 1) != 0; }

}  // namespace qemtp::pauli
