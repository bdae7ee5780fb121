/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "shadow/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace shadow {

PauliString::PauliString(int n_, std::uint64_t x, std::uint64_t z, int phase)
    : n(n_), x_mask(x), z_mask(z) {
  if (n_ < 0 || n_ > kMaxQubits) throw std::invalid_argument("PauliString: bad qubit count");
  const std::uint64_t full = (n_ == 64) ? ~0ull : ((1ull << n_) - 1);
  if ((x & ~full) || (z & ~full)) throw std::invalid_argument("PauliString: mask exceeds n bits");
  phase_exponent = (phase < 0) ? hermitian_phase() : (phase & 3);
}

int PauliString::hermitian_phase() const {
  return static_cast<int>(std::popcount(x_mask & z_mask)) & 3;
}

bool PauliString::is_hermitian_form() const {
  return ((phase_exponent - hermitian_phase()) & 1) == 0;
}

int PauliString::sign() const {
  const int delta = (phase_exponent - hermitian_phase()) & 3;
  if (delta == 0) return 1;
  if (delta == 2) return -1;
  throw std::logic_error("PauliString::sign: operator is not Hermitian");
}

std::uint64_t PauliString::to_index() const {
  std::uint64_t idx = 0;
  for (int q = n - 1; q >= 0; --q) {
    const std::uint64_t x = (x_mask >> q) & 1;
    const std::uint64_t z = (z_mask >> q) & 1;
    idx = idx * 4 + (x + 2 * z);
  }
  return idx;
}

int PauliString::commutator(const PauliString& other) const {
  if (n != other.n) throw std::invalid_argument("PauliString: qubit count mismatch");
  const auto cross = std::popcount(x_mask & other.z_mask) +
                     std::popcount(z_mask & other.x_mask);
  return static_cast<int>(cross) & 1;
}

PauliString PauliString::operator*(const PauliString& other) const {
  if (n != other.n) throw std::invalid_argument("PauliString: qubit count mismatch");
  PauliString out;
  out.n = n;
  out.x_mask = x_mask ^ other.x_mask;
  out.z_mask = z_mask ^ other.z_mask;
  // Z^z1 X^x2 = (-1)^{|z1 & x2|} X^x2 Z^z1
  out.phase_exponent =
      (phase_exponent + other.phase_exponent +
       2 * (std::popcount(z_mask & other.x_mask) & 1)) & 3;
  return out;
}

std::string PauliString::label() const {
  static const char* kPhase[4] = {"+", "+i", "-", "-i"};
  std::string s = kPhase[(phase_exponent - hermitian_phase()) & 3];
  for (int q = n - 1; q >= 0; --q) {
    const int x = (x_mask >> q) & 1;
    const int z = (z_mask >> q) & 1;
    s += "IXZY"[x + 2 * z];
  }
  return s;
}

PauliString pauli_from_index(int n, std::uint64_t idx) {
  if (n < 1 || n > PauliString::kMaxQubits)
    throw std::invalid_argument("pauli_from_index: bad qubit count");
  if (idx >= (1ull << (2 * n))) throw std::out_of_range("pauli_from_index: index out of range");
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t digit = (idx >> (2 * q)) & 3;
    x |= (digit & 1) << q;
    z |= ((digit >> 1) & 1) << q;
  }
  return PauliString(n, x, z);
}

}  // namespace shadow
