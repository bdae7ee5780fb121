/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef SHADOW_PAULI_HPP
#define SHADOW_PAULI_HPP

#include <cstdint>
#include <string>

namespace shadow {

// n-qubit Pauli operator in symplectic (bit-mask) form,
//
//   P = i^phase_exponent * X^x_mask * Z^z_mask,
//
// with one bit per qubit (qubit q <-> bit q).  In this convention CNOT
// conjugation needs no phase bookkeeping, and the Hermitian representative of
// a projective Pauli carries phase_exponent = popcount(x & z) mod 4 (one
// factor of i per Y).
struct PauliString {
  int n = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  int phase_exponent = 0;  // power of i, mod 4

  static constexpr int kMaxQubits = 32;

  PauliString() = default;
  PauliString(int n_, std::uint64_t x, std::uint64_t z, int phase = -1);

  // Canonical phase of the Hermitian representative with the same masks.
  int hermitian_phase() const;
  // Sign relative to the Hermitian representative: +1 or -1.
  // Requires the phase to be hermitian_phase() or hermitian_phase()+2.
  int sign() const;
  bool is_hermitian_form() const;
  bool is_identity() const { return x_mask == 0 && z_mask == 0; }

  // Base-4 projective index: digit q in {0:I, 1:X, 2:Z, 3:Y} for qubit q,
  // qubit 0 least significant.
  std::uint64_t to_index() const;

  // 0 if P and Q commute, 1 if they anticommute.
  int commutator(const PauliString& other) const;

  // Product (this * other), with the phase exponent advanced accordingly.
  PauliString operator*(const PauliString& other) const;

  std::string label() const;  // e.g. "+XZY", leftmost letter = qubit n-1
};

PauliString pauli_from_index(int n, std::uint64_t idx);

}  // namespace shadow

#endif
