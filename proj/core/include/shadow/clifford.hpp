/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef SHADOW_CLIFFORD_HPP
#define SHADOW_CLIFFORD_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "shadow/circuit.hpp"
#include "shadow/pauli.hpp"

namespace shadow {

using Rng = std::mt19937_64;

// Projective Clifford element stored as a generator tableau: the images of
// X_q and Z_q under conjugation, each a signed Hermitian PauliString.
// Global phase is not tracked (irrelevant to every quantity in scope).
struct CliffordElement {
  int n = 0;
  std::vector<PauliString> image_x;  // image_x[q] = C X_q C^dagger
  std::vector<PauliString> image_z;  // image_z[q] = C Z_q C^dagger

  static CliffordElement identity(int n);

  // C P C^dagger with exact sign tracking.
  PauliString conjugate(const PauliString& p) const;

  // In-place left composition: tableau becomes (gate * C); i.e. every image
  // is conjugated by the gate.  T gates are rejected.
  void apply_gate(const Gate& g);

  // The 2n x 2n binary symplectic matrix (row 2q = X_q image, row 2q+1 =
  // Z_q image; column 2j = x bit of qubit j, column 2j+1 = z bit).
  std::vector<std::uint64_t> symplectic_rows() const;
  bool symplectic_ok() const;  // M Omega M^T = Omega over F2

  bool operator==(const CliffordElement& other) const;
};

// Number of elements of Sp(2n, F2) = prod_j (4^j - 1) 2^{2j-1}; overflows
// uint64 for n > 5 (enumeration is restricted to far smaller n anyway).
std::uint64_t symplectic_group_order(int n);
// Number of projective Clifford elements = |Sp(2n,F2)| * 4^n.
std::uint64_t clifford_group_order(int n);

// Uniformly random projective Clifford element (transvection construction
// over the symplectic group plus independent sign bits).
CliffordElement random_clifford(int n, Rng& rng);

// Element #idx of the projective Clifford group, idx in [0, |Cl_n|).
// idx = symplectic_index * 4^n + sign_bits.
CliffordElement clifford_from_index(int n, std::uint64_t idx);

// Visit each projective Clifford element exactly once (n <= 2 by contract;
// count 24 at n=1, 11520 at n=2).
void enumerate_clifford(int n, const std::function<void(const CliffordElement&)>& visit);

// T-free gate sequence whose tableau evolution reproduces c exactly
// (including signs); length O(n^2).
GateSequence clifford_to_circuit(const CliffordElement& c);

// Tableau obtained by evolving the identity through seq (T gates rejected).
CliffordElement tableau_from_sequence(const GateSequence& seq);

}  // namespace shadow

#endif
