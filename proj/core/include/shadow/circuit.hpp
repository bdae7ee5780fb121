/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef SHADOW_CIRCUIT_HPP
#define SHADOW_CIRCUIT_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "shadow/pauli.hpp"

namespace shadow {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

enum class GateKind { H, S, Sdg, X, Z, CNOT, T };

struct Gate {
  GateKind kind;
  int q0;       // target (single-qubit gates) or control (CNOT)
  int q1 = -1;  // target for CNOT

  std::string str() const;
};

// Gates are applied to states in list order: the sequence {g0, g1, ...}
// realizes the unitary ... U(g1) * U(g0).
struct GateSequence {
  int n = 0;
  std::vector<Gate> gates;

  std::size_t t_count() const;
  GateSequence inverse() const;  // Clifford+T inverse (Sdg <-> S, T rejected)
};

// Statevector cutoff: 2^n amplitudes.
inline constexpr int kMaxStatevectorQubits = 22;
// Dense-matrix cutoff: 4^n entries.
inline constexpr int kMaxDenseQubits = 12;

void apply_gate(Vector& psi, const Gate& g, int n);
void apply_sequence(Vector& psi, const GateSequence& seq);
Vector apply_sequence_copy(const Vector& psi, const GateSequence& seq);

// Product of the gate matrices in application order; n <= kMaxDenseQubits.
Matrix dense_unitary(const GateSequence& seq);

// Dense matrix of an n-qubit Pauli (n <= kMaxDenseQubits).
Matrix pauli_matrix(const PauliString& p);

// Kronecker product, first argument on the most significant (leftmost) slot.
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace shadow

#endif
