/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "shadow/circuit.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace shadow {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
}

std::string Gate::str() const {
  switch (kind) {
    case GateKind::H: return "H(" + std::to_string(q0) + ")";
    case GateKind::S: return "S(" + std::to_string(q0) + ")";
    case GateKind::Sdg: return "Sdg(" + std::to_string(q0) + ")";
    case GateKind::X: return "X(" + std::to_string(q0) + ")";
    case GateKind::Z: return "Z(" + std::to_string(q0) + ")";
    case GateKind::T: return "T(" + std::to_string(q0) + ")";
    case GateKind::CNOT:
      return "CNOT(" + std::to_string(q0) + "," + std::to_string(q1) + ")";
  }
  return "?";
}

std::size_t GateSequence::t_count() const {
  std::size_t c = 0;
  for (const auto& g : gates)
    if (g.kind == GateKind::T) ++c;
  return c;
}

GateSequence GateSequence::inverse() const {
  GateSequence inv;
  inv.n = n;
  inv.gates.reserve(gates.size());
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    Gate g = *it;
    switch (g.kind) {
      case GateKind::S: g.kind = GateKind::Sdg; break;
      case GateKind::Sdg: g.kind = GateKind::S; break;
      case GateKind::T:
        throw std::invalid_argument("GateSequence::inverse: T gate has no gate-set inverse");
      default: break;  // H, X, Z, CNOT are involutions
    }
    inv.gates.push_back(g);
  }
  return inv;
}

void apply_gate(Vector& psi, const Gate& g, int n) {
  const std::size_t dim = psi.size();
  const std::size_t bit = 1ull << g.q0;
  if (g.q0 < 0 || g.q0 >= n) throw std::out_of_range("apply_gate: qubit index");
  switch (g.kind) {
    case GateKind::H:
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const Complex a = psi[i], b = psi[i | bit];
        psi[i] = kInvSqrt2 * (a + b);
        psi[i | bit] = kInvSqrt2 * (a - b);
      }
      break;
    case GateKind::S:
      for (std::size_t i = 0; i < dim; ++i)
        if (i & bit) psi[i] *= Complex(0, 1);
      break;
    case GateKind::Sdg:
      for (std::size_t i = 0; i < dim; ++i)
        if (i & bit) psi[i] *= Complex(0, -1);
      break;
    case GateKind::X:
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        std::swap(psi[i], psi[i | bit]);
      }
      break;
    case GateKind::Z:
      for (std::size_t i = 0; i < dim; ++i)
        if (i & bit) psi[i] = -psi[i];
      break;
    case GateKind::T: {
      const Complex t = std::polar(1.0, M_PI / 4);
      for (std::size_t i = 0; i < dim; ++i)
        if (i & bit) psi[i] *= t;
      break;
    }
    case GateKind::CNOT: {
      if (g.q1 < 0 || g.q1 >= n || g.q1 == g.q0)
        throw std::out_of_range("apply_gate: CNOT qubit indices");
      const std::size_t tbit = 1ull << g.q1;
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & bit) && !(i & tbit)) std::swap(psi[i], psi[i | tbit]);
      }
      break;
    }
  }
}

void apply_sequence(Vector& psi, const GateSequence& seq) {
  if (seq.n > kMaxStatevectorQubits)
    throw std::invalid_argument("apply_sequence: statevector cutoff exceeded");
  if (psi.size() != (1ll << seq.n))
    throw std::invalid_argument("apply_sequence: dimension mismatch");
  for (const auto& g : seq.gates) apply_gate(psi, g, seq.n);
}

Vector apply_sequence_copy(const Vector& psi, const GateSequence& seq) {
  Vector out = psi;
  apply_sequence(out, seq);
  return out;
}

Matrix dense_unitary(const GateSequence& seq) {
  if (seq.n > kMaxDenseQubits)
    throw std::invalid_argument("dense_unitary: dense cutoff exceeded");
  const std::size_t dim = 1ull << seq.n;
  Matrix u = Matrix::Identity(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    Vector psi = u.col(col);
    for (const auto& g : seq.gates) apply_gate(psi, g, seq.n);
    u.col(col) = psi;
  }
  return u;
}

Matrix pauli_matrix(const PauliString& p) {
  if (p.n > kMaxDenseQubits)
    throw std::invalid_argument("pauli_matrix: dense cutoff exceeded");
  const std::size_t dim = 1ull << p.n;
  static const Complex kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Matrix m = Matrix::Zero(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    const int par = std::popcount(p.z_mask & b) & 1;
    m(b ^ p.x_mask, b) = kI[p.phase_exponent] * (par ? -1.0 : 1.0);
  }
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace shadow
