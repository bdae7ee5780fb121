/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "shadow/clifford.hpp"

#include <bit>
#include <stdexcept>

namespace shadow {

namespace {

// ---- binary symplectic vectors -------------------------------------------
//
// A vector over F2^{2m} packed into a uint64; bits (2j, 2j+1) form the j-th
// hyperbolic pair, with symplectic form <v,w> = sum_j v_{2j} w_{2j+1} +
// v_{2j+1} w_{2j}.

constexpr std::uint64_t kEvenBits = 0x5555555555555555ull;

inline std::uint64_t swap_pairs(std::uint64_t v) {
  return ((v & kEvenBits) << 1) | ((v >> 1) & kEvenBits);
}

inline int sym_inner(std::uint64_t v, std::uint64_t w) {
  return std::popcount(v & swap_pairs(w)) & 1;
}

// Symplectic transvection Z_h(v) = v + <h,v> h.
inline std::uint64_t transvect(std::uint64_t h, std::uint64_t v) {
  return sym_inner(h, v) ? (v ^ h) : v;
}

// Finds (h1, h2) with Z_{h2}(Z_{h1}(x)) = y for nonzero x, y.
struct TransvectionPair {
  std::uint64_t h1 = 0, h2 = 0;
};

TransvectionPair find_transvection(int m, std::uint64_t x, std::uint64_t y) {
  TransvectionPair out;
  if (x == y) return out;
  if (sym_inner(x, y) == 1) {
    out.h1 = x ^ y;
    return out;
  }
  std::uint64_t z = 0;
  for (int j = 0; j < m; ++j) {
    const int ii = 2 * j;
    const std::uint64_t xp = (x >> ii) & 3, yp = (y >> ii) & 3;
    if (xp != 0 && yp != 0) {  // pair where both are nonzero
      std::uint64_t zp = xp ^ yp;
      if (zp == 0) {  // same 2-bit content: pick something non-orthogonal
        zp = 2;       // z_{ii+1} = 1
        if ((xp & 1) != ((xp >> 1) & 1)) zp |= 1;
      }
      z = zp << ii;
      out.h1 = x ^ z;
      out.h2 = y ^ z;
      return out;
    }
  }
  // No common pair: stitch through one x-only and one y-only pair.
  for (int j = 0; j < m; ++j) {
    const int ii = 2 * j;
    const std::uint64_t xp = (x >> ii) & 3, yp = (y >> ii) & 3;
    if (xp != 0 && yp == 0) {
      std::uint64_t zp;
      if ((xp & 1) == ((xp >> 1) & 1)) zp = 2;
      else zp = (((xp & 1) << 1) | ((xp >> 1) & 1));  // swapped bits
      z |= zp << ii;
      break;
    }
  }
  for (int j = 0; j < m; ++j) {
    const int ii = 2 * j;
    const std::uint64_t xp = (x >> ii) & 3, yp = (y >> ii) & 3;
    if (xp == 0 && yp != 0) {
      std::uint64_t zp;
      if ((yp & 1) == ((yp >> 1) & 1)) zp = 2;
      else zp = (((yp & 1) << 1) | ((yp >> 1) & 1));
      z |= zp << ii;
      break;
    }
  }
  out.h1 = x ^ z;
  out.h2 = y ^ z;
  return out;
}

struct LevelChoice {
  std::uint64_t k;     // in [1, 4^m - 1]
  std::uint64_t bits;  // in [0, 2^{2m-1})
};

// Canonical-form decomposition: one (k, bits) choice per level m = n..1
// selects a symplectic group element exactly once.
std::vector<std::uint64_t> symplectic_from_choices(int n, const std::vector<LevelChoice>& choices) {
  std::vector<std::uint64_t> rows;  // built from the innermost level outward
  for (int m = 1; m <= n; ++m) {
    const LevelChoice& c = choices[n - m];
    const int nn = 2 * m;
    const std::uint64_t e1 = 1;
    std::uint64_t f1 = c.k;
    const TransvectionPair t = find_transvection(m, e1, f1);
    // eprime: bit 0 set; bits of "c.bits" from position 1 fill bits 2..nn-1.
    std::uint64_t eprime = e1;
    for (int j = 2; j < nn; ++j) eprime |= ((c.bits >> (j - 1)) & 1ull) << j;
    std::uint64_t h0 = transvect(t.h1, eprime);
    h0 = transvect(t.h2, h0);
    if (c.bits & 1) f1 = 0;
    // direct sum: two fresh rows, previous rows shifted past the new pair
    std::vector<std::uint64_t> next;
    next.reserve(nn);
    next.push_back(1);  // e1
    next.push_back(2);  // e2
    for (std::uint64_t r : rows) next.push_back(r << 2);
    for (std::uint64_t& r : next) {
      r = transvect(t.h1, r);
      r = transvect(t.h2, r);
      r = transvect(h0, r);
      r = transvect(f1, r);
    }
    rows = std::move(next);
  }
  return rows;
}

CliffordElement clifford_from_rows(int n, const std::vector<std::uint64_t>& rows,
                                   std::uint64_t sign_bits) {
  CliffordElement c;
  c.n = n;
  c.image_x.reserve(n);
  c.image_z.reserve(n);
  auto to_pauli = [n](std::uint64_t row, bool negative) {
    std::uint64_t x = 0, z = 0;
    for (int j = 0; j < n; ++j) {
      x |= ((row >> (2 * j)) & 1ull) << j;
      z |= ((row >> (2 * j + 1)) & 1ull) << j;
    }
    PauliString p(n, x, z);
    if (negative) p.phase_exponent = (p.phase_exponent + 2) & 3;
    return p;
  };
  for (int q = 0; q < n; ++q) {
    c.image_x.push_back(to_pauli(rows[2 * q], (sign_bits >> (2 * q)) & 1));
    c.image_z.push_back(to_pauli(rows[2 * q + 1], (sign_bits >> (2 * q + 1)) & 1));
  }
  return c;
}

}  // namespace

CliffordElement CliffordElement::identity(int n) {
  CliffordElement c;
  c.n = n;
  for (int q = 0; q < n; ++q) {
    c.image_x.emplace_back(n, 1ull << q, 0ull);
    c.image_z.emplace_back(n, 0ull, 1ull << q);
  }
  return c;
}

PauliString CliffordElement::conjugate(const PauliString& p) const {
  if (p.n != n) throw std::invalid_argument("CliffordElement::conjugate: qubit count mismatch");
  PauliString out(n, 0, 0);
  for (int q = 0; q < n; ++q)
    if ((p.x_mask >> q) & 1) out = out * image_x[q];
  for (int q = 0; q < n; ++q)
    if ((p.z_mask >> q) & 1) out = out * image_z[q];
  out.phase_exponent = (out.phase_exponent + p.phase_exponent) & 3;
  return out;
}

void CliffordElement::apply_gate(const Gate& g) {
  auto conj = [&](PauliString& p) {
    const std::uint64_t b0 = 1ull << g.q0;
    switch (g.kind) {
      case GateKind::H: {
        if ((p.x_mask & b0) && (p.z_mask & b0)) p.phase_exponent = (p.phase_exponent + 2) & 3;
        const bool x = p.x_mask & b0, z = p.z_mask & b0;
        p.x_mask = (p.x_mask & ~b0) | (z ? b0 : 0);
        p.z_mask = (p.z_mask & ~b0) | (x ? b0 : 0);
        break;
      }
      case GateKind::S:
        if (p.x_mask & b0) {
          p.z_mask ^= b0;
          p.phase_exponent = (p.phase_exponent + 1) & 3;
        }
        break;
      case GateKind::Sdg:
        if (p.x_mask & b0) {
          p.z_mask ^= b0;
          p.phase_exponent = (p.phase_exponent + 3) & 3;
        }
        break;
      case GateKind::X:
        if (p.z_mask & b0) p.phase_exponent = (p.phase_exponent + 2) & 3;
        break;
      case GateKind::Z:
        if (p.x_mask & b0) p.phase_exponent = (p.phase_exponent + 2) & 3;
        break;
      case GateKind::CNOT: {
        const std::uint64_t b1 = 1ull << g.q1;
        if (p.x_mask & b0) p.x_mask ^= b1;
        if (p.z_mask & b1) p.z_mask ^= b0;
        break;
      }
      case GateKind::T:
        throw std::invalid_argument("CliffordElement: T gate is not Clifford");
    }
  };
  for (auto& p : image_x) conj(p);
  for (auto& p : image_z) conj(p);
}

std::vector<std::uint64_t> CliffordElement::symplectic_rows() const {
  std::vector<std::uint64_t> rows(2 * n, 0);
  auto pack = [this](const PauliString& p) {
    std::uint64_t row = 0;
    for (int j = 0; j < n; ++j) {
      row |= ((p.x_mask >> j) & 1ull) << (2 * j);
      row |= ((p.z_mask >> j) & 1ull) << (2 * j + 1);
    }
    return row;
  };
  for (int q = 0; q < n; ++q) {
    rows[2 * q] = pack(image_x[q]);
    rows[2 * q + 1] = pack(image_z[q]);
  }
  return rows;
}

bool CliffordElement::symplectic_ok() const {
  const auto rows = symplectic_rows();
  for (int a = 0; a < 2 * n; ++a)
    for (int b = a; b < 2 * n; ++b) {
      const int want = (b == a + 1 && (a % 2) == 0) ? 1 : 0;
      if (sym_inner(rows[a], rows[b]) != want) return false;
    }
  return true;
}

bool CliffordElement::operator==(const CliffordElement& other) const {
  if (n != other.n) return false;
  for (int q = 0; q < n; ++q) {
    const auto eq = [](const PauliString& a, const PauliString& b) {
      return a.x_mask == b.x_mask && a.z_mask == b.z_mask &&
             a.phase_exponent == b.phase_exponent;
    };
    if (!eq(image_x[q], other.image_x[q]) || !eq(image_z[q], other.image_z[q])) return false;
  }
  return true;
}

std::uint64_t symplectic_group_order(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("symplectic_group_order: n out of uint64 range");
  std::uint64_t order = 1;
  for (int j = 1; j <= n; ++j) order *= ((1ull << (2 * j)) - 1) << (2 * j - 1);
  return order;
}

std::uint64_t clifford_group_order(int n) {
  return symplectic_group_order(n) << (2 * n);
}

CliffordElement random_clifford(int n, Rng& rng) {
  if (n < 1 || n > PauliString::kMaxQubits)
    throw std::invalid_argument("random_clifford: bad qubit count");
  std::vector<LevelChoice> choices(n);
  for (int m = n; m >= 1; --m) {
    const std::uint64_t s = (1ull << (2 * m)) - 1;
    std::uniform_int_distribution<std::uint64_t> dk(1, s);
    std::uniform_int_distribution<std::uint64_t> db(0, (1ull << (2 * m - 1)) - 1);
    choices[n - m] = {dk(rng), db(rng)};
  }
  std::uniform_int_distribution<std::uint64_t> ds(0, (1ull << (2 * n)) - 1);
  return clifford_from_rows(n, symplectic_from_choices(n, choices), ds(rng));
}

CliffordElement clifford_from_index(int n, std::uint64_t idx) {
  if (idx >= clifford_group_order(n))
    throw std::out_of_range("clifford_from_index: index out of range");
  const std::uint64_t sign_bits = idx & ((1ull << (2 * n)) - 1);
  std::uint64_t sp = idx >> (2 * n);
  std::vector<LevelChoice> choices(n);
  for (int m = n; m >= 1; --m) {
    const std::uint64_t s = (1ull << (2 * m)) - 1;
    choices[n - m].k = (sp % s) + 1;
    sp /= s;
    choices[n - m].bits = sp & ((1ull << (2 * m - 1)) - 1);
    sp >>= (2 * m - 1);
  }
  return clifford_from_rows(n, symplectic_from_choices(n, choices), sign_bits);
}

void enumerate_clifford(int n, const std::function<void(const CliffordElement&)>& visit) {
  if (n < 1 || n > 2)
    throw std::invalid_argument("enumerate_clifford: n > 2 rejected (combinatorial blow-up)");
  const std::uint64_t total = clifford_group_order(n);
  for (std::uint64_t idx = 0; idx < total; ++idx) visit(clifford_from_index(n, idx));
}

CliffordElement tableau_from_sequence(const GateSequence& seq) {
  CliffordElement c = CliffordElement::identity(seq.n);
  for (const auto& g : seq.gates) c.apply_gate(g);
  return c;
}

GateSequence clifford_to_circuit(const CliffordElement& c) {
  const int n = c.n;
  CliffordElement w = c;
  GateSequence applied;
  applied.n = n;
  auto emit = [&](GateKind k, int q0, int q1 = -1) {
    Gate g{k, q0, q1};
    w.apply_gate(g);
    applied.gates.push_back(g);
  };
  const auto mask_from = [n](int q) {
    return ((n == 64) ? ~0ull : ((1ull << n) - 1)) & ~((1ull << q) - 1);
  };

  for (int q = 0; q < n; ++q) {
    const std::uint64_t high = mask_from(q);
    // --- bring image_x[q] to +-X_q ---
    if ((w.image_x[q].x_mask & high) == 0) {
      // all-Z on the active qubits; turn one Z into X
      for (int j = q; j < n; ++j)
        if ((w.image_x[q].z_mask >> j) & 1) { emit(GateKind::H, j); break; }
    }
    if (((w.image_x[q].x_mask >> q) & 1) == 0) {
      for (int j = q + 1; j < n; ++j)
        if ((w.image_x[q].x_mask >> j) & 1) {
          emit(GateKind::CNOT, q, j);
          emit(GateKind::CNOT, j, q);
          emit(GateKind::CNOT, q, j);
          break;
        }
    }
    for (int j = q + 1; j < n; ++j)
      if ((w.image_x[q].x_mask >> j) & 1) emit(GateKind::CNOT, q, j);
    if (w.image_x[q].z_mask & high) {
      if (((w.image_x[q].z_mask >> q) & 1) == 0) emit(GateKind::S, q);
      for (int j = q + 1; j < n; ++j)
        if ((w.image_x[q].z_mask >> j) & 1) emit(GateKind::CNOT, j, q);
      emit(GateKind::S, q);
    }
    // --- bring image_z[q] to +-Z_q, preserving X_q ---
    for (int j = q + 1; j < n; ++j) {
      if ((w.image_z[q].x_mask >> j) & 1) {
        if ((w.image_z[q].z_mask >> j) & 1) emit(GateKind::S, j);
        emit(GateKind::H, j);
      }
    }
    if ((w.image_z[q].x_mask >> q) & 1) {
      emit(GateKind::H, q);
      emit(GateKind::S, q);
      emit(GateKind::H, q);
    }
    for (int j = q + 1; j < n; ++j)
      if ((w.image_z[q].z_mask >> j) & 1) emit(GateKind::CNOT, j, q);
    // --- fix signs ---
    if (w.image_x[q].sign() < 0) emit(GateKind::Z, q);
    if (w.image_z[q].sign() < 0) emit(GateKind::X, q);
  }
  // w is now the identity tableau, so  applied * c = 1  and  c = applied^{-1}.
  return applied.inverse();
}

}  // namespace shadow
