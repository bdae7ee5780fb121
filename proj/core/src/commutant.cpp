/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "shadow/commutant.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "shadow/simulate.hpp"

namespace shadow {

namespace {

// copy index c in 1..4 lives at bit 4-c of a nibble
int nibble_bit(std::uint8_t v, int c) { return (v >> (4 - c)) & 1; }

std::array<std::uint8_t, 16> span_of(const std::array<std::uint8_t, 4>& gens) {
  std::array<std::uint8_t, 16> out{};
  for (int m = 0; m < 16; ++m) {
    std::uint8_t e = 0;
    for (int i = 0; i < 4; ++i)
      if (m & (1 << i)) e ^= gens[i];
    out[m] = e;
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::array<std::uint8_t, 4> kT4Generators = {0x99, 0x55, 0x0F, 0xF0};

std::vector<Perm4> all_perms() {
  Perm4 p{0, 1, 2, 3};
  std::vector<Perm4> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// cycle type as sorted descending lengths
std::vector<int> cycle_type(const Perm4& p) {
  std::array<bool, 4> seen{};
  std::vector<int> lens;
  for (int i = 0; i < 4; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = p[j];
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return lens;
}

// character table row index by cycle type: e, 2, 2+2, 3, 4
int class_of(const Perm4& p) {
  const auto t = cycle_type(p);
  if (t[0] == 1) return 0;
  if (t[0] == 2) return t[1] == 2 ? 2 : 1;
  if (t[0] == 3) return 3;
  return 4;
}

// rows: [4], [3,1], [2,2], [2,1,1], [1^4]
constexpr double kChars[5][5] = {{1, 1, 1, 1, 1},
                                 {3, 1, -1, 0, -1},
                                 {2, 0, 2, -1, 0},
                                 {3, -1, -1, 0, 1},
                                 {1, -1, 1, 1, -1}};

bool fixes_pair(const Perm4& p) {
  const bool low = (p[0] == 0 || p[0] == 1) && (p[1] == 0 || p[1] == 1);
  return low;
}

bool swaps_pairs(const Perm4& p) {
  const bool cross = (p[0] >= 2) && (p[1] >= 2);
  return cross;
}

StochasticLagrangian perm_subspace(const Perm4& sigma) {
  StochasticLagrangian t;
  t.tag = StochasticLagrangian::Tag::Permutation;
  t.sigma = sigma;
  for (int y = 0; y < 16; ++y) {
    std::uint8_t x = 0;
    for (int c = 1; c <= 4; ++c)
      if (nibble_bit(static_cast<std::uint8_t>(y), sigma[c - 1] + 1))
        x |= 1 << (4 - c);
    t.elements[y] = static_cast<std::uint8_t>((x << 4) | y);
  }
  std::sort(t.elements.begin(), t.elements.end());
  return t;
}

StochasticLagrangian coset_subspace(const Perm4& sigma) {
  StochasticLagrangian t;
  t.tag = StochasticLagrangian::Tag::Coset;
  t.sigma = sigma;
  const auto base = span_of(kT4Generators);
  for (int i = 0; i < 16; ++i) {
    const std::uint8_t x = base[i] >> 4, y = base[i] & 0x0F;
    std::uint8_t xp = 0;
    for (int c = 1; c <= 4; ++c)
      if (nibble_bit(x, sigma[c - 1] + 1)) xp |= 1 << (4 - c);
    t.elements[i] = static_cast<std::uint8_t>((xp << 4) | y);
  }
  std::sort(t.elements.begin(), t.elements.end());
  return t;
}

std::string perm_label(const Perm4& p) {
  std::string s = "(";
  for (int i : p) s += static_cast<char>('1' + i);
  return s + ")";
}

void check_big_r(int n) {
  if (n < 1 || n > kMaxBigRQubits)
    throw std::invalid_argument("dense 16^n operator cutoff exceeded (n <= 3)");
}

void check_omega(int n) {
  if (n < 1 || n > kMaxOmegaQubits)
    throw std::invalid_argument("dense cross-moment cutoff exceeded (n <= 2)");
}

const Perm4 kId{0, 1, 2, 3};
const Perm4 kSwap12{1, 0, 2, 3};
const Perm4 kSwap34{0, 1, 3, 2};
const Perm4 kSwapBoth{1, 0, 3, 2};

Matrix to_complex(const Eigen::MatrixXd& m) { return m.cast<Complex>(); }

}  // namespace

bool is_stochastic_lagrangian(const StochasticLagrangian& t) {
  std::set<std::uint8_t> els(t.elements.begin(), t.elements.end());
  if (els.size() != 16) return false;
  // closed under xor and contains the all-ones vector
  if (!els.count(0xFF)) return false;
  for (auto a : els)
    for (auto b : els)
      if (!els.count(a ^ b)) return false;
  // weight condition x.x = y.y (mod 4)
  for (auto e : els) {
    const int wx = std::popcount(static_cast<unsigned>(e >> 4));
    const int wy = std::popcount(static_cast<unsigned>(e & 0x0F));
    if (((wx - wy) % 4 + 4) % 4 != 0) return false;
  }
  return true;
}

std::vector<StochasticLagrangian> sigma44_enumerate() {
  std::vector<StochasticLagrangian> out;
  for (const auto& p : all_perms()) {
    auto t = perm_subspace(p);
    t.label = "perm" + perm_label(p);
    out.push_back(t);
  }
  const std::vector<Perm4> reps = {kId,
                                   kSwap12,
                                   {2, 1, 0, 3},   // (13)
                                   {0, 2, 1, 3},   // (23)
                                   {1, 2, 0, 3},   // (123): 1->2,2->3,3->1
                                   {2, 0, 1, 3}};  // (132)
  for (const auto& p : reps) {
    auto t = coset_subspace(p);
    t.label = "coset" + perm_label(p);
    out.push_back(t);
  }
  return out;
}

Eigen::MatrixXd r_small(const StochasticLagrangian& t) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(16, 16);
  for (auto e : t.elements) m(e >> 4, e & 0x0F) += 1.0;
  return m;
}

Eigen::MatrixXd big_r(const StochasticLagrangian& t, int n) {
  check_big_r(n);
  const std::int64_t size = 1ll << (4 * n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  const std::uint64_t tuples = 1ull << (4 * n);
  for (std::uint64_t code = 0; code < tuples; ++code) {
    std::uint64_t row = 0, col = 0, rest = code;
    for (int q = 0; q < n; ++q) {
      const std::uint8_t e = t.elements[rest & 15];
      rest >>= 4;
      for (int c = 1; c <= 4; ++c) {
        const int shift = (4 - c) * n + q;
        row |= static_cast<std::uint64_t>(nibble_bit(e >> 4, c)) << shift;
        col |= static_cast<std::uint64_t>(nibble_bit(e & 0x0F, c)) << shift;
      }
    }
    m(row, col) += 1.0;
  }
  return m;
}

Eigen::MatrixXd perm_operator(const Perm4& sigma, int n) {
  return big_r(perm_subspace(sigma), n);
}

std::array<int, 5> orbit_sizes() { return {4, 16, 4, 2, 4}; }

std::array<Eigen::MatrixXd, 5> orbit_operators(int n) {
  check_big_r(n);
  const std::int64_t size = 1ll << (4 * n);
  std::array<Eigen::MatrixXd, 5> r;
  for (auto& m : r) m = Eigen::MatrixXd::Zero(size, size);
  for (const auto& t : sigma44_enumerate()) {
    int orbit;
    if (t.tag == StochasticLagrangian::Tag::Permutation) {
      if (fixes_pair(t.sigma)) orbit = 0;
      else if (swaps_pairs(t.sigma)) orbit = 2;
      else orbit = 1;
    } else {
      orbit = (t.sigma == kId || t.sigma == kSwap12) ? 3 : 4;
    }
    r[orbit] += big_r(t, n);
  }
  return r;
}

ProjectorSet projectors(int n) {
  check_big_r(n);
  const double d = std::pow(2.0, n);
  ProjectorSet ps;
  const std::int64_t size = 1ll << (4 * n);
  for (auto& p : ps.p_lambda) p = Eigen::MatrixXd::Zero(size, size);
  for (const auto& sigma : all_perms()) {
    const Eigen::MatrixXd rs = perm_operator(sigma, n);
    const int cls = class_of(sigma);
    for (int lam = 0; lam < 5; ++lam)
      ps.p_lambda[lam] += (kChars[lam][0] / 24.0) * kChars[lam][cls] * rs;
  }
  ps.p_g = (perm_operator(kId, n) + perm_operator(kSwap12, n) +
            perm_operator(kSwap34, n) + perm_operator(kSwapBoth, n)) /
           4.0;
  ps.p_css = big_r(coset_subspace(kId), n) / d;
  const int keep[3] = {0, 1, 2};  // [4], [3,1], [2,2]
  for (int i = 0; i < 3; ++i) {
    ps.p_lambda_g[i] = ps.p_lambda[keep[i]] * ps.p_g;
    ps.p_lambda_g_plus[i] = ps.p_lambda_g[i] * ps.p_css;
    ps.p_lambda_g_minus[i] = ps.p_lambda_g[i] - ps.p_lambda_g_plus[i];
  }
  return ps;
}

std::array<DimensionRow, 3> dimension_table(int n) {
  // all traces reduce to single-qubit 16x16 products raised to the n-th power
  const Eigen::MatrixXd rt4 = r_small(coset_subspace(kId));
  const std::vector<Perm4> group = {kId, kSwap12, kSwap34, kSwapBoth};
  std::array<DimensionRow, 3> out;
  const int lams[3] = {0, 1, 2};
  for (int i = 0; i < 3; ++i) {
    double total = 0, plus = 0;
    for (const auto& sigma : all_perms()) {
      const Eigen::MatrixXd rs = r_small(perm_subspace(sigma));
      const double chi = kChars[lams[i]][class_of(sigma)];
      if (chi == 0) continue;
      for (const auto& g : group) {
        const Eigen::MatrixXd prod = rs * r_small(perm_subspace(g));
        total += chi * std::pow(prod.trace(), n);
        plus += chi * std::pow((prod * rt4).trace(), n);
      }
    }
    const double scale = kChars[lams[i]][0] / 96.0;
    out[i].total = scale * total;
    out[i].plus = scale * plus / std::pow(2.0, n);
    out[i].minus = out[i].total - out[i].plus;
  }
  return out;
}

std::array<DimensionRow, 3> dimension_table_closed(int n) {
  const double d = std::pow(2.0, n);
  std::array<DimensionRow, 3> out;
  out[0].total = d * (d + 1) * (d + 2) * (d + 3) / 24;
  out[0].plus = (d + 1) * (d + 2) / 6;
  out[0].minus = (d * d - 1) * (d + 2) * (d + 4) / 24;
  out[1].total = d * (d + 2) * (d * d - 1) / 8;
  out[1].plus = 0;
  out[1].minus = out[1].total;
  out[2].total = d * d * (d * d - 1) / 12;
  out[2].plus = (d * d - 1) / 3;
  out[2].minus = (d * d - 4) * (d * d - 1) / 12;
  return out;
}

GramSpectrum gram_spectrum(int n) {
  const double d = std::pow(2.0, n);
  const auto subs = sigma44_enumerate();
  GramSpectrum gs;
  gs.gram = Eigen::MatrixXd(30, 30);
  for (int i = 0; i < 30; ++i) {
    std::set<std::uint8_t> a(subs[i].elements.begin(), subs[i].elements.end());
    for (int j = 0; j < 30; ++j) {
      int common = 0;
      for (auto e : subs[j].elements) common += a.count(e);
      const int dim = std::countr_zero(static_cast<unsigned>(common));
      gs.gram(i, j) = std::pow(d, dim);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gs.gram,
                                                    Eigen::EigenvaluesOnly);
  const double tol = 1e-8 * es.eigenvalues().cwiseAbs().maxCoeff();
  for (int i = 0; i < 30; ++i) {
    gs.eigenvalues.push_back(es.eigenvalues()[i]);
    if (std::abs(es.eigenvalues()[i]) > tol) ++gs.rank;
  }
  return gs;
}

Matrix operand4(const Matrix& O, const Matrix& rho) {
  return kron(kron(kron(O, rho), O), rho);
}

Matrix omega_from_unitaries(int n, const std::vector<Matrix>& unitaries,
                            const Matrix& basis) {
  check_omega(n);
  if (unitaries.empty())
    throw std::invalid_argument("omega: empty unitary list");
  const std::int64_t d = 1ll << n;
  if (basis.rows() != d ||
      (basis.adjoint() * basis - Matrix::Identity(d, d)).norm() > 1e-10)
    throw std::invalid_argument("omega: basis is not orthonormal");
  Matrix omega = Matrix::Zero(d * d * d * d, d * d * d * d);
  for (const auto& u : unitaries) {
    Matrix m = Matrix::Zero(d * d, d * d);
    for (std::int64_t i = 0; i < d; ++i) {
      const Vector v = u.adjoint() * basis.col(i);
      const Matrix proj = v * v.adjoint();
      m += kron(proj, proj);
    }
    omega += kron(m, m);
  }
  return omega / static_cast<double>(unitaries.size());
}

Matrix omega_empirical(const EnsembleSpec& spec, const Matrix& basis,
                       int num_samples, Rng& rng) {
  check_omega(spec.n);
  std::vector<Matrix> us;
  if (num_samples == 0) {
    if (spec.kind != EnsembleSpec::Kind::Clifford)
      throw std::invalid_argument("omega: exact enumeration is Clifford only");
    const std::uint64_t count = clifford_group_order(spec.n);
    us.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx)
      us.push_back(dense_unitary(clifford_to_circuit(clifford_from_index(spec.n, idx))));
  } else {
    us.reserve(num_samples);
    for (int s = 0; s < num_samples; ++s) {
      const SampledUnitary su = sample_unitary(spec, rng);
      us.push_back(su.is_dense ? su.u : dense_unitary(su.seq));
    }
  }
  return omega_from_unitaries(spec.n, us, basis);
}

KappaSet kappa_closed(const EnsembleSpec& spec) {
  spec.validate();
  const double d = std::pow(2.0, spec.n);
  KappaSet k;
  k.k31 = 4 / ((d + 1) * (d + 2));
  switch (spec.kind) {
    case EnsembleSpec::Kind::FourDesign:
      k.k4_plus = k.k4_minus = 4 * (d + 5) / ((d + 1) * (d + 2) * (d + 3));
      k.k22_plus = k.k22_minus = 4 / (d * (d + 1));
      return k;
    case EnsembleSpec::Kind::Clifford:
      k.k4_plus = k.k22_plus = 2 / (d + 1);
      k.k4_minus = k.k22_minus = 4 / ((d + 1) * (d + 2));
      return k;
    case EnsembleSpec::Kind::Interleaved: {
      double A = 1, B = 1;
      if (spec.l > 0) {
        const AlphaBeta ab = alpha_beta(d, spec.k);
        A = std::pow(ab.alpha, spec.l);
        B = std::pow(ab.beta, spec.l);
      }
      k.k4_plus = (4 * (d + 5) + 2 * (d - 1) * (d + 4) * A) /
                  ((d + 1) * (d + 2) * (d + 3));
      k.k4_minus = (4 * (d + 5) - 8 * A) / ((d + 1) * (d + 2) * (d + 3));
      k.k22_plus = (4 + 2 * (d - 2) * B) / (d * (d + 1));
      k.k22_minus = (4 * (d + 2) - 8 * B) / (d * (d + 1) * (d + 2));
      return k;
    }
    case EnsembleSpec::Kind::SimpleT: {
      const double g = std::pow(AlphaBeta::gamma, spec.k);
      const double v = std::pow(AlphaBeta::nu, spec.k);
      k.k4_plus = (2 * d * g + 4 * v) / ((d + 1) * (d + 2));
      k.k4_minus = (4 * d * d + 4 * d * (5 - 2 * g) - 16 * v) /
                   ((d * d - 1) * (d + 2) * (d + 4));
      k.k22_plus = (2 * d * g - 2 * v) / (d * d - 1);
      // the [2,2] CSS-orthogonal block is empty at n = 1
      k.k22_minus = spec.n == 1 ? 0.0
                                : (4 * d * d - 4 * d * (1 + 2 * g) + 8 * v) /
                                      ((d * d - 1) * (d * d - 4));
      return k;
    }
  }
  throw std::logic_error("kappa_closed: unknown ensemble kind");
}

Matrix omega_closed(const EnsembleSpec& spec) {
  check_omega(spec.n);
  const KappaSet k = kappa_closed(spec);
  const ProjectorSet ps = projectors(spec.n);
  Eigen::MatrixXd omega = k.k4_plus * ps.p_lambda_g_plus[0] +
                          k.k4_minus * ps.p_lambda_g_minus[0] +
                          k.k31 * ps.p_lambda_g[1] +
                          k.k22_plus * ps.p_lambda_g_plus[2] +
                          k.k22_minus * ps.p_lambda_g_minus[2];
  return to_complex(omega);
}

KappaSet kappa_extract(const Matrix& omega, int n) {
  check_omega(n);
  const ProjectorSet ps = projectors(n);
  const auto project = [&](const Eigen::MatrixXd& p) {
    const double dim = p.trace();
    if (std::abs(dim) < 1e-9) return 0.0;
    return (omega * to_complex(p)).trace().real() / dim;
  };
  KappaSet k;
  k.k4_plus = project(ps.p_lambda_g_plus[0]);
  k.k4_minus = project(ps.p_lambda_g_minus[0]);
  k.k31 = project(ps.p_lambda_g[1]);
  k.k22_plus = project(ps.p_lambda_g_plus[2]);
  k.k22_minus = project(ps.p_lambda_g_minus[2]);
  return k;
}

GiSet gi_fit(const Matrix& omega, int n) {
  check_omega(n);
  const auto r = orbit_operators(n);
  const std::int64_t size = r[0].rows();
  Eigen::MatrixXd a(size * size, 5);
  for (int i = 0; i < 5; ++i)
    a.col(i) = Eigen::Map<const Eigen::VectorXd>(r[i].data(), size * size);
  // Omega is real for the ensembles in scope; fit the real part
  const Eigen::MatrixXd om = omega.real();
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(om.data(), size * size);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  GiSet out;
  const double smax = svd.singularValues()[0];
  out.degenerate = svd.singularValues()[4] < 1e-9 * smax;
  const Eigen::VectorXd g = svd.solve(b);  // minimum-norm solution
  for (int i = 0; i < 5; ++i) out.g[i] = g[i];
  out.residual = (a * g - b).norm();
  return out;
}

double vstar_via_omega(const Matrix& omega, const Matrix& O, const Matrix& rho) {
  const double d = static_cast<double>(O.rows());
  const double t = (O * rho).trace().real();
  return (d + 1) * (d + 1) * (omega * operand4(O, rho)).trace().real() - t * t;
}

std::pair<double, double> lambda12(int n, const Matrix& basis) {
  if (n > kMaxCharQubits) throw std::invalid_argument("lambda12: cutoff");
  const std::int64_t d = 1ll << n;
  if (basis.rows() != d ||
      (basis.adjoint() * basis - Matrix::Identity(d, d)).norm() > 1e-10)
    throw std::invalid_argument("lambda12: basis is not orthonormal");
  double l1 = 0, l2 = 0;
  for (std::int64_t i = 0; i < d; ++i) {
    const Matrix psi = basis.col(i) * basis.col(i).adjoint();
    for (std::int64_t j = 0; j < d; ++j) {
      const Matrix phi = basis.col(j) * basis.col(j).adjoint();
      const auto pair = cross_chars(n, psi, phi);
      l1 += pair.cross_l2_squared() + 2 * pair.dot();
      l2 += pair.cross_l2_squared() - pair.dot();
    }
  }
  return {l1, l2};
}

}  // namespace shadow
