/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "shadow/variance.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "shadow/pauli.hpp"

namespace shadow {

namespace {

int qubits_of(const Matrix& O) {
  const auto d = O.rows();
  if (d < 2 || (d & (d - 1)) != 0 || O.cols() != d)
    throw std::invalid_argument("operator dimension is not a power of two");
  return std::countr_zero(static_cast<std::uint64_t>(d));
}

void check_pair(const Matrix& O, const Matrix& rho) {
  if (O.rows() != rho.rows() || O.cols() != rho.cols())
    throw std::invalid_argument("operator/state dimension mismatch");
  if (std::abs(O.trace()) > 1e-8)
    throw std::invalid_argument("observable must be traceless");
}

// P * X for a Hermitian Pauli P, O(d^2): row r of the product is
// i^p (-1)^{z.(r^x)} times row r^x of X.
Matrix pauli_left_mult(const PauliString& p, const Matrix& X) {
  static const Complex kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto d = X.rows();
  Matrix out(d, d);
  for (std::int64_t r = 0; r < d; ++r) {
    const std::uint64_t src = static_cast<std::uint64_t>(r) ^ p.x_mask;
    const double sgn = (std::popcount(p.z_mask & src) & 1) ? -1.0 : 1.0;
    out.row(r) = (kI[p.phase_exponent] * sgn) * X.row(src);
  }
  return out;
}

// tr(X Y) without forming the product.
Complex trace_prod(const Matrix& X, const Matrix& Y) {
  return X.cwiseProduct(Y.transpose()).sum();
}

double pow_or_one(double base, int e) { return e == 0 ? 1.0 : std::pow(base, e); }

}  // namespace

void EnsembleSpec::validate() const {
  if (n < 1) throw std::invalid_argument("ensemble: n must be positive");
  if (k < 0 || k > n) throw std::invalid_argument("ensemble: need 0 <= k <= n");
  if (l < 0) throw std::invalid_argument("ensemble: need l >= 0");
  if (kind == Kind::Interleaved && k == 0 && l > 0)
    throw std::invalid_argument("ensemble: k = 0 layers require l = 0");
}

AlphaBeta alpha_beta(double d, int k) {
  if (k < 1) throw std::invalid_argument("alpha_beta: k >= 1 required");
  if (d < 2) throw std::invalid_argument("alpha_beta: d >= 2 required");
  AlphaBeta ab;
  const double g = std::pow(AlphaBeta::gamma, k);
  const double v = std::pow(AlphaBeta::nu, k);
  if (k == 1) {
    // closed forms valid at every d >= 2 (the d = 2 value is the limit)
    ab.alpha = (3 * d * d - 3 * d - 4) / (4 * (d * d - 1));
    ab.beta = (3 * d * d - 4) / (4 * (d * d - 1));
    return ab;
  }
  if (d <= 2)
    throw std::domain_error("alpha_beta: beta_k undefined at d = 2 for k > 1");
  ab.alpha = (d * d * (d + 3) * (d * g + 3 * v) - 4 * (d + 1) * (d + 2)) /
             ((d * d - 1) * (d + 2) * (d + 4));
  ab.beta = (d * d * (d * d * g - 4) + 4) / ((d * d - 1) * (d * d - 4));
  return ab;
}

double v_single(const Matrix& O, const Matrix& rho) {
  check_pair(O, rho);
  const double d = static_cast<double>(O.rows());
  const double o2 = (O * O).trace().real();
  const double ro2 = (rho * O * O).trace().real();
  const double t = (O * rho).trace().real();
  return (d + 1) / (d + 2) * (o2 + 2 * ro2) - t * t;
}

double v_fidelity(double d, double F) {
  if (F < -1e-12 || F > 1 + 1e-12)
    throw std::invalid_argument("v_fidelity: F out of [0,1]");
  return -F * F + d * (2 * F + 1) / (d + 2);
}

double vstar_4design(const Matrix& O, const Matrix& rho) {
  const XiTraces xi = xi_traces(O, rho);
  const double d = static_cast<double>(O.rows());
  return 2 * xi.xi1 / (d * (d + 2) * (d + 3)) -
         (d + 1) * xi.xi2 / (d * (d + 2) * (d + 3)) +
         (d + 1) * xi.xi3 / (d * (d + 3));
}

double vstar_4design_fidelity(double d) {
  return 4 * (d - 1) / ((d + 2) * (d + 3));
}

double v_triangle(const Matrix& O, const Matrix& rho) {
  check_pair(O, rho);
  const int n = qubits_of(O);
  const double d = static_cast<double>(O.rows());
  const auto pair = cross_chars(n, rho, O);
  return (d + 1) / (d * (d + 2)) * (pair.cross_l2_squared() + pair.dot());
}

double v_triangle_fidelity(double d, double m2) {
  if (m2 < -1e-12) throw std::invalid_argument("negative Renyi entropy");
  return (std::exp2(1 - m2) * d * d - 3 * d + 1) * (d + 1) / (d * d * (d + 2));
}

double vstar_clifford(const Matrix& O, const Matrix& rho) {
  const double d = static_cast<double>(O.rows());
  const double t = (O * rho).trace().real();
  return v_triangle(O, rho) - t * t / (d + 2);
}

double vstar_clifford_fidelity(double d, double m2) {
  if (m2 < -1e-12) throw std::invalid_argument("negative Renyi entropy");
  return (std::exp2(1 - m2) * (d + 1) - 4) / (d + 2);
}

double vstar_ukl(const Matrix& O, const Matrix& rho, int k, int l) {
  const double d = static_cast<double>(O.rows());
  return vstar_from_gi(gi_ukl(d, k, l), xi_traces(O, rho), d);
}

double vstar_ukl_fidelity(double d, double m2, int k, int l) {
  if (l < 0 || (k < 1 && l > 0))
    throw std::invalid_argument("vstar_ukl_fidelity: need k >= 1 or l = 0");
  if (l == 0) return vstar_clifford_fidelity(d, m2);
  const double a = pow_or_one(alpha_beta(d, k).alpha, l);
  return vstar_4design_fidelity(d) +
         (std::exp2(1 - m2) * (d + 1) * (d + 3) - 8 * (d + 1)) * a /
             ((d + 2) * (d + 3));
}

double vstar_tuk(const Matrix& O, const Matrix& rho, int k) {
  const double d = static_cast<double>(O.rows());
  return vstar_from_gi(gi_tuk(d, k), xi_traces(O, rho), d);
}

double vstar_tuk_fidelity(double d, double m2, int k) {
  if (k < 0) throw std::invalid_argument("vstar_tuk_fidelity: k >= 0 required");
  if (k == 0) return vstar_clifford_fidelity(d, m2);
  const double g = std::pow(AlphaBeta::gamma, k);
  const double v = std::pow(AlphaBeta::nu, k);
  const double t1 = (d * d * d + 4 * d * d + 3 * d) * g +
                    (2 * d * d + 8 * d + 6) * v - 2 * d * d - 12 * d - 10;
  const double t2 = -(4 * d * d + 4 * d) * g - (8 * d + 8) * v +
                    2 * d * d + 6 * d + 16;
  return (std::exp2(1 - m2) * t1 + 2 * t2) / ((d - 1) * (d + 2) * (d + 4));
}

XiTraces xi_traces(const Matrix& O, const Matrix& rho) {
  check_pair(O, rho);
  const int n = qubits_of(O);
  if (n > kMaxXiQubits)
    throw std::invalid_argument("xi_traces: cutoff exceeded (n <= 6)");
  const double d = static_cast<double>(O.rows());

  XiTraces xi;
  const double t = (O * rho).trace().real();
  const Matrix O2 = O * O;
  const Matrix Or = O * rho;
  xi.xi1 = t * t;
  xi.xi2 = O2.trace().real() + 4 * (O2 * rho).trace().real() +
           2 * (O2 * rho * rho).trace().real() + 2 * (Or * Or).trace().real();
  xi.xi3 = O2.trace().real() * (rho * rho).trace().real() + t * t +
           2 * (O2 * rho * rho).trace().real();
  const auto pair = cross_chars(n, rho, O);
  xi.xi4 = (pair.cross_l2_squared() + pair.dot()) / d;

  // Orbit 5: (1/d) sum_P of the four cycle-trace products for the cosets
  // (13)T, (23)T, (123)T, (132)T acting on the operand O x rho x O x rho.
  Complex acc = 0;
  for (std::uint64_t idx = 0; idx < (1ull << (2 * n)); ++idx) {
    const PauliString p = pauli_from_index(n, idx);
    const Matrix a = pauli_left_mult(p, O);    // P O
    const Matrix b = pauli_left_mult(p, rho);  // P rho
    const Matrix ab = a * b;                   // P O P rho
    const Complex trb = b.trace();
    acc += trace_prod(a, a) * trb * trb;            // (13): tr(POPO) tr(Prho)^2
    acc += a.trace() * trace_prod(b, a) * trb;      // (23): Xi_O tr(PrhoPO) Xi_rho
    acc += trace_prod(ab, a) * trb;                 // (123): tr(POProPO) tr(Prho)
    acc += trace_prod(a, ab) * trb;                 // (132): tr(POPOPrho) tr(Prho)
  }
  xi.xi5 = acc.real() / d;
  return xi;
}

XiTraces xi_fidelity_closed(double d, double m2) {
  XiTraces xi;
  const double d2 = d * d;
  xi.xi1 = (d - 1) * (d - 1) / d2;
  xi.xi2 = (d - 1) * (9 * d - 8) / d2;
  xi.xi3 = (d - 1) * (4 * d - 3) / d2;
  xi.xi4 = (std::exp2(1 - m2) * d2 - 3 * d + 1) / d2;
  xi.xi5 = (std::exp2(2 - m2) * d2 - 7 * d + 3) / d2;
  return xi;
}

GiVector gi_haar(double d) {
  const double D = d * (d + 1) * (d + 2) * (d + 3);
  return {(d * d + 4 * d + 2) / D, -1 / D, 1 / (d * (d + 1) * (d + 3)), 0, 0};
}

GiVector gi_clifford(double d) {
  const double c = 1 / ((d + 1) * (d + 2));
  return {c, 0, 0, c, 0};
}

GiVector gi_ukl(double d, int k, int l) {
  if (l < 0 || (k < 1 && l > 0))
    throw std::invalid_argument("gi_ukl: need k >= 1 or l = 0");
  if (l == 0) return gi_clifford(d);
  const AlphaBeta ab = alpha_beta(d, k);
  const double A = pow_or_one(ab.alpha, l);
  const double B = pow_or_one(ab.beta, l);
  const double D = d * (d + 1) * (d + 2) * (d + 3);
  const double ca = A / (3 * (d + 1) * (d + 2) * (d + 3));
  const double cb = B / (3 * d * (d + 1) * (d + 2));
  GiVector g;
  g[0] = (d * d + 4 * d + 2) / D - ca - 2 * cb;
  g[1] = -1 / D - ca + cb;
  g[2] = 1 / (d * (d + 1) * (d + 3)) - ca - 2 * cb;
  g[3] = (A + 2 * B) / (3 * (d + 1) * (d + 2));
  g[4] = (A - B) / (3 * (d + 1) * (d + 2));
  return g;
}

GiVector gi_tuk(double d, int k) {
  if (k < 0) throw std::invalid_argument("gi_tuk: k >= 0 required");
  if (k == 0) return gi_clifford(d);
  if (k == 1) {
    // the general denominator vanishes at d = 2; this form is valid at all d
    const double E = 4 * (d - 1) * (d + 1) * (d + 2);
    return {(4 * d - 3) / E, 0, 1 / E, (3 * d - 5) / E, -1 / E};
  }
  const double g = std::pow(AlphaBeta::gamma, k);
  const double v = std::pow(AlphaBeta::nu, k);
  const double E = (d * d - 4) * (d * d - 1) * (d + 4);
  GiVector out;
  out[0] = ((-d * d - 2 * d) * g + 4 * v + d * d * d + 2 * d * d - 8 * d + 4) / E;
  out[1] = d * (2 * g - 1 - v) / E;
  out[2] = ((d * d + 2 * d) * (1 - g) - 4 * (1 - v)) / E;
  out[3] = (d * (d * d + 3 * d - 2) * g - (2 * d + 4) * v -
            2 * (d * d + 3 * d - 6)) / E;
  out[4] = -((d * d + 2 * d) * g - (d * d + 2 * d - 4) * v - 4) / E;
  return out;
}

double vstar_from_gi(const GiVector& g, const XiTraces& xi, double d) {
  const double s = g[0] * xi.xi1 + g[1] * xi.xi2 + g[2] * xi.xi3 +
                   g[3] * xi.xi4 + g[4] * xi.xi5;
  return (d + 1) * (d + 1) * s - xi.xi1;
}

double vr_combine(double v, double vstar, int R) {
  if (R < 1) throw std::invalid_argument("vr_combine: R >= 1 required");
  return v / R + (R - 1) * vstar / R;
}

double depolarized(double vstar, double p) {
  if (p < 0 || p > 1) throw std::invalid_argument("depolarized: p out of [0,1]");
  return (1 - p) * (1 - p) * vstar;
}

double v_haar_depolarized_fidelity(double d, double p) {
  if (p < 0 || p > 1) throw std::invalid_argument("p out of [0,1]");
  const double c = (d - 1) / d;
  return c * c * (-p * p + 4 * d * p / ((d - 1) * (d + 2)) +
                  (d * d - 3 * d - 2) / ((d - 1) * (d + 2))) +
         (d * d - 1) / (d * d);
}

double vstar_haar_depolarized_fidelity(double d, double p) {
  return depolarized(vstar_4design_fidelity(d), p);
}

double vstar_clifford_depolarized_fidelity(double d, double m2, double p) {
  return depolarized(vstar_clifford_fidelity(d, m2), p);
}

std::pair<double, double> ensemble_averages(double d, double purity,
                                            double norm_o2_squared) {
  if (purity < 1 / d - 1e-12 || purity > 1 + 1e-12)
    throw std::invalid_argument("ensemble_averages: purity out of [1/d, 1]");
  const double vbar = (1 + (d - purity) / (d * d - 1)) * norm_o2_squared;
  const double vsbar = (d * purity - 1) / (d * d - 1) * norm_o2_squared;
  return {vbar, vsbar};
}

std::pair<double, double> average_fidelity(double d) {
  return {2 * (d - 1) / (d + 2), 4 * (d - 1) / ((d + 2) * (d + 3))};
}

VarianceBreakdown variance_breakdown(const EnsembleSpec& spec, const Matrix& O,
                                     const Matrix& rho) {
  spec.validate();
  VarianceBreakdown out;
  out.v = v_single(O, rho);
  switch (spec.kind) {
    case EnsembleSpec::Kind::FourDesign:
      out.vstar = vstar_4design(O, rho);
      out.method = "4design-xi";
      break;
    case EnsembleSpec::Kind::Clifford:
      out.vstar = vstar_clifford(O, rho);
      out.method = "clifford-charfunc";
      break;
    case EnsembleSpec::Kind::Interleaved:
      out.vstar = vstar_ukl(O, rho, spec.k, spec.l);
      out.method = "g-path-ukl";
      break;
    case EnsembleSpec::Kind::SimpleT:
      out.vstar = vstar_tuk(O, rho, spec.k);
      out.method = "g-path-tuk";
      break;
  }
  return out;
}

VarianceBreakdown variance_breakdown_fidelity(const EnsembleSpec& spec,
                                              double m2) {
  spec.validate();
  const double d = static_cast<double>(1ull << spec.n);
  VarianceBreakdown out;
  out.v = v_fidelity(d, 1.0);
  switch (spec.kind) {
    case EnsembleSpec::Kind::FourDesign:
      out.vstar = vstar_4design_fidelity(d);
      out.method = "4design-fidelity";
      break;
    case EnsembleSpec::Kind::Clifford:
      out.vstar = vstar_clifford_fidelity(d, m2);
      out.method = "clifford-fidelity";
      break;
    case EnsembleSpec::Kind::Interleaved:
      out.vstar = vstar_ukl_fidelity(d, m2, spec.k, spec.l);
      out.method = "ukl-fidelity";
      break;
    case EnsembleSpec::Kind::SimpleT:
      out.vstar = vstar_tuk_fidelity(d, m2, spec.k);
      out.method = "tuk-fidelity";
      break;
  }
  return out;
}

}  // namespace shadow
