/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef SHADOW_VARIANCE_HPP
#define SHADOW_VARIANCE_HPP

#include <array>
#include <string>
#include <utility>

#include "shadow/charfunc.hpp"

namespace shadow {

// xi traces beyond this qubit count are refused; fidelity closed forms cover
// larger systems.
inline constexpr int kMaxXiQubits = 6;

struct EnsembleSpec {
  enum class Kind { FourDesign, Clifford, Interleaved, SimpleT };
  Kind kind = Kind::Clifford;
  int n = 1;
  int k = 0;  // T gates per layer (Interleaved) / total T count (SimpleT)
  int l = 0;  // layer count (Interleaved)

  void validate() const;
};

struct VarianceBreakdown {
  double v = 0;
  double vstar = 0;
  std::string method;
};

struct XiTraces {
  double xi1 = 0, xi2 = 0, xi3 = 0, xi4 = 0, xi5 = 0;
};

struct AlphaBeta {
  double alpha = 0;
  double beta = 0;
  static constexpr double gamma = 0.75;
  static constexpr double nu = 0.5;
};

// Interleaving parameters alpha_k, beta_k; beta at d=2 is only defined for
// k = 1 (taken as the d->2 limit of the closed form).
AlphaBeta alpha_beta(double d, int k);

// Single-shot variance V(O, rho) of the snapshot estimator and its fidelity
// specialization V(O, phi) as a function of F = <phi|rho|phi>.
double v_single(const Matrix& O, const Matrix& rho);
double v_fidelity(double d, double F);

// Reuse-overhead variance V_* for a unitary 4-design.
double vstar_4design(const Matrix& O, const Matrix& rho);
double vstar_4design_fidelity(double d);

// V_triangle: the characteristic-vector bound that brackets V_*(Cl_n).
double v_triangle(const Matrix& O, const Matrix& rho);
double v_triangle_fidelity(double d, double m2);

// V_* for uniformly random Clifford circuits.
double vstar_clifford(const Matrix& O, const Matrix& rho);
double vstar_clifford_fidelity(double d, double m2);

// V_* for the interleaved ensemble (l layers of k T gates between Cliffords)
// and for a single fixed (HT)^{x k} layer before a random Clifford.
double vstar_ukl(const Matrix& O, const Matrix& rho, int k, int l);
double vstar_ukl_fidelity(double d, double m2, int k, int l);
double vstar_tuk(const Matrix& O, const Matrix& rho, int k);
double vstar_tuk_fidelity(double d, double m2, int k);

// Contractions xi_i of the five orbit operators with (O x rho)^{x2}.
XiTraces xi_traces(const Matrix& O, const Matrix& rho);
XiTraces xi_fidelity_closed(double d, double m2);

// V_* = (d+1)^2 sum_i g_i xi_i - xi_1 for an ensemble with orbit-operator
// coefficients g.
using GiVector = std::array<double, 5>;
GiVector gi_haar(double d);
GiVector gi_clifford(double d);
GiVector gi_ukl(double d, int k, int l);
GiVector gi_tuk(double d, int k);
double vstar_from_gi(const GiVector& g, const XiTraces& xi, double d);

// V_R = V/R + (R-1) V_*/R.
double vr_combine(double v, double vstar, int R);

// Depolarizing-noise variants: V_* picks up a (1-p)^2 factor; the fidelity V
// under global depolarizing noise is a quadratic in p.
double depolarized(double vstar, double p);
double v_haar_depolarized_fidelity(double d, double p);
double vstar_haar_depolarized_fidelity(double d, double p);
double vstar_clifford_depolarized_fidelity(double d, double m2, double p);

// Averages over Haar-random states / observables: returns (Vbar, Vbar_*).
std::pair<double, double> ensemble_averages(double d, double purity,
                                            double norm_o2_squared);
std::pair<double, double> average_fidelity(double d);

// Dispatch over EnsembleSpec: V is design-independent, V_* switches on kind.
VarianceBreakdown variance_breakdown(const EnsembleSpec& spec, const Matrix& O,
                                     const Matrix& rho);
VarianceBreakdown variance_breakdown_fidelity(const EnsembleSpec& spec,
                                              double m2);

}  // namespace shadow

#endif
