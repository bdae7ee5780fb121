/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef SHADOW_CHARFUNC_HPP
#define SHADOW_CHARFUNC_HPP

#include <vector>

#include "shadow/states.hpp"

namespace shadow {

// Full 4^n characteristic vectors are materialized up to this qubit count;
// product-form states go through the closed forms instead.
inline constexpr int kMaxCharQubits = 8;

// Xi(P) = tr(X P) over the 4^n Hermitian Paulis, indexed by the base-4
// convention of pauli_from_index.  Real for Hermitian inputs.
struct CharVector {
  int n = 0;
  Eigen::VectorXd values;

  double l2_squared() const { return values.squaredNorm(); }
  double l4_pow4() const;
  double linf() const { return values.cwiseAbs().maxCoeff(); }
};

CharVector char_vector(int n, const Matrix& op);
CharVector char_vector(const DenseState& s);

// Cross characteristic vector Xi_{rho,O}(P) = tr(rho P) tr(O P) and its
// twisted companion  Xi~_{rho,O}(P) = tr(rho P O P).
struct CrossCharPair {
  int n = 0;
  Eigen::VectorXd cross;
  Eigen::VectorXd twisted;

  double cross_l2_squared() const { return cross.squaredNorm(); }
  double dot() const { return twisted.dot(cross); }
};

CrossCharPair cross_chars(int n, const Matrix& rho, const Matrix& O);

double purity(const Matrix& rho);

// Stabilizer 2-Renyi entropy -log2(||Xi||_4^4 / (d * purity)).  For mixed
// states this is the formal extension used inside variance bounds only, not
// a certified magic monotone.
double sre2(const DenseState& s);
double sre2(int n, const Matrix& rho);

struct SreFamily {
  enum class Kind { W, WLinear, PhasedW, Snk };
  Kind kind;
  int n = 0;
  int k = 0;                   // Snk only
  double theta = 0;            // WLinear / Snk
  std::vector<double> thetas;  // PhasedW
};

double sre2_closed(const SreFamily& f);

// Sum of the d largest entries of the squared characteristic vector.
double top_d_sum(const CharVector& c);

// Walsh-Hadamard-type transform implementing
//   out[P] = (1/d) sum_Q (-1)^{<P,Q>} in[Q]
// with <P,Q> the Pauli commutation form; used for twisted cross chars and
// tr(OPOP) sums.
Eigen::VectorXd pauli_form_transform(int n, const Eigen::VectorXd& in);

}  // namespace shadow

#endif
