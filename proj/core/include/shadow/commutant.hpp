/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef SHADOW_COMMUTANT_HPP
#define SHADOW_COMMUTANT_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "shadow/variance.hpp"

namespace shadow {

// Dense operators on H^{x4} (16^n x 16^n): full Omega limited to n <= 2,
// individual R(T) and projectors to n <= 3 (4096^2 doubles, ~130 MB each).
inline constexpr int kMaxOmegaQubits = 2;
inline constexpr int kMaxBigRQubits = 3;

// A permutation of {1,2,3,4}, stored as images perm[i] = sigma(i+1) - 1.
using Perm4 = std::array<int, 4>;

// Subspace of Z_2^4 x Z_2^4 given by all 16 elements (x,y), packed as
// (x << 4) | y with copy 1 on the most significant bit of each nibble.
struct StochasticLagrangian {
  enum class Tag { Permutation, Coset };
  Tag tag = Tag::Permutation;
  Perm4 sigma{0, 1, 2, 3};  // defining permutation (coset: S~3 representative)
  std::array<std::uint8_t, 16> elements{};
  std::string label;
};

// The three defining conditions, checked by enumeration of the elements.
bool is_stochastic_lagrangian(const StochasticLagrangian& t);

// All 30 subspaces: the 24 permutation subspaces followed by the 6 cosets
// sigma T4 with sigma in {e,(12),(13),(23),(123),(132)}.
std::vector<StochasticLagrangian> sigma44_enumerate();

// r(T) = sum_{(x,y) in T} |x><y| on one qubit (16x16) and its qubit-wise
// n-fold version with copy-major bit layout matching U^{x4} built by kron.
Eigen::MatrixXd r_small(const StochasticLagrangian& t);
Eigen::MatrixXd big_r(const StochasticLagrangian& t, int n);

// Permutation operator R(sigma) in the same layout.
Eigen::MatrixXd perm_operator(const Perm4& sigma, int n);

// Orbit operators under G = {e,(12),(34),(12)(34)}; sizes (4,16,4,2,4).
std::array<Eigen::MatrixXd, 5> orbit_operators(int n);
std::array<int, 5> orbit_sizes();

struct ProjectorSet {
  // Young-diagram labels in fixed order: [4], [3,1], [2,2], [2,1,1], [1^4]
  std::array<Eigen::MatrixXd, 5> p_lambda;
  Eigen::MatrixXd p_g;        // average over G
  Eigen::MatrixXd p_css;      // P_n = R(T4)/d
  std::array<Eigen::MatrixXd, 3> p_lambda_g;       // [4], [3,1], [2,2] with G
  std::array<Eigen::MatrixXd, 3> p_lambda_g_plus;  // CSS part
  std::array<Eigen::MatrixXd, 3> p_lambda_g_minus;
};
ProjectorSet projectors(int n);

// Exact dimension table computed combinatorially from single-qubit traces:
// rows [4], [3,1], [2,2]; columns (D, D+, D-).
struct DimensionRow {
  double total = 0, plus = 0, minus = 0;
};
std::array<DimensionRow, 3> dimension_table(int n);
std::array<DimensionRow, 3> dimension_table_closed(int n);

struct GramSpectrum {
  Eigen::MatrixXd gram;  // 30x30, entries d^{dim(Ti cap Tj)}
  std::vector<double> eigenvalues;
  int rank = 0;
};
GramSpectrum gram_spectrum(int n);

struct KappaSet {
  double k4_plus = 0, k4_minus = 0;
  double k22_plus = 0, k22_minus = 0;
  double k31 = 0;
};

struct GiSet {
  GiVector g{};
  bool degenerate = false;  // n = 1: the orbit operators are dependent
  double residual = 0;
};

// Cross moment operator from an explicit unitary list (exact enumeration or
// Monte Carlo sample) in a given orthonormal measurement basis.
Matrix omega_from_unitaries(int n, const std::vector<Matrix>& unitaries,
                            const Matrix& basis);

// Ensemble sampling front end (uses the simulator's circuit sampler).
Matrix omega_empirical(const EnsembleSpec& spec, const Matrix& basis,
                       int num_samples, Rng& rng);

// Closed-form Omega in the computational basis.
Matrix omega_closed(const EnsembleSpec& spec);

KappaSet kappa_extract(const Matrix& omega, int n);
KappaSet kappa_closed(const EnsembleSpec& spec);
GiSet gi_fit(const Matrix& omega, int n);

// V_*(O, rho) = (d+1)^2 tr[Omega (O x rho)^{x2}] - (tr O rho)^2.
double vstar_via_omega(const Matrix& omega, const Matrix& O, const Matrix& rho);

// Lambda_1 = sum(|Xi_{psi,phi}|_2^2 + 2 Xi~.Xi), Lambda_2 with -Xi~.Xi,
// summed over ordered basis-state pairs.
std::pair<double, double> lambda12(int n, const Matrix& basis);

// Operand (O x rho)^{x2} in the copy-major layout.
Matrix operand4(const Matrix& O, const Matrix& rho);

}  // namespace shadow

#endif
