/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef SHADOW_STATES_HPP
#define SHADOW_STATES_HPP

#include <vector>

#include "shadow/circuit.hpp"
#include "shadow/clifford.hpp"

namespace shadow {

struct DenseState {
  int n = 0;
  Vector amps;

  bool normalized(double tol = 1e-10) const;
};

// Phased W state: (1/sqrt(n)) sum_j e^{i theta_j} X_j |0...0>.
DenseState w_state(int n, const std::vector<double>& thetas);
DenseState w_state(int n);

// |0>^(n-k) on the low qubits, [(|0> + e^{i theta}|1>)/sqrt(2)]^k on qubits
// n-k..n-1 (the same qubits that carry T gates in the interleaved ensembles).
DenseState snk_state(int n, int k, double theta);

Matrix density(const DenseState& s);

// O = |phi><phi| - 1/d, the traceless fidelity observable.
Matrix fidelity_observable(const DenseState& phi);

DenseState random_state(int n, Rng& rng);
Matrix random_haar_unitary(int dim, Rng& rng);
Matrix random_traceless_hermitian(int n, Rng& rng);  // normalized to ||O||_2 = 1
Matrix random_density(int n, Rng& rng);              // random mixed state

}  // namespace shadow

#endif
