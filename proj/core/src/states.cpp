/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "shadow/states.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace shadow {

bool DenseState::normalized(double tol) const {
  return std::abs(amps.norm() - 1.0) < tol;
}

DenseState w_state(int n, const std::vector<double>& thetas) {
  if (n < 1) throw std::invalid_argument("w_state: n must be positive");
  if (static_cast<int>(thetas.size()) != n)
    throw std::invalid_argument("w_state: wrong phase count");
  if (n > kMaxStatevectorQubits) throw std::invalid_argument("w_state: statevector cutoff");
  DenseState s;
  s.n = n;
  s.amps = Vector::Zero(1ll << n);
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j) s.amps[1ll << j] = std::polar(a, thetas[j]);
  return s;
}

DenseState w_state(int n) { return w_state(n, std::vector<double>(n, 0.0)); }

DenseState snk_state(int n, int k, double theta) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("snk_state: k out of range");
  if (n > kMaxStatevectorQubits) throw std::invalid_argument("snk_state: statevector cutoff");
  DenseState s;
  s.n = n;
  s.amps = Vector::Zero(1ll << n);
  const double a = std::pow(2.0, -0.5 * k);
  // phased qubits are n-k..n-1; low qubits stay |0>
  for (std::uint64_t m = 0; m < (1ull << k); ++m) {
    const std::uint64_t b = m << (n - k);
    s.amps[b] = std::polar(a, theta * std::popcount(m));
  }
  return s;
}

Matrix density(const DenseState& s) { return s.amps * s.amps.adjoint(); }

Matrix fidelity_observable(const DenseState& phi) {
  const auto d = phi.amps.size();
  return density(phi) - Matrix::Identity(d, d) / static_cast<double>(d);
}

DenseState random_state(int n, Rng& rng) {
  DenseState s;
  s.n = n;
  s.amps = Vector(1ll << n);
  std::normal_distribution<double> g;
  for (auto& a : s.amps) a = Complex(g(rng), g(rng));
  s.amps.normalize();
  return s;
}

Matrix random_haar_unitary(int dim, Rng& rng) {
  Matrix ginibre(dim, dim);
  std::normal_distribution<double> g;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) ginibre(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(ginibre);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phase ambiguity so the distribution is Haar
  for (int j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

Matrix random_traceless_hermitian(int n, Rng& rng) {
  const auto d = 1ll << n;
  Matrix m(d, d);
  std::normal_distribution<double> g;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  Matrix h = (m + m.adjoint()) / 2.0;
  h -= Matrix::Identity(d, d) * (h.trace() / static_cast<double>(d));
  h /= std::sqrt(h.squaredNorm());
  return h;
}

Matrix random_density(int n, Rng& rng) {
  const auto d = 1ll << n;
  Matrix m(d, d);
  std::normal_distribution<double> g;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  Matrix rho = m * m.adjoint();
  rho /= rho.trace();
  return rho;
}

}  // namespace shadow
