/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "shadow/charfunc.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "shadow/pauli.hpp"

namespace shadow {

namespace {

void check_char_cutoff(int n) {
  if (n < 1 || n > kMaxCharQubits)
    throw std::invalid_argument("char cutoff exceeded (n <= 8 for full 4^n vectors)");
}

// Real value of tr(op * P) for Hermitian op and Hermitian Pauli P; O(d).
double pauli_trace(const Matrix& op, const PauliString& p) {
  static const Complex kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Complex acc = 0;
  const std::uint64_t dim = 1ull << p.n;
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double sgn = (std::popcount(p.z_mask & b) & 1) ? -1.0 : 1.0;
    acc += op(b, b ^ p.x_mask) * sgn;
  }
  return (kI[p.phase_exponent] * acc).real();
}

}  // namespace

double CharVector::l4_pow4() const { return values.array().square().square().sum(); }

CharVector char_vector(int n, const Matrix& op) {
  check_char_cutoff(n);
  if (op.rows() != (1ll << n) || op.cols() != (1ll << n))
    throw std::invalid_argument("char_vector: dimension mismatch");
  CharVector c;
  c.n = n;
  c.values.resize(1ll << (2 * n));
  for (std::uint64_t idx = 0; idx < (1ull << (2 * n)); ++idx)
    c.values[idx] = pauli_trace(op, pauli_from_index(n, idx));
  return c;
}

CharVector char_vector(const DenseState& s) {
  check_char_cutoff(s.n);
  CharVector c;
  c.n = s.n;
  c.values.resize(1ll << (2 * s.n));
  static const Complex kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::uint64_t dim = 1ull << s.n;
  for (std::uint64_t idx = 0; idx < (1ull << (2 * s.n)); ++idx) {
    const PauliString p = pauli_from_index(s.n, idx);
    Complex acc = 0;
    for (std::uint64_t b = 0; b < dim; ++b) {
      const double sgn = (std::popcount(p.z_mask & b) & 1) ? -1.0 : 1.0;
      acc += std::conj(s.amps[b ^ p.x_mask]) * s.amps[b] * sgn;
    }
    c.values[idx] = (kI[p.phase_exponent] * acc).real();
  }
  return c;
}

Eigen::VectorXd pauli_form_transform(int n, const Eigen::VectorXd& in) {
  const std::uint64_t size = 1ull << (2 * n);
  if (static_cast<std::uint64_t>(in.size()) != size)
    throw std::invalid_argument("pauli_form_transform: size mismatch");
  // <P,Q> = popcount(idxP & swap_pairs(idxQ)) mod 2, so permute the input by
  // the pair swap and run a standard Walsh-Hadamard transform.
  constexpr std::uint64_t kEven = 0x5555555555555555ull;
  Eigen::VectorXd f(size);
  for (std::uint64_t q = 0; q < size; ++q) {
    const std::uint64_t swapped = ((q & kEven) << 1) | ((q >> 1) & kEven);
    f[q] = in[swapped];
  }
  for (std::uint64_t h = 1; h < size; h <<= 1) {
    for (std::uint64_t i = 0; i < size; i += h << 1) {
      for (std::uint64_t j = i; j < i + h; ++j) {
        const double a = f[j], b = f[j + h];
        f[j] = a + b;
        f[j + h] = a - b;
      }
    }
  }
  return f / static_cast<double>(1ull << n);
}

CrossCharPair cross_chars(int n, const Matrix& rho, const Matrix& O) {
  check_char_cutoff(n);
  if (rho.rows() != O.rows() || rho.rows() != (1ll << n))
    throw std::invalid_argument("cross_chars: dimension mismatch");
  const CharVector xr = char_vector(n, rho);
  const CharVector xo = char_vector(n, O);
  CrossCharPair out;
  out.n = n;
  out.cross = xr.values.cwiseProduct(xo.values);
  // tr(rho P O P) = (1/d) sum_Q (-1)^{<P,Q>} tr(rho Q) tr(O Q)
  out.twisted = pauli_form_transform(n, out.cross);
  return out;
}

double purity(const Matrix& rho) { return rho.squaredNorm(); }

double sre2(int n, const Matrix& rho) {
  if (std::abs(rho.trace().real() - 1.0) > 1e-8 || std::abs(rho.trace().imag()) > 1e-8)
    throw std::invalid_argument("sre2: input is not trace one");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8)
    throw std::invalid_argument("sre2: input is not positive semidefinite");
  const CharVector c = char_vector(n, rho);
  const double d = static_cast<double>(1ll << n);
  return -std::log2(c.l4_pow4() / (d * purity(rho)));
}

double sre2(const DenseState& s) {
  if (!s.normalized()) throw std::invalid_argument("sre2: state not normalized");
  const CharVector c = char_vector(s);
  const double d = static_cast<double>(1ll << s.n);
  return -std::log2(c.l4_pow4() / d);
}

double sre2_closed(const SreFamily& f) {
  if (f.n < 1) throw std::invalid_argument("sre2_closed: n must be positive");
  const double n = f.n;
  switch (f.kind) {
    case SreFamily::Kind::W:
      if (f.n < 2) return 0.0;  // |W_1> is a basis state
      return std::log2(n * n * n / (7 * n - 6));
    case SreFamily::Kind::WLinear: {
      if (f.n < 2) return 0.0;
      const double s2 = std::sin(2 * f.theta);
      // removable singularity at theta -> multiples of pi/2
      const double ratio = (std::abs(s2) < 1e-9)
                               ? n * n
                               : std::pow(std::sin(2 * n * f.theta) / s2, 2.0);
      return std::log2(n * n * n * n / (6 * n * n - 6 * n + ratio));
    }
    case SreFamily::Kind::PhasedW: {
      if (static_cast<int>(f.thetas.size()) != f.n)
        throw std::invalid_argument("sre2_closed: wrong phase count");
      if (f.n < 2) return 0.0;
      Complex s = 0;
      for (double t : f.thetas) s += std::polar(1.0, 4 * t);
      return std::log2(n * n * n * n / (6 * n * (n - 1) + std::norm(s)));
    }
    case SreFamily::Kind::Snk:
      if (f.k < 0 || f.k > f.n) throw std::invalid_argument("sre2_closed: k out of range");
      return -f.k * std::log2((std::cos(4 * f.theta) + 7) / 8);
  }
  throw std::logic_error("sre2_closed: unknown family");
}

double top_d_sum(const CharVector& c) {
  Eigen::VectorXd sq = c.values.array().square();
  std::vector<double> v(sq.data(), sq.data() + sq.size());
  const std::size_t d = 1ull << c.n;
  std::nth_element(v.begin(), v.begin() + d, v.end(), std::greater<double>());
  double sum = 0;
  for (std::size_t i = 0; i < d; ++i) sum += v[i];
  return sum;
}

}  // namespace shadow
