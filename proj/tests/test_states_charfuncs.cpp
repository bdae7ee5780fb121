/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <doctest.h>

#include <cmath>

#include "shadow/charfunc.hpp"
#include "shadow/states.hpp"

using namespace shadow;

TEST_CASE("w_state construction") {
  const auto w3 = w_state(3);
  CHECK(w3.normalized());
  const double a = 1.0 / std::sqrt(3.0);
  CHECK(std::abs(w3.amps[1] - a) < 1e-12);
  CHECK(std::abs(w3.amps[2] - a) < 1e-12);
  CHECK(std::abs(w3.amps[4] - a) < 1e-12);
  CHECK(std::abs(w3.amps[0]) < 1e-12);

  const auto w1 = w_state(1);
  CHECK(std::abs(w1.amps[1] - 1.0) < 1e-12);

  const double th = 0.37;
  const auto w2 = w_state(2, {th, 2 * th});
  CHECK(std::abs(w2.amps[1] - std::polar(1 / std::sqrt(2.0), th)) < 1e-12);
  CHECK(std::abs(w2.amps[2] - std::polar(1 / std::sqrt(2.0), 2 * th)) < 1e-12);
  CHECK_THROWS(w_state(2, {0.0}));
}

TEST_CASE("snk_state construction") {
  const auto s20 = snk_state(2, 0, 1.23);
  CHECK(std::abs(s20.amps[0] - 1.0) < 1e-12);

  const auto plus = snk_state(1, 1, 0.0);
  CHECK(std::abs(plus.amps[0] - 1 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(plus.amps[1] - 1 / std::sqrt(2.0)) < 1e-12);

  const double th = M_PI / 4;
  const auto s22 = snk_state(2, 2, th);
  for (int b = 0; b < 4; ++b) {
    const int w = __builtin_popcount(b);
    CHECK(std::abs(s22.amps[b] - std::polar(0.5, w * th)) < 1e-12);
  }
  CHECK_THROWS(snk_state(2, 3, 0.0));
}

TEST_CASE("char_vector basics") {
  const auto zero = snk_state(1, 0, 0);
  const auto c0 = char_vector(zero);
  CHECK(c0.values[0] == doctest::Approx(1.0));   // I
  CHECK(c0.values[1] == doctest::Approx(0.0));   // X
  CHECK(c0.values[2] == doctest::Approx(1.0));   // Z
  CHECK(c0.values[3] == doctest::Approx(0.0));   // Y

  const auto plus = snk_state(1, 1, 0);
  const auto cp = char_vector(plus);
  CHECK(cp.values[0] == doctest::Approx(1.0));
  CHECK(cp.values[1] == doctest::Approx(1.0));
  CHECK(cp.values[2] == doctest::Approx(0.0));
  CHECK(cp.values[3] == doctest::Approx(0.0));

  const Matrix O = fidelity_observable(zero);
  const auto co = char_vector(1, O);
  CHECK(co.values[0] == doctest::Approx(0.0));
  CHECK(co.values[2] == doctest::Approx(1.0));
}

TEST_CASE("char vector norms: purity and state/operator agreement") {
  Rng rng(3);
  for (int n = 1; n <= 3; ++n) {
    const double d = 1 << n;
    const auto psi = random_state(n, rng);
    const auto cs = char_vector(psi);
    CHECK(cs.l2_squared() == doctest::Approx(d).epsilon(1e-8));
    const auto cd = char_vector(n, density(psi));
    CHECK((cs.values - cd.values).cwiseAbs().maxCoeff() < 1e-10);

    const Matrix rho = random_density(n, rng);
    const auto cr = char_vector(n, rho);
    CHECK(cr.l2_squared() == doctest::Approx(d * purity(rho)).epsilon(1e-8));
    CHECK(cr.values[0] == doctest::Approx(1.0));
  }
}

TEST_CASE("twisted cross char matches dense oracle") {
  Rng rng(17);
  for (int n = 1; n <= 2; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      const Matrix rho = random_density(n, rng);
      const Matrix O = random_traceless_hermitian(n, rng);
      const auto pair = cross_chars(n, rho, O);
      for (std::uint64_t idx = 0; idx < (1ull << (2 * n)); ++idx) {
        const Matrix pm = pauli_matrix(pauli_from_index(n, idx));
        const double direct = (rho * pm * O * pm).trace().real();
        CHECK(pair.twisted[idx] == doctest::Approx(direct).epsilon(1e-9));
        const double cross = (rho * pm).trace().real() * (O * pm).trace().real();
        CHECK(pair.cross[idx] == doctest::Approx(cross).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("cross char norm equality and inner product bound") {
  Rng rng(23);
  for (int n = 1; n <= 3; ++n) {
    for (int rep = 0; rep < 67; ++rep) {
      const Matrix rho = random_density(n, rng);
      const Matrix O = random_traceless_hermitian(n, rng);
      const auto pair = cross_chars(n, rho, O);
      CHECK(pair.twisted.squaredNorm() ==
            doctest::Approx(pair.cross.squaredNorm()).epsilon(1e-8));
      CHECK(std::abs(pair.dot()) <= pair.cross_l2_squared() + 1e-8);
      // norm chain: ||Xi_{rho,O}||_2^2 <= ||Xi_O^2||_[d] <= d ||O||_2^2
      const auto co = char_vector(n, O);
      const double d = 1 << n;
      const double o2 = O.squaredNorm();
      CHECK(pair.cross_l2_squared() <= top_d_sum(co) + 1e-8);
      CHECK(top_d_sum(co) <= d * o2 + 1e-8);
    }
  }
}

TEST_CASE("fidelity-observable cross char identities") {
  Rng rng(29);
  for (int n = 1; n <= 3; ++n) {
    const auto phi = random_state(n, rng);
    const Matrix rho = random_density(n, rng);
    const Matrix O = fidelity_observable(phi);
    const double d = 1 << n;
    const double F = (phi.amps.adjoint() * rho * phi.amps)(0).real();
    const auto pr_O = cross_chars(n, rho, O);
    const auto pr_phi = cross_chars(n, rho, density(phi));
    CHECK(pr_O.cross_l2_squared() ==
          doctest::Approx(pr_phi.cross_l2_squared() - 1.0).epsilon(1e-8));
    CHECK(pr_O.dot() == doctest::Approx(pr_phi.dot() - 2 * F + 1 / d).epsilon(1e-8));
    // ideal case rho = O = phi
    const auto ideal = cross_chars(n, density(phi), density(phi));
    const double m2 = sre2(phi);
    CHECK(ideal.dot() == doctest::Approx(ideal.cross_l2_squared()).epsilon(1e-8));
    CHECK(ideal.cross_l2_squared() ==
          doctest::Approx(std::exp2(-m2) * d).epsilon(1e-8));
  }
}

TEST_CASE("sre2 reference values") {
  CHECK(sre2(snk_state(3, 0, 0)) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(sre2(w_state(3)) == doctest::Approx(std::log2(27.0 / 15.0)).epsilon(1e-9));
  CHECK(sre2(snk_state(1, 1, M_PI / 4)) ==
        doctest::Approx(std::log2(4.0 / 3.0)).epsilon(1e-9));
}

TEST_CASE("sre2_closed reference values") {
  CHECK(sre2_closed({SreFamily::Kind::W, 10}) ==
        doctest::Approx(std::log2(1000.0 / 64.0)).epsilon(1e-12));
  SreFamily snk{SreFamily::Kind::Snk, 20};
  snk.k = 2;
  snk.theta = M_PI / 4;
  CHECK(sre2_closed(snk) == doctest::Approx(2 * std::log2(4.0 / 3.0)).epsilon(1e-12));
  SreFamily pw{SreFamily::Kind::PhasedW, 4};
  pw.thetas = {0, M_PI / 4, 0, M_PI / 4};  // sum of e^{4 i theta} vanishes
  CHECK(sre2_closed(pw) == doctest::Approx(std::log2(256.0 / 72.0)).epsilon(1e-12));
}

TEST_CASE("sre2_closed agrees with direct sre2 on all families") {
  for (int n = 2; n <= 6; ++n) {
    for (int t = 0; t < 10; ++t) {
      const double theta = t * M_PI / 9.0;
      // plain W
      CHECK(sre2(w_state(n)) ==
            doctest::Approx(sre2_closed({SreFamily::Kind::W, n})).epsilon(1e-9));
      // linear-phase W, theta_j = j*theta
      std::vector<double> lin(n);
      for (int j = 0; j < n; ++j) lin[j] = (j + 1) * theta;
      SreFamily wl{SreFamily::Kind::WLinear, n};
      wl.theta = theta;
      CHECK(sre2(w_state(n, lin)) == doctest::Approx(sre2_closed(wl)).epsilon(1e-9));
      // random-phase W
      Rng rng(100 * n + t);
      std::uniform_real_distribution<double> u(0, 2 * M_PI);
      std::vector<double> ths(n);
      for (auto& x : ths) x = u(rng);
      SreFamily pw{SreFamily::Kind::PhasedW, n};
      pw.thetas = ths;
      const double m2 = sre2(w_state(n, ths));
      CHECK(m2 == doctest::Approx(sre2_closed(pw)).epsilon(1e-9));
      // phased-W family bounds
      const double nn = n;
      CHECK(m2 >= std::log2(nn * nn * nn / (7 * nn - 6)) - 1e-9);
      CHECK(m2 <= std::log2(nn * nn * nn / (6 * (nn - 1))) + 1e-9);
      // S_{n,k}
      for (int k = 0; k <= n; ++k) {
        SreFamily sf{SreFamily::Kind::Snk, n};
        sf.k = k;
        sf.theta = theta;
        CHECK(sre2(snk_state(n, k, theta)) ==
              doctest::Approx(sre2_closed(sf)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("top_d_sum") {
  // stabilizer pure state: d entries +-1
  const auto cp = char_vector(snk_state(2, 0, 0));
  CHECK(top_d_sum(cp) == doctest::Approx(4.0));
  // O = Z at n=1: squared vector has a single entry 4
  const PauliString z(1, 0, 1);
  const auto cz = char_vector(1, pauli_matrix(z));
  CHECK(top_d_sum(cz) == doctest::Approx(4.0));
  // random state vs sort-and-sum oracle
  Rng rng(41);
  const auto psi = random_state(2, rng);
  const auto c = char_vector(psi);
  std::vector<double> sq;
  for (int i = 0; i < c.values.size(); ++i) sq.push_back(c.values[i] * c.values[i]);
  std::sort(sq.rbegin(), sq.rend());
  CHECK(top_d_sum(c) == doctest::Approx(sq[0] + sq[1] + sq[2] + sq[3]).epsilon(1e-12));
}

TEST_CASE("sre2 rejects non-states") {
  Rng rng(5);
  const Matrix notpsd = random_traceless_hermitian(1, rng) + Matrix::Identity(2, 2) * 0.5;
  CHECK_THROWS(sre2(1, notpsd - Matrix::Identity(2, 2) * 0.2));
}
