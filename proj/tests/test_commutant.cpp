/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <doctest.h>

#include <cmath>
#include <set>

#include "shadow/commutant.hpp"
#include "shadow/simulate.hpp"

using namespace shadow;

namespace {

EnsembleSpec make(EnsembleSpec::Kind kind, int n, int k = 0, int l = 0) {
  EnsembleSpec s;
  s.kind = kind;
  s.n = n;
  s.k = k;
  s.l = l;
  return s;
}

// Dense unitaries of the full Clifford group on n qubits.
std::vector<Matrix> clifford_unitaries(int n) {
  const std::uint64_t count = clifford_group_order(n);
  std::vector<Matrix> us;
  us.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i)
    us.push_back(dense_unitary(clifford_to_circuit(clifford_from_index(n, i))));
  return us;
}

const std::vector<Matrix>& cl2_unitaries() {
  static const std::vector<Matrix> us = clifford_unitaries(2);
  return us;
}

// Partial trace over copy 4 (the least significant n-qubit block).
Matrix trace_out_copy4(const Matrix& omega, int n) {
  const std::int64_t d = 1ll << n;
  const std::int64_t d3 = d * d * d;
  Matrix out = Matrix::Zero(d3, d3);
  for (std::int64_t r = 0; r < d3; ++r)
    for (std::int64_t c = 0; c < d3; ++c)
      for (std::int64_t b = 0; b < d; ++b) out(r, c) += omega(r * d + b, c * d + b);
  return out;
}

// (1 + SWAP_{12}) x 1_3 on three copies.
Matrix one_plus_swap12(int n) {
  const std::int64_t d = 1ll << n;
  const std::int64_t d3 = d * d * d;
  Matrix out = Matrix::Zero(d3, d3);
  for (std::int64_t i = 0; i < d; ++i)
    for (std::int64_t j = 0; j < d; ++j)
      for (std::int64_t k = 0; k < d; ++k) {
        out((i * d + j) * d + k, (i * d + j) * d + k) += 1.0;
        out((i * d + j) * d + k, (j * d + i) * d + k) += 1.0;
      }
  return out;
}

Matrix fourth_power(const Matrix& u) { return kron(kron(kron(u, u), u), u); }

}  // namespace

TEST_CASE("the 30 subspaces satisfy the defining conditions") {
  const auto subs = sigma44_enumerate();
  REQUIRE(subs.size() == 30);
  std::set<std::array<std::uint8_t, 16>> distinct;
  int perms = 0, cosets = 0;
  for (const auto& t : subs) {
    CHECK(is_stochastic_lagrangian(t));
    distinct.insert(t.elements);
    (t.tag == StochasticLagrangian::Tag::Permutation ? perms : cosets) += 1;
  }
  CHECK(distinct.size() == 30);
  CHECK(perms == 24);
  CHECK(cosets == 6);

  // breaking the weight condition must be detected
  StochasticLagrangian bad = subs[0];
  for (auto& e : bad.elements) e = static_cast<std::uint8_t>((e & 0xF0) | ((e & 0x0F) ^ 1));
  CHECK(!is_stochastic_lagrangian(bad));
}

TEST_CASE("r(T) basics: identity, transpose, permutation traces") {
  const auto subs = sigma44_enumerate();
  CHECK(r_small(subs[0]).isApprox(Eigen::MatrixXd::Identity(16, 16)));

  for (const auto& t : subs) {
    if (t.tag != StochasticLagrangian::Tag::Permutation) continue;
    // r(sigma)^T = r(sigma^{-1})
    Perm4 inv;
    for (int i = 0; i < 4; ++i) inv[t.sigma[i]] = i;
    CHECK(r_small(t).transpose().isApprox(perm_operator(inv, 1)));
    // tr R(sigma) = d^{#cycles}
    std::array<bool, 4> seen{};
    int cycles = 0;
    for (int i = 0; i < 4; ++i) {
      if (seen[i]) continue;
      ++cycles;
      for (int j = i; !seen[j]; j = t.sigma[j]) seen[j] = true;
    }
    for (int n = 1; n <= 2; ++n)
      CHECK(big_r(t, n).trace() == doctest::Approx(std::pow(1 << n, cycles)));
  }
}

TEST_CASE("R(T4) is the Pauli fourth-moment sum and cosets have the right traces") {
  // n = 1: R(T4) = (1/d) sum_P P^{x4}
  Matrix pauli_sum = Matrix::Zero(16, 16);
  for (int idx = 0; idx < 4; ++idx)
    pauli_sum += fourth_power(
        pauli_matrix(PauliString(1, idx & 1, idx >> 1, 0)));
  const auto subs = sigma44_enumerate();
  std::map<std::string, double> coset_trace;
  for (const auto& t : subs) {
    if (t.tag != StochasticLagrangian::Tag::Coset) continue;
    coset_trace[t.label] = big_r(t, 1).trace();
    if (t.sigma == Perm4{0, 1, 2, 3})
      CHECK((big_r(t, 1).cast<Complex>() - pauli_sum / 2.0).norm() < 1e-12);
  }
  CHECK(coset_trace.at("coset(1234)") == doctest::Approx(8));
  CHECK(coset_trace.at("coset(2134)") == doctest::Approx(4));
  CHECK(coset_trace.at("coset(3214)") == doctest::Approx(4));
  CHECK(coset_trace.at("coset(1324)") == doctest::Approx(4));
  CHECK(coset_trace.at("coset(2314)") == doctest::Approx(2));
  CHECK(coset_trace.at("coset(3124)") == doctest::Approx(2));
}

TEST_CASE("every R(T) commutes with U^{x4} for Clifford U") {
  Rng rng(11);
  for (int n = 1; n <= 2; ++n) {
    std::vector<Matrix> us;
    for (int i = 0; i < 5; ++i)
      us.push_back(dense_unitary(clifford_to_circuit(random_clifford(n, rng))));
    for (const auto& t : sigma44_enumerate()) {
      const Matrix r = big_r(t, n).cast<Complex>();
      for (const auto& u : us) {
        const Matrix u4 = fourth_power(u);
        CHECK((r * u4 - u4 * r).norm() < 1e-9);
      }
    }
  }
}

TEST_CASE("orbit operators: sizes and trace values") {
  const auto sizes = orbit_sizes();
  CHECK(sizes == std::array<int, 5>{4, 16, 4, 2, 4});
  for (int n = 1; n <= 2; ++n) {
    const double d = 1 << n;
    const auto r = orbit_operators(n);
    for (int i = 0; i < 5; ++i)
      CHECK(r[i].sum() == doctest::Approx(sizes[i] * std::pow(16.0, n)));
    CHECK(r[0].trace() == doctest::Approx(d * d * d * d + 2 * d * d * d + d * d));
    CHECK(r[1].trace() == doctest::Approx(4 * d * d * d + 8 * d * d + 4 * d));
    CHECK(r[2].trace() == doctest::Approx(2 * d * d + 2 * d));
    CHECK(r[3].trace() == doctest::Approx(d * d * d + d * d));
    CHECK(r[4].trace() == doctest::Approx(2 * d * d + 2 * d));
  }
}

TEST_CASE("projector algebra") {
  for (int n = 1; n <= 2; ++n) {
    const auto ps = projectors(n);
    const std::int64_t size = 1ll << (4 * n);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(size, size);
    for (int a = 0; a < 5; ++a) {
      CHECK((ps.p_lambda[a] * ps.p_lambda[a] - ps.p_lambda[a]).norm() < 1e-9);
      for (int b = a + 1; b < 5; ++b)
        CHECK((ps.p_lambda[a] * ps.p_lambda[b]).norm() < 1e-9);
      sum += ps.p_lambda[a];
    }
    CHECK((sum - Eigen::MatrixXd::Identity(size, size)).norm() < 1e-9);
    CHECK((ps.p_g * ps.p_g - ps.p_g).norm() < 1e-9);
    CHECK((ps.p_css * ps.p_css - ps.p_css).norm() < 1e-9);
    for (int i = 0; i < 3; ++i) {
      const auto& p = ps.p_lambda_g[i];
      CHECK((p * p - p).norm() < 1e-9);
      // the CSS projector commutes with every symmetry projector
      CHECK((p * ps.p_css - ps.p_css * p).norm() < 1e-9);
      const auto& pp = ps.p_lambda_g_plus[i];
      const auto& pm = ps.p_lambda_g_minus[i];
      CHECK((pp * pp - pp).norm() < 1e-9);
      CHECK((pm * pm - pm).norm() < 1e-9);
      CHECK((pp * pm).norm() < 1e-9);
    }
  }
}

TEST_CASE("projectors expand in the orbit operators") {
  for (int n = 1; n <= 2; ++n) {
    const double d = 1 << n;
    const auto ps = projectors(n);
    const auto r = orbit_operators(n);
    CHECK((ps.p_lambda_g[0] - (r[0] + r[1] + r[2]) / 24).norm() < 1e-9);
    CHECK((ps.p_lambda_g_plus[0] - (r[3] + r[4]) / (6 * d)).norm() < 1e-9);
    CHECK((ps.p_lambda_g[2] - (2 * r[0] - r[1] + 2 * r[2]) / 24).norm() < 1e-9);
    CHECK((ps.p_lambda_g_plus[2] - (2 * r[3] - r[4]) / (6 * d)).norm() < 1e-9);
    CHECK((ps.p_lambda_g[1] - (r[0] - r[2]) / 8).norm() < 1e-9);
    CHECK(ps.p_lambda_g_plus[1].norm() < 1e-9);
  }
  // single-qubit linear dependence among the orbit operators
  const auto r1 = orbit_operators(1);
  CHECK((2 * r1[0] - r1[1] + 2 * r1[2] - (4 * r1[3] - 2 * r1[4])).norm() < 1e-10);
  const auto r2 = orbit_operators(2);
  CHECK((2 * r2[0] - r2[1] + 2 * r2[2] - (4 * r2[3] - 2 * r2[4])).norm() > 1.0);
}

TEST_CASE("dimension table matches the closed forms for n <= 3") {
  for (int n = 1; n <= 3; ++n) {
    const auto dt = dimension_table(n);
    const auto cl = dimension_table_closed(n);
    for (int i = 0; i < 3; ++i) {
      CHECK(dt[i].total == doctest::Approx(cl[i].total).epsilon(1e-9));
      CHECK(dt[i].plus == doctest::Approx(cl[i].plus).epsilon(1e-9));
      CHECK(dt[i].minus == doctest::Approx(cl[i].minus).epsilon(1e-9));
    }
  }
  // and against the dense projector traces where those fit in memory
  for (int n = 1; n <= 2; ++n) {
    const auto dt = dimension_table(n);
    const auto ps = projectors(n);
    for (int i = 0; i < 3; ++i) {
      CHECK(ps.p_lambda_g[i].trace() == doctest::Approx(dt[i].total).epsilon(1e-9));
      CHECK(ps.p_lambda_g_plus[i].trace() == doctest::Approx(dt[i].plus).epsilon(1e-9));
    }
  }
}

TEST_CASE("Gram matrix spectrum, multiplicities and ranks") {
  const int expected_rank[4] = {0, 15, 29, 30};
  for (int n = 1; n <= 3; ++n) {
    const double d = 1 << n;
    const auto gs = gram_spectrum(n);
    CHECK(gs.rank == expected_rank[n]);
    std::vector<double> expect;
    expect.push_back(d * (d - 1) * (d - 2) * (d - 4));
    expect.push_back(d * (d + 1) * (d + 2) * (d + 4));
    for (int i = 0; i < 14; ++i) expect.push_back(d * (d * d - 1) * (d - 2));
    for (int i = 0; i < 14; ++i) expect.push_back(d * (d * d - 1) * (d + 2));
    std::sort(expect.begin(), expect.end());
    std::vector<double> got = gs.eigenvalues;
    std::sort(got.begin(), got.end());
    REQUIRE(got.size() == 30);
    for (int i = 0; i < 30; ++i)
      CHECK(got[i] == doctest::Approx(expect[i]).epsilon(1e-8));
  }
}

TEST_CASE("orbit-operator contractions reproduce the xi traces") {
  Rng rng(5);
  for (int n = 1; n <= 2; ++n) {
    const auto r = orbit_operators(n);
    for (int rep = 0; rep < 3; ++rep) {
      const Matrix O = random_traceless_hermitian(n, rng);
      const Matrix rho = random_density(n, rng);
      const Matrix op = operand4(O, rho);
      const XiTraces xi = xi_traces(O, rho);
      const double got[5] = {
          (r[0].cast<Complex>() * op).trace().real(),
          (r[1].cast<Complex>() * op).trace().real(),
          (r[2].cast<Complex>() * op).trace().real(),
          (r[3].cast<Complex>() * op).trace().real(),
          (r[4].cast<Complex>() * op).trace().real()};
      CHECK(got[0] == doctest::Approx(xi.xi1).epsilon(1e-9));
      CHECK(got[1] == doctest::Approx(xi.xi2).epsilon(1e-9));
      CHECK(got[2] == doctest::Approx(xi.xi3).epsilon(1e-9));
      CHECK(got[3] == doctest::Approx(xi.xi4).epsilon(1e-9));
      CHECK(got[4] == doctest::Approx(xi.xi5).epsilon(1e-9));
    }
  }
}

TEST_CASE("single-qubit Clifford cross moment is (R1 + R4)/12") {
  Rng rng(0);
  const Matrix basis = Matrix::Identity(2, 2);
  const Matrix omega =
      omega_from_unitaries(1, clifford_unitaries(1), basis);
  const auto r = orbit_operators(1);
  CHECK((omega - ((r[0] + r[3]) / 12).cast<Complex>()).norm() < 1e-12);
  CHECK((omega - omega_closed(make(EnsembleSpec::Kind::Clifford, 1))).norm() < 1e-12);
  CHECK(omega.trace().real() == doctest::Approx(4.0));
}

TEST_CASE("two-qubit Clifford cross moment: enumeration equals closed form") {
  const Matrix basis = Matrix::Identity(4, 4);
  const Matrix omega = omega_from_unitaries(2, cl2_unitaries(), basis);
  const Matrix closed = omega_closed(make(EnsembleSpec::Kind::Clifford, 2));
  CHECK((omega - closed).norm() < 1e-10);
  CHECK(omega.trace().real() == doctest::Approx(16.0));

  const KappaSet k = kappa_extract(omega, 2);
  CHECK(k.k4_plus == doctest::Approx(2.0 / 5).epsilon(1e-10));
  CHECK(k.k22_plus == doctest::Approx(2.0 / 5).epsilon(1e-10));
  CHECK(k.k4_minus == doctest::Approx(4.0 / 30).epsilon(1e-10));
  CHECK(k.k22_minus == doctest::Approx(4.0 / 30).epsilon(1e-10));
  CHECK(k.k31 == doctest::Approx(4.0 / 30).epsilon(1e-10));
}

TEST_CASE("fixed-T and interleaved cross moments: enumeration equals closed form") {
  // n = 1, one (HT) suffix on the lone qubit
  GateSequence w1;
  w1.n = 1;
  w1.gates = {{GateKind::T, 0, -1}, {GateKind::H, 0, -1}};
  const Matrix wu1 = dense_unitary(w1);
  std::vector<Matrix> tus;
  for (const auto& c : clifford_unitaries(1)) tus.push_back(wu1 * c);
  const Matrix omega_t1 = omega_from_unitaries(1, tus, Matrix::Identity(2, 2));
  CHECK((omega_t1 - omega_closed(make(EnsembleSpec::Kind::SimpleT, 1, 1))).norm() < 1e-12);

  // n = 1, U_{1,1}: C1 T C0 over the full Clifford group twice
  GateSequence tg;
  tg.n = 1;
  tg.gates = {{GateKind::T, 0, -1}};
  const Matrix tu = dense_unitary(tg);
  std::vector<Matrix> ius;
  const auto cl1 = clifford_unitaries(1);
  for (const auto& c0 : cl1)
    for (const auto& c1 : cl1) ius.push_back(c1 * tu * c0);
  const Matrix omega_i = omega_from_unitaries(1, ius, Matrix::Identity(2, 2));
  CHECK((omega_i - omega_closed(make(EnsembleSpec::Kind::Interleaved, 1, 1, 1))).norm() < 1e-12);

  // n = 2, (HT) suffix on both qubits
  GateSequence w2;
  w2.n = 2;
  w2.gates = {{GateKind::T, 0, -1},
              {GateKind::H, 0, -1},
              {GateKind::T, 1, -1},
              {GateKind::H, 1, -1}};
  const Matrix wu2 = dense_unitary(w2);
  std::vector<Matrix> tus2;
  for (const auto& c : cl2_unitaries()) tus2.push_back(wu2 * c);
  const Matrix omega_t2 = omega_from_unitaries(2, tus2, Matrix::Identity(4, 4));
  CHECK((omega_t2 - omega_closed(make(EnsembleSpec::Kind::SimpleT, 2, 2))).norm() < 1e-10);
}

TEST_CASE("universal projected traces and symmetry of Omega") {
  const std::vector<EnsembleSpec> specs = {
      make(EnsembleSpec::Kind::FourDesign, 2),
      make(EnsembleSpec::Kind::Clifford, 2),
      make(EnsembleSpec::Kind::Interleaved, 2, 1, 2),
      make(EnsembleSpec::Kind::SimpleT, 2, 2),
      make(EnsembleSpec::Kind::Clifford, 1),
      make(EnsembleSpec::Kind::SimpleT, 1, 1)};
  for (const auto& spec : specs) {
    const double d = 1 << spec.n;
    const Matrix omega = omega_closed(spec);
    const auto ps = projectors(spec.n);
    const Matrix pg = ps.p_g.cast<Complex>();
    CHECK((pg * omega * pg - omega).norm() < 1e-9);
    CHECK(omega.trace().real() == doctest::Approx(d * d).epsilon(1e-10));
    const double t4 = (omega * ps.p_lambda_g[0].cast<Complex>()).trace().real();
    const double t31 = (omega * ps.p_lambda_g[1].cast<Complex>()).trace().real();
    const double t22 = (omega * ps.p_lambda_g[2].cast<Complex>()).trace().real();
    CHECK(t4 == doctest::Approx(d * (d + 5) / 6).epsilon(1e-9));
    CHECK(t31 == doctest::Approx(d * (d - 1) / 2).epsilon(1e-9));
    CHECK(t22 == doctest::Approx(d * (d - 1) / 3).epsilon(1e-9));
    // kappa round trip
    const KappaSet ke = kappa_extract(omega, spec.n);
    const KappaSet kc = kappa_closed(spec);
    CHECK(ke.k4_plus == doctest::Approx(kc.k4_plus).epsilon(1e-9));
    CHECK(ke.k4_minus == doctest::Approx(kc.k4_minus).epsilon(1e-9));
    CHECK(ke.k31 == doctest::Approx(kc.k31).epsilon(1e-9));
    CHECK(ke.k22_plus == doctest::Approx(kc.k22_plus).epsilon(1e-9));
    if (spec.n > 1)
      CHECK(ke.k22_minus == doctest::Approx(kc.k22_minus).epsilon(1e-9));
  }
}

TEST_CASE("Haar cross moment norms") {
  for (int n = 1; n <= 2; ++n) {
    const double d = 1 << n;
    const Matrix omega = omega_closed(make(EnsembleSpec::Kind::FourDesign, n));
    Eigen::SelfAdjointEigenSolver<Matrix> es(omega);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
    CHECK(es.eigenvalues().cwiseAbs().sum() == doctest::Approx(d * d).epsilon(1e-9));
    CHECK(es.eigenvalues().maxCoeff() ==
          doctest::Approx(4 / (d * (d + 1))).epsilon(1e-9));
  }
}

TEST_CASE("partial trace of Omega over one copy is the 2-design moment") {
  for (int n = 1; n <= 2; ++n) {
    const double d = 1 << n;
    for (const auto& spec : {make(EnsembleSpec::Kind::Clifford, n),
                             make(EnsembleSpec::Kind::FourDesign, n)}) {
      const Matrix reduced = trace_out_copy4(omega_closed(spec), n);
      CHECK((reduced - one_plus_swap12(n) / (d + 1)).norm() < 1e-9);
    }
  }
}

TEST_CASE("g coefficients: least-squares fit recovers the closed vectors") {
  struct Case {
    EnsembleSpec spec;
    GiVector g;
  };
  const std::vector<Case> cases = {
      {make(EnsembleSpec::Kind::FourDesign, 2), gi_haar(4)},
      {make(EnsembleSpec::Kind::Clifford, 2), gi_clifford(4)},
      {make(EnsembleSpec::Kind::Interleaved, 2, 1, 2), gi_ukl(4, 1, 2)},
      {make(EnsembleSpec::Kind::Interleaved, 2, 2, 1), gi_ukl(4, 2, 1)},
      {make(EnsembleSpec::Kind::SimpleT, 2, 1), gi_tuk(4, 1)},
      {make(EnsembleSpec::Kind::SimpleT, 2, 2), gi_tuk(4, 2)}};
  for (const auto& c : cases) {
    const GiSet fit = gi_fit(omega_closed(c.spec), 2);
    CHECK(!fit.degenerate);
    CHECK(fit.residual < 1e-8);
    for (int i = 0; i < 5; ++i)
      CHECK(fit.g[i] == doctest::Approx(c.g[i]).epsilon(1e-7));
  }
  // n = 1 is rank deficient: flagged, but the fit still reproduces Omega
  const Matrix omega1 = omega_closed(make(EnsembleSpec::Kind::Clifford, 1));
  const GiSet fit1 = gi_fit(omega1, 1);
  CHECK(fit1.degenerate);
  CHECK(fit1.residual < 1e-9);
  const auto r1 = orbit_operators(1);
  Eigen::MatrixXd recon = Eigen::MatrixXd::Zero(16, 16);
  for (int i = 0; i < 5; ++i) recon += fit1.g[i] * r1[i];
  CHECK((omega1 - recon.cast<Complex>()).norm() < 1e-9);
}

TEST_CASE("V_* through Omega agrees with the direct formulas") {
  Rng rng(17);
  for (int n = 1; n <= 2; ++n) {
    const double d = 1 << n;
    const Matrix om_cl = omega_closed(make(EnsembleSpec::Kind::Clifford, n));
    const Matrix om_haar = omega_closed(make(EnsembleSpec::Kind::FourDesign, n));
    const Matrix om_t = omega_closed(make(EnsembleSpec::Kind::SimpleT, n, 1));
    for (int rep = 0; rep < 5; ++rep) {
      const Matrix O = random_traceless_hermitian(n, rng);
      const Matrix rho = random_density(n, rng);
      CHECK(vstar_via_omega(om_cl, O, rho) ==
            doctest::Approx(vstar_clifford(O, rho)).epsilon(1e-9));
      CHECK(vstar_via_omega(om_haar, O, rho) ==
            doctest::Approx(vstar_4design(O, rho)).epsilon(1e-9));
      CHECK(vstar_via_omega(om_t, O, rho) ==
            doctest::Approx(vstar_tuk(O, rho, 1)).epsilon(1e-9));
    }
    // fidelity pair at the stabilizer point
    const DenseState z = snk_state(n, 0, 0);
    const Matrix O = fidelity_observable(z);
    CHECK(vstar_via_omega(om_cl, O, density(z)) ==
          doctest::Approx(vstar_clifford_fidelity(d, 0)).epsilon(1e-9));
  }
  // magic target against the interleaved closed form
  const DenseState target = snk_state(2, 1, M_PI / 4);
  const double m2 = sre2(target);
  const Matrix O = fidelity_observable(target);
  const Matrix om_i = omega_closed(make(EnsembleSpec::Kind::Interleaved, 2, 1, 1));
  CHECK(vstar_via_omega(om_i, O, density(target)) ==
        doctest::Approx(vstar_ukl_fidelity(4, m2, 1, 1)).epsilon(1e-9));
}

TEST_CASE("sampled cross moment converges to the closed form") {
  Rng rng(23);
  const auto spec = make(EnsembleSpec::Kind::SimpleT, 2, 1);
  const Matrix emp = omega_empirical(spec, Matrix::Identity(4, 4), 3000, rng);
  const Matrix closed = omega_closed(spec);
  CHECK((emp - closed).cwiseAbs().maxCoeff() < 0.06);
  const KappaSet ke = kappa_extract(emp, 2);
  const KappaSet kc = kappa_closed(spec);
  CHECK(ke.k4_plus == doctest::Approx(kc.k4_plus).epsilon(0.15));
  CHECK(ke.k31 == doctest::Approx(kc.k31).epsilon(0.15));
  // exact enumeration is wired through the same entry point
  Rng rng2(0);
  const Matrix exact =
      omega_empirical(make(EnsembleSpec::Kind::Clifford, 1), Matrix::Identity(2, 2), 0, rng2);
  CHECK((exact - omega_closed(make(EnsembleSpec::Kind::Clifford, 1))).norm() < 1e-12);
}

TEST_CASE("basis sums Lambda_1, Lambda_2") {
  // computational basis: (d^3 + 2d^2, d^3 - d^2)
  for (int n = 1; n <= 2; ++n) {
    const double d = 1 << n;
    const auto [l1, l2] = lambda12(n, Matrix::Identity(1 << n, 1 << n));
    CHECK(l1 == doctest::Approx(d * d * d + 2 * d * d).epsilon(1e-9));
    CHECK(l2 == doctest::Approx(d * d * d - d * d).epsilon(1e-9));
  }
  // (HT)-rotated basis on every qubit: (d^3 g^k + 2 d^2 v^k, d^3 g^k - d^2 v^k)
  for (int n = 1; n <= 2; ++n) {
    const double d = 1 << n;
    GateSequence w;
    w.n = n;
    for (int q = 0; q < n; ++q) {
      w.gates.push_back({GateKind::T, q, -1});
      w.gates.push_back({GateKind::H, q, -1});
    }
    const Matrix basis = dense_unitary(w).adjoint();
    const double g = std::pow(0.75, n), v = std::pow(0.5, n);
    const auto [l1, l2] = lambda12(n, basis);
    CHECK(l1 == doctest::Approx(d * d * d * g + 2 * d * d * v).epsilon(1e-9));
    CHECK(l2 == doctest::Approx(d * d * d * g - d * d * v).epsilon(1e-9));
  }
  // n = 1: Lambda_2 = 4 in any basis
  Rng rng(3);
  const auto [h1, h2] = lambda12(1, random_haar_unitary(2, rng));
  CHECK(h2 == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("general-basis Clifford kappas from the basis sums") {
  Rng rng(29);
  for (int n = 1; n <= 2; ++n) {
    const double d = 1 << n;
    const Matrix basis =
        n == 1 ? random_haar_unitary(2, rng) : Matrix(dense_unitary([] {
            GateSequence w;
            w.n = 2;
            w.gates = {{GateKind::T, 0, -1}, {GateKind::H, 0, -1}};
            return w;
          }()).adjoint());
    const auto us = n == 1 ? clifford_unitaries(1) : cl2_unitaries();
    const Matrix omega = omega_from_unitaries(n, us, basis);
    const auto [l1, l2] = lambda12(n, basis);
    const KappaSet k = kappa_extract(omega, n);
    CHECK(k.k4_plus ==
          doctest::Approx(2 * l1 / (d * d * (d + 1) * (d + 2))).epsilon(1e-9));
    CHECK(k.k4_minus == doctest::Approx((4 * d * d * d * (d + 5) - 8 * l1) /
                                        (d * d * (d * d - 1) * (d + 2) * (d + 4)))
                            .epsilon(1e-9));
    CHECK(k.k22_plus ==
          doctest::Approx(2 * l2 / (d * d * (d * d - 1))).epsilon(1e-9));
    if (n > 1)
      CHECK(k.k22_minus == doctest::Approx((4 * d * d * d * (d - 1) - 8 * l2) /
                                           (d * d * (d * d - 1) * (d * d - 4)))
                               .epsilon(1e-9));
    CHECK(k.k31 == doctest::Approx(4 / ((d + 1) * (d + 2))).epsilon(1e-9));
  }
}

TEST_CASE("cutoff guards") {
  CHECK_THROWS(big_r(sigma44_enumerate()[0], 4));
  CHECK_THROWS(projectors(4));
  Rng rng(1);
  CHECK_THROWS(omega_empirical(make(EnsembleSpec::Kind::Clifford, 3),
                               Matrix::Identity(8, 8), 10, rng));
  // non-orthonormal basis
  CHECK_THROWS(omega_from_unitaries(1, {Matrix::Identity(2, 2)},
                                    Matrix::Ones(2, 2)));
}
