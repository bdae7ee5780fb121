/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "shadow/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shadow {

namespace {

double sample_sd(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0;
  double acc = 0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / (xs.size() - 1));
}

std::uint64_t sample_outcome(const std::vector<double>& cdf, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = u(rng);
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
  return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
      it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

}  // namespace

void RunConfig::validate() const {
  if (n < 1 || n > kMaxStatevectorQubits)
    throw std::invalid_argument("run config: n out of range");
  if (ensemble.n != n) throw std::invalid_argument("run config: ensemble n mismatch");
  ensemble.validate();
  if (reuse < 1) throw std::invalid_argument("run config: R >= 1 required");
  if (num_circuits < 2)
    throw std::invalid_argument("run config: at least 2 circuits required");
  if (depolarize_p < 0 || depolarize_p > 1)
    throw std::invalid_argument("run config: p out of [0,1]");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 on the (seed, index) pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

SampledUnitary sample_unitary(const EnsembleSpec& spec, Rng& rng) {
  spec.validate();
  SampledUnitary out;
  switch (spec.kind) {
    case EnsembleSpec::Kind::FourDesign: {
      if (spec.n > kMaxHaarQubits)
        throw std::invalid_argument("sample_unitary: Haar sampling cutoff exceeded");
      out.is_dense = true;
      out.u = random_haar_unitary(1 << spec.n, rng);
      return out;
    }
    case EnsembleSpec::Kind::Clifford:
      out.seq = clifford_to_circuit(random_clifford(spec.n, rng));
      return out;
    case EnsembleSpec::Kind::Interleaved: {
      out.seq = clifford_to_circuit(random_clifford(spec.n, rng));
      for (int layer = 0; layer < spec.l; ++layer) {
        for (int q = spec.n - spec.k; q < spec.n; ++q)
          out.seq.gates.push_back({GateKind::T, q, -1});
        const GateSequence c = clifford_to_circuit(random_clifford(spec.n, rng));
        out.seq.gates.insert(out.seq.gates.end(), c.gates.begin(), c.gates.end());
      }
      return out;
    }
    case EnsembleSpec::Kind::SimpleT: {
      out.seq = clifford_to_circuit(random_clifford(spec.n, rng));
      // suffix (HT) per phased qubit: T first, then H
      for (int q = spec.n - spec.k; q < spec.n; ++q) {
        out.seq.gates.push_back({GateKind::T, q, -1});
        out.seq.gates.push_back({GateKind::H, q, -1});
      }
      return out;
    }
  }
  throw std::logic_error("sample_unitary: unknown ensemble kind");
}

double snapshot_fidelity(const DenseState& evolved, std::uint64_t b) {
  // snapshot of O = |phi><phi| - 1/d, so the mean estimates F - 1/d
  const double d = static_cast<double>(evolved.amps.size());
  return (d + 1) * (std::norm(evolved.amps[b]) - 1 / d);
}

double snapshot_dense(const Matrix& rotated_o, std::uint64_t b) {
  const double d = static_cast<double>(rotated_o.rows());
  return (d + 1) * rotated_o(b, b).real();
}

EstimatorStats run_experiment(const RunConfig& config, const DenseState& target,
                              const ObservableSpec& obs) {
  config.validate();
  if (target.n != config.n || !target.normalized())
    throw std::invalid_argument("run_experiment: bad target state");
  if (!obs.fidelity) {
    if (config.n > kMaxDenseQubits)
      throw std::invalid_argument("run_experiment: dense observable cutoff");
    if (obs.dense.rows() != (1ll << config.n) || std::abs(obs.dense.trace()) > 1e-8)
      throw std::invalid_argument("run_experiment: observable must be traceless");
  }

  const std::int64_t d = 1ll << config.n;
  const int C = config.num_circuits;
  const int R = config.reuse;
  const double p = config.depolarize_p;

  std::vector<double> means(C), within(C, 0.0);
  for (int i = 0; i < C; ++i) {
    Rng rng(derive_seed(config.seed, i));
    const SampledUnitary su = sample_unitary(config.ensemble, rng);

    DenseState evolved;
    evolved.n = config.n;
    Matrix rotated_o;
    if (su.is_dense) {
      evolved.amps = su.u * target.amps;
      if (!obs.fidelity) rotated_o = su.u * obs.dense * su.u.adjoint();
    } else {
      evolved.amps = target.amps;
      apply_sequence(evolved.amps, su.seq);
      if (!obs.fidelity) {
        const Matrix u = dense_unitary(su.seq);
        rotated_o = u * obs.dense * u.adjoint();
      }
    }

    std::vector<double> cdf(d);
    double acc = 0;
    for (std::int64_t b = 0; b < d; ++b) {
      acc += std::norm(evolved.amps[b]);
      cdf[b] = acc;
    }
    cdf[d - 1] = 1.0;

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::int64_t> uniform_b(0, d - 1);
    double m = 0;
    std::vector<double> shots(R);
    for (int j = 0; j < R; ++j) {
      // depolarizing: the maximally mixed input yields a uniform outcome in
      // any measurement basis
      const std::uint64_t b = (p > 0 && unit(rng) < p)
                                  ? static_cast<std::uint64_t>(uniform_b(rng))
                                  : sample_outcome(cdf, rng);
      const double snap = obs.fidelity ? snapshot_fidelity(evolved, b)
                                       : snapshot_dense(rotated_o, b);
      shots[j] = snap;
      m += snap;
    }
    m /= R;
    means[i] = m;
    for (int j = 0; j < R; ++j) within[i] += (shots[j] - m) * (shots[j] - m);
  }

  EstimatorStats st;
  st.num_circuits = C;
  st.reuse = R;
  double grand = 0;
  for (double m : means) grand += m;
  grand /= C;
  st.mean = grand;
  st.se_mean = sample_sd(means, grand) / std::sqrt(static_cast<double>(C));

  // one-way ANOVA: between mean square / R is unbiased for V_R, the within
  // mean square for V - V_*
  double msb = 0;
  for (double m : means) msb += (m - grand) * (m - grand);
  msb *= static_cast<double>(R) / (C - 1);
  st.vr_hat = msb / R;

  if (R == 1) {
    st.v_hat = st.vr_hat;
    st.vstar_hat = std::numeric_limits<double>::quiet_NaN();
    st.se_vstar = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> sq(C);
    for (int i = 0; i < C; ++i)
      sq[i] = (means[i] - grand) * (means[i] - grand) * C / (C - 1.0);
    st.se_vr = sample_sd(sq, st.vr_hat) / std::sqrt(static_cast<double>(C));
    st.se_v = st.se_vr;
    return st;
  }

  double msw = 0;
  for (int i = 0; i < C; ++i) msw += within[i];
  msw /= static_cast<double>(C) * (R - 1);
  st.vstar_hat = (msb - msw) / R;
  st.v_hat = st.vstar_hat + msw;

  // influence-style standard errors from per-circuit contributions
  std::vector<double> t_star(C), t_v(C), t_vr(C);
  for (int i = 0; i < C; ++i) {
    const double between = (means[i] - grand) * (means[i] - grand) * C / (C - 1.0);
    const double w = within[i] / (R - 1);
    t_star[i] = between - w / R;
    t_v[i] = t_star[i] + w;
    t_vr[i] = t_star[i] + w / R;
  }
  const double sqc = std::sqrt(static_cast<double>(C));
  st.se_vstar = sample_sd(t_star, st.vstar_hat) / sqc;
  st.se_v = sample_sd(t_v, st.v_hat) / sqc;
  st.se_vr = sample_sd(t_vr, st.vr_hat) / sqc;
  return st;
}

namespace {

DataTable fig_random_states(const FigureParams& p) {
  DataTable t;
  t.columns = {"n", "d", "v_analytic", "vbar_analytic", "vstarbar_analytic",
               "vstar_mean", "vstar_sem"};
  Rng rng(p.seed);
  for (int n = 1; n <= std::min(p.n, kMaxCharQubits); ++n) {
    const double d = 1 << n;
    const auto avg = average_fidelity(d);
    std::vector<double> vs(p.samples);
    double mean = 0;
    for (int i = 0; i < p.samples; ++i) {
      vs[i] = vstar_clifford_fidelity(d, sre2(random_state(n, rng)));
      mean += vs[i];
    }
    mean /= p.samples;
    const double sem = sample_sd(vs, mean) / std::sqrt(static_cast<double>(p.samples));
    t.rows.push_back({static_cast<double>(n), d, v_fidelity(d, 1.0), avg.first,
                      avg.second, mean, sem});
  }
  return t;
}

DataTable fig_var_types(const FigureParams& p) {
  DataTable t;
  // family: 0 = W, 1 = linear-phase W, 2 = S_{n,k}
  t.columns = {"family", "n", "m2", "vstar_clifford", "vstar_4design"};
  for (int n = 2; n <= std::min(p.n, kMaxCharQubits); ++n) {
    const double d = 1 << n;
    SreFamily w{SreFamily::Kind::W, n};
    SreFamily wl{SreFamily::Kind::WLinear, n};
    wl.theta = p.theta;
    SreFamily sk{SreFamily::Kind::Snk, n};
    sk.k = std::min(p.k, n);
    sk.theta = p.theta;
    int fam = 0;
    for (const auto& f : {w, wl, sk}) {
      const double m2 = sre2_closed(f);
      t.rows.push_back({static_cast<double>(fam++), static_cast<double>(n), m2,
                        vstar_clifford_fidelity(d, m2),
                        vstar_4design_fidelity(d)});
    }
  }
  return t;
}

DataTable fig_interleaved_compare(const FigureParams& p) {
  DataTable t;
  t.columns = {"k",       "vstar_ukl_k_1", "vstar_ukl_1_k", "vstar_tuk",
               "mc_vstar", "mc_se"};
  const double d = std::pow(2.0, p.n);
  SreFamily fam{SreFamily::Kind::Snk, p.n};
  fam.k = std::min(p.k, p.n);
  fam.theta = p.theta;
  const double m2 = sre2_closed(fam);
  const DenseState target = snk_state(p.n, fam.k, p.theta);
  for (int k = 0; k <= p.n; ++k) {
    const double ukl_k1 = k == 0 ? vstar_clifford_fidelity(d, m2)
                                 : vstar_ukl_fidelity(d, m2, k, 1);
    const double ukl_1k = vstar_ukl_fidelity(d, m2, 1, k);
    const double tuk = vstar_tuk_fidelity(d, m2, k);
    RunConfig cfg;
    cfg.n = p.n;
    cfg.ensemble = {EnsembleSpec::Kind::SimpleT, p.n, k, 0};
    cfg.reuse = p.reuse;
    cfg.num_circuits = p.num_circuits;
    cfg.seed = derive_seed(p.seed, k);
    const auto st = run_experiment(cfg, target, ObservableSpec{});
    t.rows.push_back({static_cast<double>(k), ukl_k1, ukl_1k, tuk, st.vstar_hat,
                      st.se_vstar});
  }
  return t;
}

DataTable fig_depolarizing(const FigureParams& p) {
  DataTable t;
  t.columns = {"p",          "cl_vstar",  "haar_vstar", "haar_v",
               "mc_cl",      "mc_cl_se",  "mc_haar",    "mc_haar_se"};
  const double d = std::pow(2.0, p.n);
  const DenseState target = w_state(p.n);
  const double m2 = sre2_closed({SreFamily::Kind::W, p.n});
  for (int i = 0; i <= 10; ++i) {
    const double pr = i / 10.0;
    RunConfig cl;
    cl.n = p.n;
    cl.ensemble = {EnsembleSpec::Kind::Clifford, p.n, 0, 0};
    cl.reuse = p.reuse;
    cl.num_circuits = p.num_circuits;
    cl.seed = derive_seed(p.seed, 2 * i);
    cl.depolarize_p = pr;
    const auto scl = run_experiment(cl, target, ObservableSpec{});
    RunConfig hr = cl;
    hr.ensemble.kind = EnsembleSpec::Kind::FourDesign;
    hr.seed = derive_seed(p.seed, 2 * i + 1);
    const auto shr = run_experiment(hr, target, ObservableSpec{});
    t.rows.push_back({pr, vstar_clifford_depolarized_fidelity(d, m2, pr),
                      vstar_haar_depolarized_fidelity(d, pr),
                      v_haar_depolarized_fidelity(d, pr), scl.vstar_hat,
                      scl.se_vstar, shr.vstar_hat, shr.se_vstar});
  }
  return t;
}

DataTable fig_upper_bound_scatter(const FigureParams& p) {
  DataTable t;
  t.columns = {"m2", "vstar_clifford", "bound"};
  Rng rng(p.seed);
  const int n = std::min(p.n, kMaxCharQubits);
  const double d = 1 << n;
  for (int i = 0; i < p.samples; ++i) {
    const double m2 = sre2(random_state(n, rng));
    t.rows.push_back({m2, vstar_clifford_fidelity(d, m2),
                      std::exp2(1 - m2 / 2) * (d + 1) / (d + 2)});
  }
  return t;
}

DataTable fig_ratio_scatter(const FigureParams& p) {
  DataTable t;
  t.columns = {"cross_norm_sq", "cross_dot", "purity", "dot_mean_prediction"};
  Rng rng(p.seed);
  const int n = std::min(p.n, kMaxCharQubits);
  const double d = 1 << n;
  for (int i = 0; i < p.samples; ++i) {
    const Matrix O = random_traceless_hermitian(n, rng);
    const Matrix rho = random_density(n, rng);
    const auto pair = cross_chars(n, rho, O);
    const double pur = purity(rho);
    t.rows.push_back({pair.cross_l2_squared(), pair.dot(), pur,
                      (d * pur - 1) / (d * d - 1)});
  }
  return t;
}

DataTable fig_ensemble_compare(const FigureParams& p) {
  DataTable t;
  t.columns = {"R", "vr_clifford", "vr_4design", "mc_vr", "mc_se"};
  const double d = std::pow(2.0, p.n);
  const DenseState target = snk_state(p.n, 0, 0);
  const double v = v_fidelity(d, 1.0);
  const double vs_cl = vstar_clifford_fidelity(d, 0.0);
  const double vs_4d = vstar_4design_fidelity(d);
  int idx = 0;
  for (int R : {1, 2, 5, 10, 20, 50, 100}) {
    RunConfig cfg;
    cfg.n = p.n;
    cfg.ensemble = {EnsembleSpec::Kind::Clifford, p.n, 0, 0};
    cfg.reuse = R;
    cfg.num_circuits = p.num_circuits;
    cfg.seed = derive_seed(p.seed, idx++);
    const auto st = run_experiment(cfg, target, ObservableSpec{});
    t.rows.push_back({static_cast<double>(R), vr_combine(v, vs_cl, R),
                      vr_combine(v, vs_4d, R), st.vr_hat, st.se_vr});
  }
  return t;
}

}  // namespace

DataTable figure_dataset(const std::string& which, const FigureParams& p) {
  if (which == "random_states") return fig_random_states(p);
  if (which == "var_types") return fig_var_types(p);
  if (which == "interleaved_compare") return fig_interleaved_compare(p);
  if (which == "depolarizing") return fig_depolarizing(p);
  if (which == "upper_bound_scatter") return fig_upper_bound_scatter(p);
  if (which == "ratio_scatter") return fig_ratio_scatter(p);
  if (which == "ensemble_compare") return fig_ensemble_compare(p);
  throw std::invalid_argument("figure_dataset: unknown figure id '" + which + "'");
}

}  // namespace shadow
