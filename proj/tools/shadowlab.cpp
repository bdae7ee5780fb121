/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shadow/commutant.hpp"
#include "shadow/io.hpp"

using namespace shadow;
using nlohmann::json;

namespace {

// Resolve an output path against SHADOWLAB_OUT for relative paths.
std::string resolve_out(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* base = std::getenv("SHADOWLAB_OUT");
  if (!base || !*base) return path;
  return std::string(base) + "/" + path;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(resolve_out(out_path), std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file " + out_path);
  os << text;
}

struct CheckList {
  json items = json::array();
  bool all_pass = true;

  void add(const std::string& name, double measured, double tol) {
    const bool ok = measured <= tol;
    all_pass &= ok;
    items.push_back({{"name", name},
                     {"pass", ok},
                     {"measured", measured},
                     {"tolerance", tol}});
    std::cerr << (ok ? "PASS " : "FAIL ") << name << " measured=" << measured
              << " tol=" << tol << "\n";
  }
};

double m2_from_request(bool has_m2, double m2, const std::string& family,
                       int n, int k, double theta) {
  if (has_m2 && !family.empty())
    throw CLI::ValidationError("give either --m2 or --family, not both");
  if (has_m2) return m2;
  if (family.empty()) return 0.0;  // stabilizer default
  return sre2_closed(family_from_name(family, n, k, theta));
}

DenseState target_state(const std::string& family, int n, int k,
                        double theta) {
  if (family.empty() || family == "snk") return snk_state(n, k, theta);
  if (family == "w") return w_state(n);
  if (family == "wlinear") {
    std::vector<double> lin(n);
    for (int j = 0; j < n; ++j) lin[j] = (j + 1) * theta;
    return w_state(n, lin);
  }
  throw CLI::ValidationError("unsupported target family '" + family + "'");
}

int run_verify(const std::string& suite, std::uint64_t seed);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shadowlab: thrifty classical-shadow variance laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", artifact_version());

  std::string ensemble = "clifford", family, figure_id, format = "json";
  std::string out_path, dump_path, suite;
  int n = 1, k = 0, l = 0, circuits = 1000, reuse = 10, samples = 100;
  int target_k = 0;
  int cm_samples = 0;
  double m2 = 0, fval = 1.0, pval = 0, theta = 0;
  bool has_seed = false;
  std::uint64_t seed = 0;
  std::vector<int> r_list = {1, 10, 100};
  bool fidelity_ideal = false, with_dims = false, with_gram = false;

  auto* analytic = app.add_subcommand("analytic", "closed-form V, V_*, V_R");
  analytic->add_option("--ensemble", ensemble,
                       "fourdesign|clifford|interleaved|simplet");
  analytic->add_option("--n", n, "qubit count")->required();
  analytic->add_option("--k", k, "T gates per layer / fixed-T count");
  analytic->add_option("--l", l, "interleaved layer count");
  auto* m2_opt = analytic->add_option("--m2", m2, "stabilizer 2-Renyi entropy");
  analytic->add_option("--family", family, "w|wlinear|phasedw|snk (sets M2)");
  analytic->add_option("--theta", theta, "family angle in radians");
  analytic->add_option("--f", fval, "target fidelity F");
  analytic->add_flag("--fidelity-ideal", fidelity_ideal, "shorthand for --f 1");
  analytic->add_option("--p", pval, "global depolarizing strength");
  analytic->add_option("--r", r_list, "reuse counts for V_R")->delimiter(',');
  analytic->add_option("--out", out_path, "output file (default stdout)");

  auto* sre = app.add_subcommand("sre", "stabilizer 2-Renyi entropy");
  sre->add_option("--family", family)->required();
  sre->add_option("--n", n)->required();
  sre->add_option("--k", k);
  sre->add_option("--theta", theta);
  sre->add_option("--out", out_path);

  auto* cm = app.add_subcommand("crossmoment", "4th cross-moment operator");
  cm->add_option("--ensemble", ensemble);
  cm->add_option("--n", n)->required();
  cm->add_option("--k", k);
  cm->add_option("--l", l);
  cm->add_option("--samples", cm_samples,
                 "Monte Carlo samples (0 = closed form / exact enumeration)");
  cm->add_option("--seed", seed)->needs("--samples");
  cm->add_flag("--dimensions", with_dims, "include the dimension table");
  cm->add_flag("--gram", with_gram, "include the Gram spectrum");
  cm->add_option("--dump", dump_path, "binary dump of Omega");
  cm->add_option("--out", out_path);

  auto* sim = app.add_subcommand("simulate", "thrifty-shadow Monte Carlo run");
  sim->add_option("--ensemble", ensemble);
  sim->add_option("--n", n)->required();
  sim->add_option("--k", k);
  sim->add_option("--l", l);
  sim->add_option("--r", reuse, "reuses per circuit");
  sim->add_option("--circuits", circuits);
  sim->add_option("--seed", seed)->required();
  sim->add_option("--p", pval);
  sim->add_option("--target", family, "target family: w|wlinear|snk");
  sim->add_option("--target-k", target_k, "phased-qubit count of the target");
  sim->add_option("--theta", theta);
  sim->add_option("--out", out_path);

  auto* fig = app.add_subcommand("figure", "figure dataset emission");
  fig->add_option("id", figure_id,
                  "random_states|var_types|interleaved_compare|depolarizing|"
                  "upper_bound_scatter|ratio_scatter|ensemble_compare")
      ->required();
  fig->add_option("--n", n);
  fig->add_option("--circuits", circuits);
  fig->add_option("--r", reuse);
  fig->add_option("--seed", seed)->required();
  fig->add_option("--theta", theta);
  fig->add_option("--k", k);
  fig->add_option("--l", l);
  fig->add_option("--samples", samples);
  fig->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  fig->add_option("--out", out_path);

  auto* ver = app.add_subcommand("verify", "named invariant suites");
  ver->add_option("suite", suite,
                  "charfuncs|commutant|omega|variance-oracle|bounds")
      ->required();
  ver->add_option("--seed", seed)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analytic) {
      if (fidelity_ideal) fval = 1.0;
      const EnsembleSpec spec = ensemble_from_name(ensemble, n, k, l);
      const double d = std::pow(2.0, n);
      const double m2v =
          m2_from_request(m2_opt->count() > 0, m2, family, n, k, theta);
      if (pval > 0 && fval != 1.0)
        throw CLI::ValidationError("depolarizing curves require --f 1");
      const VarianceBreakdown br = variance_breakdown_fidelity(spec, m2v);
      const double v = pval > 0 ? v_haar_depolarized_fidelity(d, pval)
                                : v_fidelity(d, fval);
      const double vstar = depolarized(br.vstar, pval);
      json vr = json::object();
      for (int r : r_list) vr[std::to_string(r)] = vr_combine(v, vstar, r);
      const json config = {{"ensemble", json_ensemble(spec)},
                           {"m2", m2v},
                           {"f", fval},
                           {"p", pval},
                           {"r", r_list}};
      const json results = {
          {"v", v},
          {"vstar", vstar},
          {"vr", vr},
          {"method", br.method},
          {"bounds",
           {{"v_triangle", v_triangle_fidelity(d, m2v)},
            {"vstar_sqrt_upper", std::exp2(1 - m2v / 2) * (d + 1) / (d + 2)},
            {"deviation_budget", 6 * (d - 1) / (d * d)}}}};
      emit(out_path, make_report(config, results).dump(2) + "\n");
      return 0;
    }

    if (*sre) {
      const SreFamily f = family_from_name(family, n, k, theta);
      const double closed = sre2_closed(f);
      json results = {{"m2", closed}};
      if (n <= kMaxCharQubits && family != "phasedw")
        results["m2_direct"] = sre2(target_state(family, n, k, theta));
      const json config = {
          {"family", family}, {"n", n}, {"k", k}, {"theta", theta}};
      emit(out_path, make_report(config, results).dump(2) + "\n");
      return 0;
    }

    if (*cm) {
      const EnsembleSpec spec = ensemble_from_name(ensemble, n, k, l);
      Matrix omega;
      std::string source;
      if (cm_samples > 0) {
        Rng rng(seed);
        omega = omega_empirical(spec, Matrix::Identity(1 << n, 1 << n),
                                cm_samples, rng);
        source = "sampled";
      } else if (spec.kind == EnsembleSpec::Kind::Clifford) {
        Rng rng(0);
        omega = omega_empirical(spec, Matrix::Identity(1 << n, 1 << n), 0, rng);
        source = "enumerated";
      } else {
        omega = omega_closed(spec);
        source = "closed";
      }
      const KappaSet ke = kappa_extract(omega, n);
      const KappaSet kc = kappa_closed(spec);
      const GiSet fit = gi_fit(omega, n);
      json results = {
          {"source", source},
          {"trace", omega.trace().real()},
          {"kappa",
           {{"k4_plus", ke.k4_plus},
            {"k4_minus", ke.k4_minus},
            {"k22_plus", ke.k22_plus},
            {"k22_minus", ke.k22_minus},
            {"k31", ke.k31}}},
          {"kappa_closed",
           {{"k4_plus", kc.k4_plus},
            {"k4_minus", kc.k4_minus},
            {"k22_plus", kc.k22_plus},
            {"k22_minus", kc.k22_minus},
            {"k31", kc.k31}}},
          {"gi",
           {{"g", fit.g}, {"degenerate", fit.degenerate},
            {"residual", fit.residual}}}};
      if (with_dims) {
        json rows = json::array();
        for (const auto& row : dimension_table(n))
          rows.push_back({{"total", row.total},
                          {"plus", row.plus},
                          {"minus", row.minus}});
        results["dimension_table"] = rows;
      }
      if (with_gram) {
        const GramSpectrum gs = gram_spectrum(n);
        results["gram"] = {{"rank", gs.rank}, {"eigenvalues", gs.eigenvalues}};
      }
      if (!dump_path.empty()) {
        std::ofstream os(resolve_out(dump_path), std::ios::binary);
        if (!os) throw std::runtime_error("cannot open dump file");
        write_operator(os, omega);
        results["dump"] = dump_path;
      }
      const json config = {{"ensemble", json_ensemble(spec)},
                           {"samples", cm_samples},
                           {"seed", seed}};
      emit(out_path, make_report(config, results).dump(2) + "\n");
      return 0;
    }

    if (*sim) {
      RunConfig cfg;
      cfg.n = n;
      cfg.ensemble = ensemble_from_name(ensemble, n, k, l);
      cfg.reuse = reuse;
      cfg.num_circuits = circuits;
      cfg.seed = seed;
      cfg.depolarize_p = pval;
      const DenseState target = target_state(family, n, target_k, theta);
      const EstimatorStats st = run_experiment(cfg, target, ObservableSpec{});
      json results = json_stats(st);
      if (n <= kMaxCharQubits) {
        const double m2v = sre2(target);
        const VarianceBreakdown br =
            variance_breakdown_fidelity(cfg.ensemble, m2v);
        results["analytic"] = {{"m2", m2v},
                               {"v", br.v},
                               {"vstar", depolarized(br.vstar, pval)},
                               {"method", br.method}};
      }
      json config = json_run_config(cfg);
      config["target"] = {{"family", family.empty() ? "snk" : family},
                          {"k", target_k},
                          {"theta", theta}};
      emit(out_path, make_report(config, results).dump(2) + "\n");
      return 0;
    }

    if (*fig) {
      FigureParams p;
      p.n = n;
      p.num_circuits = circuits;
      p.reuse = reuse;
      p.seed = seed;
      p.theta = theta;
      p.k = k;
      p.l = l;
      p.samples = samples;
      const DataTable table = figure_dataset(figure_id, p);
      const json config = {{"figure", figure_id}, {"n", p.n},
                           {"num_circuits", p.num_circuits}, {"reuse", p.reuse},
                           {"seed", p.seed},   {"theta", p.theta},
                           {"k", p.k},         {"l", p.l},
                           {"samples", p.samples}};
      if (format == "json") {
        emit(out_path, make_report(config, json_table(table)).dump(2) + "\n");
      } else {
        std::ostringstream os;
        write_csv(os, table, config);
        emit(out_path, os.str());
      }
      return 0;
    }

    if (*ver) return run_verify(suite, seed);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

namespace {

int run_verify(const std::string& suite, std::uint64_t seed) {
  Rng rng(seed);
  CheckList cl;

  if (suite == "charfuncs") {
    double purity_err = 0, cross_err = 0, twist_err = 0;
    for (int rep = 0; rep < 100; ++rep) {
      const int n = 1 + rep % 3;
      const double d = 1 << n;
      const Matrix rho = random_density(n, rng);
      purity_err = std::max(
          purity_err,
          std::abs(char_vector(n, rho).l2_squared() - d * purity(rho)));
      const DenseState phi = random_state(n, rng);
      const Matrix proj = density(phi);
      const Matrix O = fidelity_observable(phi);
      const auto with_o = cross_chars(n, rho, O);
      const auto with_p = cross_chars(n, rho, proj);
      cross_err = std::max(cross_err,
                           std::abs(with_o.cross_l2_squared() -
                                    (with_p.cross_l2_squared() - 1.0)));
      if (n <= 2) {
        // twisted chars against the dense definition tr(rho P O P)
        double err = 0;
        for (std::int64_t i = 0; i < d * d; ++i) {
          const Matrix pm =
              pauli_matrix(pauli_from_index(n, static_cast<std::uint64_t>(i)));
          err = std::max(err, std::abs(with_o.twisted[i] -
                                       (rho * pm * O * pm).trace().real()));
        }
        twist_err = std::max(twist_err, err);
      }
    }
    cl.add("char-norm-vs-purity", purity_err, 1e-9);
    cl.add("cross-norm-fidelity-shift", cross_err, 1e-9);
    cl.add("twisted-char-dense-oracle", twist_err, 1e-9);
  } else if (suite == "commutant") {
    const auto subs = sigma44_enumerate();
    double axioms = subs.size() == 30 ? 0 : 1;
    for (const auto& t : subs) axioms += is_stochastic_lagrangian(t) ? 0 : 1;
    cl.add("subspace-axioms", axioms, 0);
    const int expected_rank[4] = {0, 15, 29, 30};
    for (int n = 1; n <= 3; ++n) {
      cl.add("gram-rank-n" + std::to_string(n),
             std::abs(gram_spectrum(n).rank - expected_rank[n]), 0);
      const auto dt = dimension_table(n);
      const auto dc = dimension_table_closed(n);
      double err = 0;
      for (int i = 0; i < 3; ++i)
        err = std::max({err, std::abs(dt[i].total - dc[i].total),
                        std::abs(dt[i].plus - dc[i].plus)});
      cl.add("dimension-table-n" + std::to_string(n), err, 1e-6);
    }
  } else if (suite == "omega") {
    Rng zero(0);
    const Matrix omega = omega_empirical(
        EnsembleSpec{EnsembleSpec::Kind::Clifford, 1, 0, 0},
        Matrix::Identity(2, 2), 0, zero);
    const auto r = orbit_operators(1);
    cl.add("omega-cl1-orbit-identity",
           (omega - ((r[0] + r[3]) / 12).cast<Complex>()).norm(), 1e-12);
    const EnsembleSpec cl2{EnsembleSpec::Kind::Clifford, 2, 0, 0};
    const KappaSet ke = kappa_extract(omega_closed(cl2), 2);
    const KappaSet kc = kappa_closed(cl2);
    cl.add("kappa-roundtrip-n2",
           std::max({std::abs(ke.k4_plus - kc.k4_plus),
                     std::abs(ke.k4_minus - kc.k4_minus),
                     std::abs(ke.k22_plus - kc.k22_plus),
                     std::abs(ke.k22_minus - kc.k22_minus),
                     std::abs(ke.k31 - kc.k31)}),
           1e-10);
    double vs_err = 0;
    const Matrix om1 = omega_closed(EnsembleSpec{
        EnsembleSpec::Kind::Clifford, 1, 0, 0});
    for (int rep = 0; rep < 100; ++rep) {
      const Matrix O = random_traceless_hermitian(1, rng);
      const Matrix rho = random_density(1, rng);
      vs_err = std::max(vs_err, std::abs(vstar_via_omega(om1, O, rho) -
                                         vstar_clifford(O, rho)));
    }
    cl.add("vstar-via-omega-vs-clifford", vs_err, 1e-10);
  } else if (suite == "variance-oracle") {
    double mean_err = 0, v_err = 0, vs_err = 0;
    for (int rep = 0; rep < 5; ++rep) {
      const Matrix O = random_traceless_hermitian(1, rng);
      const Matrix rho = random_density(1, rng);
      const std::int64_t d = 2;
      double e1 = 0, e2 = 0, e_cond_sq = 0;
      const std::uint64_t count = clifford_group_order(1);
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        const Matrix u =
            dense_unitary(clifford_to_circuit(clifford_from_index(1, idx)));
        const Matrix od = u * O * u.adjoint();
        const Matrix rd = u * rho * u.adjoint();
        double cond = 0;
        for (std::int64_t b = 0; b < d; ++b) {
          const double p = rd(b, b).real();
          const double snap = (d + 1) * od(b, b).real();
          e1 += p * snap;
          e2 += p * snap * snap;
          cond += p * snap;
        }
        e_cond_sq += cond * cond;
      }
      e1 /= count;
      e2 /= count;
      e_cond_sq /= count;
      mean_err = std::max(mean_err, std::abs(e1 - (O * rho).trace().real()));
      v_err = std::max(v_err, std::abs(e2 - e1 * e1 - v_single(O, rho)));
      vs_err = std::max(vs_err,
                        std::abs(e_cond_sq - e1 * e1 - vstar_clifford(O, rho)));
    }
    cl.add("enumeration-unbiasedness", mean_err, 1e-10);
    cl.add("enumeration-v", v_err, 1e-9);
    cl.add("enumeration-vstar", vs_err, 1e-9);
    cl.add("fidelity-closed-values",
           std::max({std::abs(vstar_4design_fidelity(4) - 2.0 / 7),
                     std::abs(vstar_clifford_fidelity(2, 0) - 0.5),
                     std::abs(vstar_tuk_fidelity(2, 0, 1) - 0.125)}),
           1e-12);
  } else if (suite == "bounds") {
    double chain_err = 0, nonneg = 0, scaling_err = 0, ab_err = 0;
    for (int rep = 0; rep < 500; ++rep) {
      const int n = 1 + rep % 2;
      const double d = 1 << n;
      const Matrix O = random_traceless_hermitian(n, rng);
      const Matrix rho = random_density(n, rng);
      const double t = (O * rho).trace().real();
      const double vt = v_triangle(O, rho);
      const double vs = vstar_clifford(O, rho);
      chain_err =
          std::max(chain_err, std::abs(vs - (vt - t * t / (d + 2))));
      nonneg = std::max({nonneg, -vs, -v_single(O, rho), -vt,
                         -vstar_4design(O, rho)});
      scaling_err = std::max(
          scaling_err, std::abs(depolarized(vs, 0.3) - 0.49 * vs));
      // 0 < alpha_k <= beta_k < gamma^k and the power chain, valid for k <= n
      const int nn = 2 + rep % 11;
      const int kk = 1 + rep % nn;
      const double dd = std::pow(2.0, nn);
      const int ll = 1 + rep % 6;
      const auto ab = alpha_beta(dd, kk);
      const auto ab1 = alpha_beta(dd, 1);
      const double gk = std::pow(0.75, kk);
      const double al = std::pow(ab.alpha, ll), bl = std::pow(ab.beta, ll);
      ab_err = std::max({ab_err, -ab.alpha, ab.alpha - ab.beta, ab.beta - gk,
                         std::pow(ab1.alpha, kk * ll) - al, al - bl,
                         bl - std::pow(ab1.beta, kk * ll)});
      if (kk + 1 <= nn) {
        const auto next = alpha_beta(dd, kk + 1);
        ab_err = std::max({ab_err, next.alpha - ab.alpha,
                           next.beta - ab.beta});
      }
    }
    cl.add("triangle-chain", chain_err, 1e-8);
    cl.add("variance-nonnegativity", nonneg, 1e-8);
    cl.add("depolarizing-scaling", scaling_err, 1e-10);
    cl.add("alpha-beta-order", ab_err, 1e-8);
  } else {
    std::cerr << "error: unknown verify suite '" << suite << "'\n";
    return 2;
  }

  const json config = {{"suite", suite}, {"seed", seed}};
  std::cout << make_report(config, {{"checks", cl.items}},
                           {{"all_pass", cl.all_pass}})
                   .dump(2)
            << "\n";
  return cl.all_pass ? 0 : 1;
}

}  // namespace
