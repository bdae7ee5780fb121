/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef SHADOW_SIMULATE_HPP
#define SHADOW_SIMULATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "shadow/variance.hpp"

namespace shadow {

// Dense Haar sampling for the 4-design ensemble is limited to this size.
inline constexpr int kMaxHaarQubits = 8;

struct RunConfig {
  int n = 1;
  EnsembleSpec ensemble;
  int reuse = 1;         // measurements per sampled circuit (R)
  int num_circuits = 2;  // >= 2 so the between-circuit variance exists
  std::uint64_t seed = 0;
  double depolarize_p = 0;  // global depolarizing strength on the input state

  void validate() const;
};

struct EstimatorStats {
  double mean = 0;
  double vr_hat = 0;
  double v_hat = 0;
  double vstar_hat = 0;
  double se_mean = 0;
  double se_vr = 0;
  double se_v = 0;
  double se_vstar = 0;
  int num_circuits = 0;
  int reuse = 0;
};

// Either a Clifford-plus-T gate sequence or an explicit dense unitary (Haar).
struct SampledUnitary {
  bool is_dense = false;
  GateSequence seq;
  Matrix u;
};

// Observable: fidelity with the target state (scalable) or an explicit dense
// traceless O (desk scale only).
struct ObservableSpec {
  bool fidelity = true;
  Matrix dense;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

SampledUnitary sample_unitary(const EnsembleSpec& spec, Rng& rng);

// Snapshot values for outcome b after evolving the input by U.
double snapshot_fidelity(const DenseState& evolved, std::uint64_t b);
double snapshot_dense(const Matrix& rotated_o, std::uint64_t b);

// Thrifty-shadow Monte Carlo run with a one-way ANOVA split of the variance
// into the between-circuit part V_* and the single-shot part V.
EstimatorStats run_experiment(const RunConfig& config, const DenseState& target,
                              const ObservableSpec& obs);

struct DataTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct FigureParams {
  int n = 2;
  int num_circuits = 200;
  int reuse = 10;
  std::uint64_t seed = 1;
  double theta = 0;
  int k = 1;
  int l = 1;
  int samples = 100;  // random states / operator pairs for scatter figures
};

// Figure ids: random_states, var_types, interleaved_compare, depolarizing,
// upper_bound_scatter, ratio_scatter, ensemble_compare.
DataTable figure_dataset(const std::string& which, const FigureParams& p);

}  // namespace shadow

#endif
