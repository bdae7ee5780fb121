/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "shadow/io.hpp"

#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace shadow {

namespace {

const char kMagic[8] = {'S', 'H', 'D', 'W', 'O', 'P', '0', '1'};

std::string kind_name(EnsembleSpec::Kind kind) {
  switch (kind) {
    case EnsembleSpec::Kind::FourDesign: return "fourdesign";
    case EnsembleSpec::Kind::Clifford: return "clifford";
    case EnsembleSpec::Kind::Interleaved: return "interleaved";
    case EnsembleSpec::Kind::SimpleT: return "simplet";
  }
  return "?";
}

}  // namespace

std::string artifact_version() { return "1.0.0"; }

nlohmann::json json_ensemble(const EnsembleSpec& spec) {
  return {{"kind", kind_name(spec.kind)},
          {"n", spec.n},
          {"k", spec.k},
          {"l", spec.l}};
}

nlohmann::json json_run_config(const RunConfig& config) {
  return {{"n", config.n},
          {"ensemble", json_ensemble(config.ensemble)},
          {"reuse", config.reuse},
          {"num_circuits", config.num_circuits},
          {"seed", config.seed},
          {"depolarize_p", config.depolarize_p}};
}

nlohmann::json json_stats(const EstimatorStats& stats) {
  return {{"mean", stats.mean},
          {"vr_hat", stats.vr_hat},
          {"v_hat", stats.v_hat},
          {"vstar_hat", stats.vstar_hat},
          {"se_mean", stats.se_mean},
          {"se_vr", stats.se_vr},
          {"se_v", stats.se_v},
          {"se_vstar", stats.se_vstar},
          {"num_circuits", stats.num_circuits},
          {"reuse", stats.reuse}};
}

nlohmann::json json_table(const DataTable& table) {
  return {{"columns", table.columns}, {"rows", table.rows}};
}

EnsembleSpec ensemble_from_name(const std::string& kind, int n, int k, int l) {
  EnsembleSpec spec;
  spec.n = n;
  spec.k = k;
  spec.l = l;
  if (kind == "fourdesign") spec.kind = EnsembleSpec::Kind::FourDesign;
  else if (kind == "clifford") spec.kind = EnsembleSpec::Kind::Clifford;
  else if (kind == "interleaved") spec.kind = EnsembleSpec::Kind::Interleaved;
  else if (kind == "simplet") spec.kind = EnsembleSpec::Kind::SimpleT;
  else throw std::invalid_argument("unknown ensemble kind '" + kind + "'");
  spec.validate();
  return spec;
}

SreFamily family_from_name(const std::string& name, int n, int k,
                           double theta) {
  SreFamily f;
  f.n = n;
  f.k = k;
  f.theta = theta;
  if (name == "w") f.kind = SreFamily::Kind::W;
  else if (name == "wlinear") f.kind = SreFamily::Kind::WLinear;
  else if (name == "phasedw") f.kind = SreFamily::Kind::PhasedW;
  else if (name == "snk") f.kind = SreFamily::Kind::Snk;
  else throw std::invalid_argument("unknown state family '" + name + "'");
  return f;
}

nlohmann::json make_report(const nlohmann::json& config,
                           const nlohmann::json& results,
                           const nlohmann::json& diagnostics) {
  nlohmann::json out;
  out["version"] = artifact_version();
  out["config"] = config;
  out["results"] = results;
  out["diagnostics"] = diagnostics.is_null() ? nlohmann::json::object()
                                             : diagnostics;
  return out;
}

void write_csv(std::ostream& os, const DataTable& table,
               const nlohmann::json& config) {
  os << "# version=" << artifact_version() << "\n";
  os << "# config=" << config.dump() << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << table.columns[i];
  os << "\n";
  os.precision(17);
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
}

void write_operator(std::ostream& os, const Matrix& m) {
  os.write(kMagic, sizeof(kMagic));
  const std::int64_t rows = m.rows(), cols = m.cols();
  os.write(reinterpret_cast<const char*>(&rows), sizeof(rows));
  os.write(reinterpret_cast<const char*>(&cols), sizeof(cols));
  for (std::int64_t r = 0; r < rows; ++r)
    for (std::int64_t c = 0; c < cols; ++c) {
      const Complex v = m(r, c);
      os.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
}

Matrix read_operator(std::istream& is) {
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(magic)) != 0)
    throw std::runtime_error("operator file: bad magic");
  std::int64_t rows = 0, cols = 0;
  is.read(reinterpret_cast<char*>(&rows), sizeof(rows));
  is.read(reinterpret_cast<char*>(&cols), sizeof(cols));
  if (!is || rows <= 0 || cols <= 0 || rows > (1 << 12) || cols > (1 << 12))
    throw std::runtime_error("operator file: bad shape");
  Matrix m(rows, cols);
  for (std::int64_t r = 0; r < rows; ++r)
    for (std::int64_t c = 0; c < cols; ++c) {
      Complex v;
      is.read(reinterpret_cast<char*>(&v), sizeof(v));
      m(r, c) = v;
    }
  if (!is) throw std::runtime_error("operator file: truncated");
  return m;
}

}  // namespace shadow
