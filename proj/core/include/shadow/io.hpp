/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef SHADOW_IO_HPP
#define SHADOW_IO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "shadow/simulate.hpp"

namespace shadow {

std::string artifact_version();

// Resolved-config blocks with every default materialized.
nlohmann::json json_ensemble(const EnsembleSpec& spec);
nlohmann::json json_run_config(const RunConfig& config);
nlohmann::json json_stats(const EstimatorStats& stats);
nlohmann::json json_table(const DataTable& table);

EnsembleSpec ensemble_from_name(const std::string& kind, int n, int k, int l);
SreFamily family_from_name(const std::string& name, int n, int k, double theta);

// Report layout: a single object {version, config, results, diagnostics}.
nlohmann::json make_report(const nlohmann::json& config,
                           const nlohmann::json& results,
                           const nlohmann::json& diagnostics = {});

// CSV: '#'-prefixed resolved-config lines, then a header row, then data.
void write_csv(std::ostream& os, const DataTable& table,
               const nlohmann::json& config);

// Binary operator dump: magic, version, rows, cols, then row-major
// complex128 entries; round-trips bit for bit.
void write_operator(std::ostream& os, const Matrix& m);
Matrix read_operator(std::istream& is);

}  // namespace shadow

#endif
