#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "elm/experiment.hpp"

namespace elm {

// One row per record under the header
//   method,M,seed,test_error_pct,train_error_pct,train_seconds
// Doubles are printed in their shortest round-trippable form, so reloading
// reproduces the values (and any means over them) bit for bit. bp traces are
// not part of the CSV.
std::string to_csv(const std::vector<RunRecord>& records);

void write_csv(const std::vector<RunRecord>& records,
               const std::filesystem::path& path);
std::vector<RunRecord> read_csv(const std::filesystem::path& path);

// Single JSON document with fixed field order: config echo, per-M means,
// environment (cpu core count). Emitting the same report twice yields the
// same bytes.
std::string summary_json(const ExperimentConfig& cfg, const RunReport& report);

// Creates dir if needed and writes <dir>/runs.csv and <dir>/summary.json.
void emit_report(const ExperimentConfig& cfg, const RunReport& report,
                 const std::filesystem::path& dir);

// Parses a config document of the same shape the summary echoes. Missing
// keys keep their defaults; unknown keys are rejected. "m" is accepted as a
// shorthand for a single-entry "m_list".
ExperimentConfig config_from_json(const std::string& text);

}  // namespace elm
