#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sos/sim.hpp"

namespace sos::io {

/// Cartesian sweep definition: every (strategy, fraction, pause, seed)
/// combination becomes one run.
struct SweepSpec {
  ScenarioConfig base;
  std::vector<double> selfish_fractions;
  std::vector<double> pause_times;
  std::vector<std::uint64_t> seeds;
  std::vector<sim::Strategy> strategies;

  std::size_t run_count() const;
};

/// The stock sweep: all four strategies, the six standard selfish
/// fractions, pause times 0..16 s step 2, ten seeds.
SweepSpec default_spec();

/// Parses a flat key=value file ([section] headers are allowed and
/// ignored). Unknown keys are rejected. Errors name file, line and key.
SweepSpec parse_config(const std::string& path);

/// Applies one key=value assignment; exposed for flag overrides.
void apply_key(SweepSpec& spec, const std::string& key, const std::string& value,
               const std::string& context);

struct SweepResult {
  SweepSpec spec;
  std::vector<sim::RunResult> runs;  // in deterministic sweep order
};

/// Executes every run in the spec. Results come back in sweep order no
/// matter how many workers ran them; a failing run aborts with the cell
/// named.
SweepResult run_sweep(const SweepSpec& spec, unsigned parallelism);

extern const char* const kCsvHeader;

std::string csv_row(const sim::MetricsRow& row);
void write_csv(const SweepResult& result, std::ostream& out);

/// Per-cell PDR/throughput/delay/energy means over seeds, one line per
/// (strategy, fraction, pause).
std::string summary_table(const SweepResult& result);

}  // namespace sos::io
