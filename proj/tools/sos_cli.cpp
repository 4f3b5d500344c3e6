// Batch front end: run one scenario, sweep a grid, or fuse a report file.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sos/fusion.hpp"
#include "sos/sweep.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string variant = "worked";
};

void apply_variant(sos::ScenarioConfig& config, const std::string& variant) {
  if (variant == "worked") {
    config.fusion_variant = sos::FusionVariant::WorkedExample;
  } else if (variant == "eq21") {
    config.fusion_variant = sos::FusionVariant::Eq21Literal;
  } else {
    throw sos::ConfigError("--variant: must be 'worked' or 'eq21'");
  }
}

int cmd_run(const CommonFlags& common, const std::vector<std::string>& overrides,
            const std::string& strategy_name, const std::string& out_path,
            const std::string& trace_path) {
  sos::io::SweepSpec spec =
      common.config_path.empty() ? sos::io::default_spec() : sos::io::parse_config(common.config_path);
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw sos::ConfigError("--set: expected key=value, got '" + kv + "'");
    sos::io::apply_key(spec, kv.substr(0, eq), kv.substr(eq + 1), "--set " + kv);
  }
  apply_variant(spec.base, common.variant);
  spec.base.validate();

  const sos::sim::Strategy strategy = sos::sim::strategy_from_string(strategy_name);

  std::ofstream trace_file;
  sos::sim::TraceSink sink;
  if (!trace_path.empty()) {
    trace_file.open(trace_path);
    if (!trace_file) throw sos::ConfigError(trace_path + ": cannot open trace output");
    trace_file << "time,kind,node,detail\n";
    sink = [&trace_file](const sos::sim::TraceRow& row) {
      trace_file << row.time << ',' << sos::sim::to_string(row.kind) << ',' << row.node << ','
                 << row.detail << '\n';
    };
  }

  const sos::sim::RunResult result = sos::sim::run(spec.base, strategy, sink);

  std::ostringstream csv;
  csv << sos::io::kCsvHeader << '\n' << sos::io::csv_row(result.metrics) << '\n';
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw sos::ConfigError(out_path + ": cannot open output");
    out << csv.str();
  }
  std::cerr << "generated=" << result.audit.generated << " delivered=" << result.audit.delivered
            << " dropped=" << result.audit.dropped << " in_flight=" << result.audit.in_flight
            << '\n';
  return 0;
}

int cmd_sweep(const CommonFlags& common, const std::vector<std::string>& overrides,
              const std::string& out_path, unsigned parallelism) {
  sos::io::SweepSpec spec =
      common.config_path.empty() ? sos::io::default_spec() : sos::io::parse_config(common.config_path);
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw sos::ConfigError("--set: expected key=value, got '" + kv + "'");
    sos::io::apply_key(spec, kv.substr(0, eq), kv.substr(eq + 1), "--set " + kv);
  }
  apply_variant(spec.base, common.variant);
  spec.base.validate();

  std::cerr << "sweep: " << spec.run_count() << " runs, parallelism " << parallelism << '\n';
  const sos::io::SweepResult result = sos::io::run_sweep(spec, parallelism);

  std::ofstream out(out_path);
  if (!out) throw sos::ConfigError(out_path + ": cannot open output");
  sos::io::write_csv(result, out);
  std::cout << sos::io::summary_table(result);
  std::cerr << "wrote " << result.runs.size() << " rows to " << out_path << '\n';
  return 0;
}

// Report file: one report per line, "cooperative 0.7" or "selfish 0.3"
// (initials c/s work too).
int cmd_fuse(const std::string& reports_path, const std::string& variant) {
  std::ifstream in(reports_path);
  if (!in) throw sos::ConfigError(reports_path + ": cannot open report file");
  std::vector<std::pair<sos::fusion::Verdict, sos::fusion::ImportanceFactor>> reports;
  std::string word;
  double factor = 0;
  while (in >> word >> factor) {
    sos::fusion::Verdict v;
    if (word == "cooperative" || word == "c" || word == "C") {
      v = sos::fusion::Verdict::Cooperative;
    } else if (word == "selfish" || word == "s" || word == "S") {
      v = sos::fusion::Verdict::Selfish;
    } else {
      throw sos::ConfigError(reports_path + ": expected 'cooperative' or 'selfish', got '" +
                             word + "'");
    }
    reports.emplace_back(v, sos::fusion::ImportanceFactor{factor});
  }
  const sos::FusionVariant fv = variant == "eq21" ? sos::FusionVariant::Eq21Literal
                                                  : sos::FusionVariant::WorkedExample;
  const auto breakdown = sos::fusion::cif_fuse_detailed(reports, fv);
  std::cout << "reports " << reports.size() << '\n'
            << "raw_cooperative " << breakdown.raw_cooperative << '\n'
            << "raw_selfish " << breakdown.raw_selfish << '\n'
            << "cooperative " << breakdown.fused.mass(sos::fusion::kCooperative) << '\n'
            << "selfish " << breakdown.fused.mass(sos::fusion::kSelfish) << '\n'
            << "verdict " << sos::fusion::to_string(sos::fusion::classify(breakdown.fused))
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SOS incentive mechanism simulator"};
  app.require_subcommand(1);

  CommonFlags common;
  std::vector<std::string> overrides;
  std::string strategy = "sos";
  std::string out_path;
  std::string trace_path;
  unsigned parallelism = 1;
  std::string reports_path;
  std::uint64_t seed_flag = 0;
  bool seed_set = false;

  CLI::App* run_cmd = app.add_subcommand("run", "run one scenario and print its metrics row");
  run_cmd->add_option("--config", common.config_path, "key=value config file");
  run_cmd->add_option("--seed", seed_flag, "override the scenario seed")
      ->each([&seed_set](const std::string&) { seed_set = true; });
  run_cmd->add_option("--strategy", strategy, "sos, ssar, cais or none");
  run_cmd->add_option("--set", overrides, "extra key=value overrides");
  run_cmd->add_option("--out", out_path, "metrics CSV path (stdout when omitted)");
  run_cmd->add_option("--trace", trace_path, "event trace CSV path");
  run_cmd->add_option("--variant", common.variant, "fusion variant: worked or eq21");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run the full grid and write a CSV");
  sweep_cmd->add_option("--config", common.config_path, "key=value config file");
  sweep_cmd->add_option("--set", overrides, "extra key=value overrides");
  sweep_cmd->add_option("--out", out_path, "metrics CSV path")->default_val("metrics.csv");
  sweep_cmd->add_option("--parallel", parallelism, "worker threads")->default_val(1);
  sweep_cmd->add_option("--variant", common.variant, "fusion variant: worked or eq21");

  CLI::App* fuse_cmd = app.add_subcommand("fuse", "fuse a monitor report file");
  fuse_cmd->add_option("--reports", reports_path, "report file path")->required();
  fuse_cmd->add_option("--variant", common.variant, "fusion variant: worked or eq21");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      if (seed_set) overrides.push_back("seed=" + std::to_string(seed_flag));
      return cmd_run(common, overrides, strategy, out_path, trace_path);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(common, overrides, out_path, parallelism);
    }
    if (fuse_cmd->parsed()) {
      return cmd_fuse(reports_path, common.variant);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
