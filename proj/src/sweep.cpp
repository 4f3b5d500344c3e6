#include "sos/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

namespace sos::io {

std::size_t SweepSpec::run_count() const {
  return strategies.size() * selfish_fractions.size() * pause_times.size() * seeds.size();
}

SweepSpec default_spec() {
  SweepSpec spec;
  spec.selfish_fractions = {0.04, 0.10, 0.25, 0.50, 0.75, 0.90};
  spec.pause_times = {0, 2, 4, 6, 8, 10, 12, 14, 16};
  spec.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  spec.strategies = {sim::Strategy::Sos, sim::Strategy::SsarLike, sim::Strategy::CaisLike,
                     sim::Strategy::NoIncentive};
  return spec;
}

namespace {

double parse_double(const std::string& value, const std::string& context) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError(context + ": expected a number, got '" + value + "'");
  }
  if (used != value.size()) {
    throw ConfigError(context + ": expected a number, got '" + value + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& value, const std::string& context) {
  double v = parse_double(value, context);
  if (v < 0 || v != std::floor(v)) {
    throw ConfigError(context + ": expected a non-negative integer, got '" + value + "'");
  }
  return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string& value, const std::string& context) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(context + ": expected a boolean, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    const auto begin = item.find_first_not_of(" \t");
    const auto end = item.find_last_not_of(" \t");
    if (begin == std::string::npos) continue;
    parts.push_back(item.substr(begin, end - begin + 1));
  }
  return parts;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  const auto end = s.find_last_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  return s.substr(begin, end - begin + 1);
}

}  // namespace

void apply_key(SweepSpec& spec, const std::string& key, const std::string& value,
               const std::string& context) {
  ScenarioConfig& c = spec.base;
  if (key == "area_width") c.area_width = parse_double(value, context);
  else if (key == "area_height") c.area_height = parse_double(value, context);
  else if (key == "n_nodes") c.n_nodes = static_cast<std::size_t>(parse_u64(value, context));
  else if (key == "t_range") c.t_range = parse_double(value, context);
  else if (key == "energy_init") c.energy_init = parse_double(value, context);
  else if (key == "tx_power") c.tx_power = parse_double(value, context);
  else if (key == "rx_power") c.rx_power = parse_double(value, context);
  else if (key == "selfish_fraction") c.selfish_fraction = parse_double(value, context);
  else if (key == "pause_time") c.pause_time = parse_double(value, context);
  else if (key == "sim_duration") c.sim_duration = parse_double(value, context);
  else if (key == "cbr_interval") c.traffic.cbr_interval_s = parse_double(value, context);
  else if (key == "packet_size") c.traffic.packet_size = static_cast<std::int64_t>(parse_u64(value, context));
  else if (key == "header_size") c.traffic.header_size = static_cast<std::int64_t>(parse_u64(value, context));
  else if (key == "seed") c.seed = parse_u64(value, context);
  else if (key == "f_b") c.f_b = parse_double(value, context);
  else if (key == "p_f") c.p_f = parse_double(value, context);
  else if (key == "bitrate") c.bitrate_bps = parse_double(value, context);
  else if (key == "bundle_ttl") c.bundle_ttl_s = parse_double(value, context);
  else if (key == "buffer_capacity") c.buffer_capacity = parse_double(value, context);
  else if (key == "t_election") c.election_period_s = parse_double(value, context);
  else if (key == "rehab_p") c.rehab_p = parse_double(value, context);
  else if (key == "social_selfish_share") c.social_selfish_share = parse_double(value, context);
  else if (key == "rd_rewards_centrality") c.rd_rewards_centrality = parse_bool(value, context);
  else if (key == "speed_min") c.speed_min = parse_double(value, context);
  else if (key == "speed_max") c.speed_max = parse_double(value, context);
  else if (key == "fusion_variant") {
    if (value == "worked") c.fusion_variant = FusionVariant::WorkedExample;
    else if (value == "eq21") c.fusion_variant = FusionVariant::Eq21Literal;
    else throw ConfigError(context + ": fusion_variant must be 'worked' or 'eq21'");
  } else if (key == "weight_coeffs") {
    const auto parts = split_list(value);
    if (parts.size() != 5) {
      throw ConfigError(context + ": weight_coeffs needs exactly 5 comma-separated values");
    }
    std::array<double, 5> coeffs{};
    for (std::size_t i = 0; i < 5; ++i) coeffs[i] = parse_double(parts[i], context);
    c.weight_coeffs = coeffs;
  } else if (key == "selfish_fractions") {
    spec.selfish_fractions.clear();
    for (const auto& p : split_list(value)) {
      spec.selfish_fractions.push_back(parse_double(p, context));
    }
  } else if (key == "pause_times") {
    spec.pause_times.clear();
    for (const auto& p : split_list(value)) spec.pause_times.push_back(parse_double(p, context));
  } else if (key == "seeds") {
    spec.seeds.clear();
    for (const auto& p : split_list(value)) spec.seeds.push_back(parse_u64(p, context));
  } else if (key == "strategies") {
    spec.strategies.clear();
    for (const auto& p : split_list(value)) {
      spec.strategies.push_back(sim::strategy_from_string(p));
    }
  } else {
    throw ConfigError(context + ": unknown key '" + key + "'");
  }
}

SweepSpec parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  SweepSpec spec = default_spec();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string context = path + ":" + std::to_string(line_no);
    std::string text = trim(line);
    if (auto hash = text.find('#'); hash != std::string::npos) text = trim(text.substr(0, hash));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ConfigError(context + ": malformed section header");
      continue;  // sections are organizational only
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(context + ": expected key = value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ConfigError(context + ": empty key");
    apply_key(spec, key, value, context);
  }

  if (spec.selfish_fractions.empty()) throw ConfigError(path + ": selfish_fractions is empty");
  if (spec.pause_times.empty()) throw ConfigError(path + ": pause_times is empty");
  if (spec.seeds.empty()) throw ConfigError(path + ": seeds is empty");
  if (spec.strategies.empty()) throw ConfigError(path + ": strategies is empty");
  for (double f : spec.selfish_fractions) {
    if (f < 0 || f > 1) throw ConfigError(path + ": selfish_fractions must lie in [0,1]");
  }
  spec.base.validate();
  return spec;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned parallelism) {
  struct Cell {
    sim::Strategy strategy;
    double fraction;
    double pause;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  cells.reserve(spec.run_count());
  for (sim::Strategy s : spec.strategies) {
    for (double f : spec.selfish_fractions) {
      for (double p : spec.pause_times) {
        for (std::uint64_t seed : spec.seeds) {
          cells.push_back({s, f, p, seed});
        }
      }
    }
  }

  SweepResult result;
  result.spec = spec;
  result.runs.resize(cells.size());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size() || failed.load()) return;
      const Cell& cell = cells[i];
      ScenarioConfig config = spec.base;
      config.selfish_fraction = cell.fraction;
      config.pause_time = cell.pause;
      config.seed = cell.seed;
      try {
        result.runs[i] = sim::run(config, cell.strategy);
        if (!result.runs[i].audit.conserved() || !result.runs[i].audit.ledger_replay_ok) {
          throw std::logic_error("run audit failed");
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failed.exchange(true)) {
          std::ostringstream what;
          what << "run failed (strategy=" << sim::to_string(cell.strategy)
               << " selfish=" << cell.fraction << " pause=" << cell.pause
               << " seed=" << cell.seed << "): " << e.what();
          failure = what.str();
        }
        return;
      }
    }
  };

  const unsigned workers = std::max(1u, parallelism);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error(failure);
  return result;
}

const char* const kCsvHeader =
    "strategy,selfish_pct,pause_time_s,seed,pdr,throughput_kbps,avg_delay_ms,avg_energy_j";

namespace {

// fixed %.6g keeps the CSV byte-stable across runs and parallelism levels
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string csv_row(const sim::MetricsRow& row) {
  std::ostringstream out;
  out << sim::to_string(row.strategy) << ',' << fmt(row.selfish_pct) << ','
      << fmt(row.pause_time_s) << ',' << row.seed << ',' << fmt(row.pdr) << ','
      << fmt(row.throughput_kbps) << ',' << fmt(row.avg_delay_ms) << ','
      << fmt(row.avg_energy_j);
  return out.str();
}

void write_csv(const SweepResult& result, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const sim::RunResult& run : result.runs) {
    out << csv_row(run.metrics) << '\n';
  }
}

std::string summary_table(const SweepResult& result) {
  struct Bucket {
    double pdr = 0, throughput = 0, delay = 0, energy = 0;
    long count = 0;
  };
  std::map<std::tuple<std::string, double, double>, Bucket> cells;
  for (const sim::RunResult& run : result.runs) {
    const sim::MetricsRow& m = run.metrics;
    Bucket& b = cells[{sim::to_string(m.strategy), m.selfish_pct, m.pause_time_s}];
    b.pdr += m.pdr;
    b.throughput += m.throughput_kbps;
    b.delay += m.avg_delay_ms;
    b.energy += m.avg_energy_j;
    b.count += 1;
  }
  std::ostringstream out;
  out << "strategy selfish_pct pause_s mean_pdr mean_throughput_kbps mean_delay_ms mean_energy_j\n";
  for (const auto& [key, b] : cells) {
    const auto& [strategy, pct, pause] = key;
    const double n = static_cast<double>(b.count);
    out << strategy << ' ' << fmt(pct) << ' ' << fmt(pause) << ' ' << fmt(b.pdr / n) << ' '
        << fmt(b.throughput / n) << ' ' << fmt(b.delay / n) << ' ' << fmt(b.energy / n) << '\n';
  }
  return out.str();
}

}  // namespace sos::io
