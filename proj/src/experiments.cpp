#include "codif/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include "codif/ensembles.hpp"
#include "codif/infotheory.hpp"
#include "codif/page.hpp"
#include "codif/parallel.hpp"

#ifndef CODIF_VERSION
#define CODIF_VERSION "0.0.0"
#endif
#ifndef CODIF_GIT_DESCRIBE
#define CODIF_GIT_DESCRIBE "unknown"
#endif

namespace codif {

using nlohmann::json;

std::string experiment_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Fig2Ensemble: return "fig2";
    case ExperimentKind::QuenchMI: return "quench-mi";
    case ExperimentKind::QuenchCV: return "quench-cv";
    case ExperimentKind::LongTimeAverage: return "longtime";
    case ExperimentKind::PageTables: return "page-tables";
  }
  return "?";
}

std::string initial_name(InitialKind k) { return k == InitialKind::Neel ? "neel" : "yplus"; }

std::string version_string() { return std::string(CODIF_VERSION) + "+" + CODIF_GIT_DESCRIBE; }

// ---------------------------------------------------------------------------
// Configuration

ExperimentConfig ExperimentConfig::defaults_for(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  if (kind == ExperimentKind::Fig2Ensemble) {
    c.n = 18;
    c.epsilon = 1e-2;
  }
  if (kind == ExperimentKind::PageTables) c.epsilon = 1e-2;
  return c;
}

void ExperimentConfig::validate() const {
  const bool dense = experiment == ExperimentKind::QuenchMI || experiment == ExperimentKind::QuenchCV ||
                     experiment == ExperimentKind::LongTimeAverage;
  if (n < 2) throw ConfigError("n must be >= 2");
  if (dense && n > kMaxDenseSites) throw ConfigError("n must be <= " + std::to_string(kMaxDenseSites) + " for quench experiments");
  if (!dense && n > 30) throw ConfigError("n must be <= 30");
  if (!std::isfinite(J)) throw ConfigError("J must be finite");
  if ((hx && !std::isfinite(*hx)) || (hz && !std::isfinite(*hz))) throw ConfigError("fields must be finite");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ConfigError("epsilon must be positive");
  if (!(tmax >= 0.0) || !std::isfinite(tmax)) throw ConfigError("tmax must be >= 0");
  if (steps < 1) throw ConfigError("steps must be >= 1");
  if (steps > 1 && tmax == 0.0) throw ConfigError("steps > 1 needs tmax > 0");
  if (!(window_start <= window_end) || window_start < 0.0) throw ConfigError("window must satisfy 0 <= start <= end");
  if (experiment == ExperimentKind::LongTimeAverage) {
    const auto t = times();
    if (std::none_of(t.begin(), t.end(), [&](double x) { return x >= window_start && x <= window_end; })) {
      throw ConfigError("averaging window contains no time samples");
    }
  }
  if (samples < 2) throw ConfigError("samples must be >= 2");
  if (dense && initial.empty()) throw ConfigError("at least one initial state is required");
}

ChainParams ExperimentConfig::chain() const {
  ChainParams p = ChainParams::with_coupling(n, J);
  if (hx) p.hx = *hx;
  if (hz) p.hz = *hz;
  return p;
}

std::vector<double> ExperimentConfig::times() const { return uniform_grid(0.0, tmax, steps); }

json ExperimentConfig::to_json() const {
  json j;
  j["experiment"] = experiment_name(experiment);
  j["n"] = n;
  j["J"] = J;
  const ChainParams p = chain();
  j["hx"] = p.hx;
  j["hz"] = p.hz;
  j["epsilon"] = epsilon;
  j["seed"] = seed;
  j["tmax"] = tmax;
  j["steps"] = steps;
  j["window"] = {window_start, window_end};
  j["policy"] = both_policies ? "both" : SearchPolicy{policy, {}}.name();
  j["samples"] = samples;
  j["units"] = units == Units::Nats ? "nats" : "bits";
  std::vector<std::string> init;
  for (auto k : initial) init.push_back(initial_name(k));
  j["initial"] = init;
  return j;
}

// ---------------------------------------------------------------------------
// ResultTable

std::size_t ResultTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  throw std::out_of_range("ResultTable: no column named " + name);
}

void ResultTable::add_row(std::vector<Cell> row) { rows_.push_back(std::move(row)); }

void ResultTable::validate() const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const auto& row = rows_[r];
    if (row.size() != columns_.size()) {
      throw std::logic_error("ResultTable: row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                             " cells, expected " + std::to_string(columns_.size()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto& col = columns_[c];
      const Cell& cell = row[c];
      bool ok = false;
      if (std::holds_alternative<std::monostate>(cell)) ok = col.nullable;
      else if (col.type == ColumnType::Integer) ok = std::holds_alternative<std::int64_t>(cell);
      else if (col.type == ColumnType::Real) ok = std::holds_alternative<double>(cell);
      else ok = std::holds_alternative<std::string>(cell);
      if (!ok) {
        throw std::logic_error("ResultTable: row " + std::to_string(r) + " column '" + col.name + "' has the wrong type");
      }
    }
  }
}

void ResultTable::convert_to_bits() {
  for (auto& row : rows_) {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (columns_[c].information && std::holds_alternative<double>(row[c])) {
        row[c] = std::get<double>(row[c]) / std::numbers::ln2;
      }
    }
  }
}

double ResultTable::real(std::size_t row, const std::string& column) const {
  return std::get<double>(rows_.at(row).at(column_index(column)));
}

std::int64_t ResultTable::integer(std::size_t row, const std::string& column) const {
  return std::get<std::int64_t>(rows_.at(row).at(column_index(column)));
}

const std::string& ResultTable::text(std::size_t row, const std::string& column) const {
  return std::get<std::string>(rows_.at(row).at(column_index(column)));
}

namespace {

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string type_name(ColumnType t) {
  switch (t) {
    case ColumnType::Integer: return "integer";
    case ColumnType::Real: return "real";
    case ColumnType::Text: return "text";
  }
  return "?";
}

json cell_json(const Cell& cell) {
  if (std::holds_alternative<std::int64_t>(cell)) return std::get<std::int64_t>(cell);
  if (std::holds_alternative<double>(cell)) return std::get<double>(cell);
  if (std::holds_alternative<std::string>(cell)) return std::get<std::string>(cell);
  return nullptr;
}

}  // namespace

std::string ResultTable::to_csv() const {
  std::string out = "# " + metadata.dump() + "\n";
  out += "# " + run_info.dump() + "\n";
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    out += csv_escape(columns_[c].name);
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      const Cell& cell = row[c];
      if (std::holds_alternative<std::int64_t>(cell)) out += std::to_string(std::get<std::int64_t>(cell));
      else if (std::holds_alternative<double>(cell)) out += format_real(std::get<double>(cell));
      else if (std::holds_alternative<std::string>(cell)) out += csv_escape(std::get<std::string>(cell));
    }
    out += '\n';
  }
  return out;
}

json ResultTable::to_json() const {
  json cols = json::array();
  for (const auto& c : columns_) {
    cols.push_back({{"name", c.name}, {"type", type_name(c.type)}, {"nullable", c.nullable}});
  }
  json rows = json::array();
  for (const auto& row : rows_) {
    json r = json::array();
    for (const auto& cell : row) r.push_back(cell_json(cell));
    rows.push_back(std::move(r));
  }
  return {{"metadata", metadata}, {"run", run_info}, {"columns", cols}, {"rows", rows}};
}

void write_table(const ResultTable& table, const std::string& path, bool json_mirror) {
  table.validate();
  auto write = [](const std::string& p, const std::string& text) {
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    if (!os) throw OutputError(p, "cannot open output file");
    os << text;
    os.flush();
    if (!os) throw OutputError(p, "write failed");
  };
  write(path, table.to_csv());
  if (json_mirror) write(path + ".json", table.to_json().dump(2) + "\n");
}

std::vector<double> first_passage_times(const std::vector<double>& times, const std::vector<int>& omega) {
  if (times.size() != omega.size()) throw std::invalid_argument("first_passage_times: length mismatch");
  const int top = omega.empty() ? 0 : *std::max_element(omega.begin(), omega.end());
  std::vector<double> out;
  for (int level = 1; level <= top; ++level) {
    for (std::size_t i = 0; i < omega.size(); ++i) {
      if (omega[i] >= level) {
        out.push_back(times[i]);
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Experiments

namespace {

Column real_col(std::string name, bool info = true) { return {std::move(name), ColumnType::Real, false, info}; }
Column int_col(std::string name) { return {std::move(name), ColumnType::Integer, false, false}; }
Column text_col(std::string name) { return {std::move(name), ColumnType::Text, false, false}; }

std::string ladder_column(int b) { return "I_1_B" + std::to_string(b); }

std::string witness_string(const SiteMask& m) {
  std::string s;
  for (int site : m.sites()) {
    if (!s.empty()) s += ';';
    s += std::to_string(site);
  }
  return s;
}

PureState initial_state(InitialKind k, int n) { return k == InitialKind::Neel ? neel_state(n) : yplus_state(n); }

struct LadderPoint {
  std::vector<double> mi;  // index b-1: I(site 0; sites 1..b)
  double twice_s1 = 0.0;
};

std::vector<LadderPoint> ladders(const std::vector<TimedState>& states) {
  std::vector<LadderPoint> out(states.size());
  parallel_for(states.size(), [&](std::size_t i) {
    const PureState& psi = states[i].second;
    const SiteMask a(psi.shape(), {0});
    const auto prof = mi_profile(psi, a, SearchPolicy::contiguous());
    out[i].twice_s1 = prof.total.value();
    for (const auto& e : prof.entries) out[i].mi.push_back(e.mi.value());
  });
  return out;
}

json drift_record(const QuenchEngine& engine, const PureState& psi0, const std::vector<TimedState>& states) {
  const double e0 = energy(engine.hamiltonian(), psi0);
  double norm_drift = 0.0, energy_drift = 0.0;
  for (const auto& [t, psi] : states) {
    norm_drift = std::max(norm_drift, std::abs(psi.norm() - 1.0));
    energy_drift = std::max(energy_drift, std::abs(energy(engine.hamiltonian(), psi) - e0));
  }
  return {{"energy", e0},
          {"max_norm_drift", norm_drift},
          {"max_relative_energy_drift", energy_drift / std::max(1.0, std::abs(e0))}};
}

double window_mean(const std::vector<double>& times, const std::vector<double>& values, double lo, double hi) {
  double sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= lo && times[i] <= hi) {
      sum += values[i];
      ++count;
    }
  }
  return count ? sum / count : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

ResultTable run_quench_mi(const ExperimentConfig& config) {
  config.validate();
  const int n = config.n;
  std::vector<Column> cols{text_col("initial"), real_col("t", false)};
  for (int b = 1; b < n; ++b) cols.push_back(real_col(ladder_column(b)));
  cols.push_back(real_col("2S_1"));
  ResultTable table(std::move(cols));

  const QuenchEngine engine(config.chain());
  const auto times = config.times();
  json diagnostics = json::object();
  for (InitialKind kind : config.initial) {
    const PureState psi0 = initial_state(kind, n);
    const auto states = engine.evolve(psi0, times);
    const auto ladder = ladders(states);
    for (std::size_t i = 0; i < states.size(); ++i) {
      std::vector<Cell> row{initial_name(kind), times[i]};
      for (double v : ladder[i].mi) row.emplace_back(v);
      row.emplace_back(ladder[i].twice_s1);
      table.add_row(std::move(row));
    }
    diagnostics[initial_name(kind)] = drift_record(engine, psi0, states);
  }
  table.metadata["columns_note"] = "I_1_Bb = I(site 0; sites 1..b), zero-based sites; 2S_1 = 2 S(site 0)";
  table.metadata["diagnostics"] = diagnostics;
  return table;
}

ResultTable run_quench_cv(const ExperimentConfig& config) {
  config.validate();
  const int n = config.n;
  ResultTable table({text_col("initial"), text_col("policy"), real_col("t", false), int_col("omega_sites"),
                     real_col("omega_log"), real_col("deficit"), text_col("witness")});
  std::vector<SearchPolicy> policies;
  if (config.both_policies) policies = {SearchPolicy::contiguous(), SearchPolicy::exhaustive()};
  else policies = {SearchPolicy{config.policy, {}}};

  const QuenchEngine engine(config.chain());
  const auto times = config.times();
  const SiteMask a(LatticeShape(n), {0});
  json summary = json::object();
  for (InitialKind kind : config.initial) {
    const PureState psi0 = initial_state(kind, n);
    const auto states = engine.evolve(psi0, times);
    for (const auto& policy : policies) {
      const auto series = cv_time_series(states, a, config.epsilon, policy);
      std::vector<int> omega;
      std::vector<double> omega_d;
      for (const auto& [t, cv] : series) {
        table.add_row({initial_name(kind), policy.name(), t, std::int64_t{cv.omega_sites}, cv.omega_log, cv.deficit,
                       witness_string(cv.witness)});
        omega.push_back(cv.omega_sites);
        omega_d.push_back(cv.omega_sites);
      }
      summary[initial_name(kind)][policy.name()] = {
          {"first_passage_times", first_passage_times(times, omega)},
          {"window_mean_omega_sites", window_mean(times, omega_d, config.window_start, config.window_end)}};
    }
    summary[initial_name(kind)]["drift"] = drift_record(engine, psi0, states);
  }
  table.metadata["summary"] = summary;
  table.metadata["columns_note"] = "A = site 0; witness lists zero-based sites of the minimizing subsystem";
  return table;
}

ResultTable run_longtime_average(const ExperimentConfig& config) {
  config.validate();
  const int n = config.n;
  std::vector<Column> cols{int_col("b")};
  for (InitialKind kind : config.initial) cols.push_back(real_col("I_" + initial_name(kind)));
  cols.push_back(real_col("I_haar_mc"));
  cols.push_back(real_col("I_haar_mc_se"));
  cols.push_back(real_col("I_page"));
  ResultTable table(std::move(cols));

  const QuenchEngine engine(config.chain());
  const auto times = config.times();
  std::vector<std::vector<double>> curves;
  json twice_s1 = json::object();
  for (InitialKind kind : config.initial) {
    const auto states = engine.evolve(initial_state(kind, n), times);
    const auto ladder = ladders(states);
    std::vector<double> curve;
    for (int b = 1; b < n; ++b) {
      std::vector<double> series;
      for (const auto& p : ladder) series.push_back(p.mi[b - 1]);
      curve.push_back(window_mean(times, series, config.window_start, config.window_end));
    }
    std::vector<double> s1;
    for (const auto& p : ladder) s1.push_back(p.twice_s1);
    twice_s1[initial_name(kind)] = window_mean(times, s1, config.window_start, config.window_end);
    curves.push_back(std::move(curve));
  }

  HaarSampler sampler(LatticeShape(n), config.seed);
  const auto haar = mc_average_mi_curve(sampler, 1, config.samples);
  for (int b = 1; b < n; ++b) {
    std::vector<Cell> row{std::int64_t{b}};
    for (const auto& c : curves) row.emplace_back(c[b - 1]);
    row.emplace_back(haar[b - 1].mean);
    row.emplace_back(haar[b - 1].std_error);
    row.emplace_back(page_average_mi(1, b, n).value());
    table.add_row(std::move(row));
  }
  table.metadata["window_mean_2S_1"] = twice_s1;
  table.metadata["columns_note"] = "I_x = window-averaged I(site 0; sites 1..b); Haar columns are ensemble means";
  return table;
}

ResultTable run_ensemble_fig2(const ExperimentConfig& config) {
  config.validate();
  const int n = config.n;
  const int a1 = std::max(1, static_cast<int>(std::lround(n / 9.0)));
  const int a2 = std::max(1, static_cast<int>(std::lround(2.0 * n / 9.0)));
  if (2 * a2 > n) throw ConfigError("fig2: n too small for the a/n = 2/9 curve");
  const bool with_mc = n <= 12;

  std::vector<int> sizes{a1};
  if (a2 != a1) sizes.push_back(a2);

  auto nullable = [](Column c) {
    c.nullable = true;
    return c;
  };
  std::vector<Column> cols{int_col("b"), real_col("b_over_n", false)};
  for (int a : sizes) {
    const std::string tag = "a" + std::to_string(a);
    cols.push_back(nullable(real_col("I_" + tag)));
    cols.push_back(nullable(real_col("I_" + tag + "_asymptotic")));
    cols.push_back(nullable(text_col("regime_" + tag)));
    if (with_mc) {
      cols.push_back(nullable(real_col("mc_" + tag)));
      cols.push_back(nullable(real_col("mc_" + tag + "_se")));
    }
  }
  ResultTable table(std::move(cols));

  std::vector<std::vector<MCEstimate>> mc;
  if (with_mc) {
    HaarSampler sampler(LatticeShape(n), config.seed);
    for (int a : sizes) mc.push_back(mc_average_mi_curve(sampler, a, config.samples));
  } else {
    table.metadata["warnings"] = {"Monte Carlo columns omitted: n=" + std::to_string(n) + " exceeds 12"};
  }

  for (int b = 1; b <= n - a1; ++b) {
    std::vector<Cell> row{std::int64_t{b}, static_cast<double>(b) / n};
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      const int a = sizes[k];
      if (b <= n - a) {
        row.emplace_back(page_average_mi(a, b, n).value());
        row.emplace_back(page_regime_asymptotic(a, b, n));
        row.emplace_back(regime_name(classify_regime(a, b, n)));
        if (with_mc) {
          row.emplace_back(mc[k][b - 1].mean);
          row.emplace_back(mc[k][b - 1].std_error);
        }
      } else {
        const int blanks = with_mc ? 5 : 3;
        for (int i = 0; i < blanks; ++i) row.emplace_back(std::monostate{});
      }
    }
    table.add_row(std::move(row));
  }

  // Gaps between adjacent-regime expressions at integer tie points.
  json gaps = json::object();
  for (int a : sizes) {
    json g = json::array();
    auto record = [&](int b, PageRegime lo, PageRegime hi) {
      if (b < 0 || b > n - a) return;
      g.push_back({{"b", b},
                   {"between", regime_name(lo) + "|" + regime_name(hi)},
                   {"exact_gap", std::abs(page_average_mi_in_regime(a, b, n, lo) - page_average_mi_in_regime(a, b, n, hi))},
                   {"asymptotic_gap",
                    std::abs(page_regime_asymptotic_in(a, b, n, lo) - page_regime_asymptotic_in(a, b, n, hi))}});
    };
    if (n % 2 == 0) {
      record(n / 2 - a, PageRegime::SmallSmall, PageRegime::SmallLarge);
      record(n / 2, PageRegime::SmallLarge, PageRegime::LargeB);
    }
    gaps["a" + std::to_string(a)] = g;
  }
  table.metadata["boundary_gaps"] = gaps;
  table.metadata["boundary_gap_bound"] = std::ldexp(1.0, -n + 3);
  table.metadata["curves"] = {{"a1", a1}, {"a2", a2}};
  return table;
}

ResultTable run_page_tables(const ExperimentConfig& config) {
  config.validate();
  const int n = config.n;
  ResultTable table({int_col("a"), int_col("b"), text_col("regime"), real_col("I_average"),
                     real_col("I_asymptotic"), real_col("S_a"), real_col("cv_sites", false),
                     real_col("cv_asymptote", false)});
  for (int a = 1; 2 * a <= n; ++a) {
    const double s = page_average_entropy(a, n).value();
    const auto cv = page_average_cv(a, n, config.epsilon);
    for (int b = 1; b <= n - a; ++b) {
      table.add_row({std::int64_t{a}, std::int64_t{b}, regime_name(classify_regime(a, b, n)),
                     page_average_mi(a, b, n).value(), page_regime_asymptotic(a, b, n), s, cv.sites, cv.asymptote});
    }
  }
  return table;
}

ResultTable run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ResultTable table = [&] {
    switch (config.experiment) {
      case ExperimentKind::Fig2Ensemble: return run_ensemble_fig2(config);
      case ExperimentKind::QuenchMI: return run_quench_mi(config);
      case ExperimentKind::QuenchCV: return run_quench_cv(config);
      case ExperimentKind::LongTimeAverage: return run_longtime_average(config);
      case ExperimentKind::PageTables: return run_page_tables(config);
    }
    throw ConfigError("unknown experiment");
  }();
  if (config.units == Units::Bits) table.convert_to_bits();
  table.metadata["config"] = config.to_json();
  table.metadata["version"] = version_string();
  table.metadata["seed"] = config.seed;
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  table.run_info = {{"wall_time_s", wall}, {"timestamp", stamp}, {"workers", worker_count()}};
  table.validate();
  return table;
}

}  // namespace codif
