#ifndef CODIF_EXPERIMENTS_HPP
#define CODIF_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "codif/codification.hpp"
#include "codif/dynamics.hpp"

namespace codif {

enum class ExperimentKind { Fig2Ensemble, QuenchMI, QuenchCV, LongTimeAverage, PageTables };
enum class Units { Nats, Bits };
enum class InitialKind { Neel, YPlus };

std::string experiment_name(ExperimentKind k);
std::string initial_name(InitialKind k);

/// Raised by ExperimentConfig::validate.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an output file cannot be written; carries the path.
class OutputError : public std::runtime_error {
public:
  OutputError(const std::string& path, const std::string& what)
      : std::runtime_error(what + ": " + path), path_(path) {}
  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::QuenchMI;
  int n = 10;
  double J = 1.0;
  std::optional<double> hx;  // default 3J/2
  std::optional<double> hz;  // default -J/2
  double epsilon = 1e-4;
  std::uint64_t seed = 20140611;
  double tmax = 50.0;
  int steps = 501;
  double window_start = 25.0;
  double window_end = 50.0;
  SearchKind policy = SearchKind::ContiguousRight;
  bool both_policies = false;
  std::int64_t samples = 2000;
  Units units = Units::Nats;
  std::vector<InitialKind> initial{InitialKind::Neel, InitialKind::YPlus};
  std::string out;  // empty: stdout
  bool json_mirror = false;

  /// Defaults for an experiment; Fig2Ensemble uses n = 18 and epsilon 1e-2.
  static ExperimentConfig defaults_for(ExperimentKind kind);

  void validate() const;
  ChainParams chain() const;
  std::vector<double> times() const;
  nlohmann::json to_json() const;
};

enum class ColumnType { Integer, Real, Text };

struct Column {
  std::string name;
  ColumnType type = ColumnType::Real;
  bool nullable = false;
  bool information = false;  // value in nats; rescaled when units = bits
};

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

/// Typed rows plus a metadata block. The metadata (config echo, version,
/// seed, derived diagnostics) is deterministic; wall time and timestamp
/// live in `run_info` so they can be written on their own header line.
class ResultTable {
public:
  explicit ResultTable(std::vector<Column> columns) : columns_(std::move(columns)) {}

  const std::vector<Column>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  std::size_t column_index(const std::string& name) const;

  void add_row(std::vector<Cell> row);
  /// Column count, cell types and nullability of every row.
  void validate() const;
  /// Divides information-valued real cells by ln 2.
  void convert_to_bits();

  double real(std::size_t row, const std::string& column) const;
  std::int64_t integer(std::size_t row, const std::string& column) const;
  const std::string& text(std::size_t row, const std::string& column) const;

  nlohmann::json metadata = nlohmann::json::object();
  nlohmann::json run_info = nlohmann::json::object();

  /// Line 1: '#' + metadata JSON. Line 2: '#' + run_info JSON.
  /// Line 3: header. Reals use shortest round-trip formatting.
  std::string to_csv() const;
  nlohmann::json to_json() const;

private:
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// Writes `table` to `path` as CSV, plus `path`.json when json_mirror is
/// set. Validates the schema first. Throws OutputError on I/O failure.
void write_table(const ResultTable& table, const std::string& path, bool json_mirror);

std::string version_string();

ResultTable run_quench_mi(const ExperimentConfig& config);
ResultTable run_quench_cv(const ExperimentConfig& config);
ResultTable run_longtime_average(const ExperimentConfig& config);
ResultTable run_ensemble_fig2(const ExperimentConfig& config);
ResultTable run_page_tables(const ExperimentConfig& config);

/// Dispatches on config.experiment, stamps metadata and run_info, and
/// applies the units flag.
ResultTable run_experiment(const ExperimentConfig& config);

/// First time the series reaches each level 1..max(omega): the smallest
/// t with omega(t) >= level. Entry k corresponds to level k + 1.
std::vector<double> first_passage_times(const std::vector<double>& times, const std::vector<int>& omega);

}  // namespace codif

#endif  // CODIF_EXPERIMENTS_HPP
