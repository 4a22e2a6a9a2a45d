#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zeris/analytic.hpp"
#include "zeris/params.hpp"

namespace zeris {

enum class SweepVariable { PsDbm, Tau, N, N1 };
enum class Estimator { Analytic, Asymptotic, LargeN, MonteCarlo };

std::string to_string(SweepVariable v);
std::string to_string(Estimator e);
SweepVariable parse_sweep_variable(const std::string& s);
Estimator parse_estimator(const std::string& s);
std::vector<Estimator> parse_estimators(const std::string& csv);
std::vector<Mode> parse_modes(const std::string& csv);

struct SweepRange {
  double start = 0;
  double stop = 0;
  double step = 1;

  std::vector<double> values() const;
};

// A named set of parameter overrides applied on top of SweepSpec::fixed.
struct SeriesSpec {
  std::string label;
  std::vector<std::pair<std::string, std::string>> overrides;
};

struct SweepSpec {
  std::string name = "custom";
  SweepVariable variable = SweepVariable::PsDbm;
  SweepRange range{0, 60, 5};
  std::vector<Mode> modes{Mode::I(), Mode::II(), Mode::III()};
  std::vector<Estimator> estimators{Estimator::Analytic};
  std::uint64_t n_trials = 100000;
  std::uint64_t seed = 1;
  SystemParams fixed;
  std::vector<SeriesSpec> series;  // empty: one series labelled "base"
  unsigned threads = 0;

  void validate() const;
  std::vector<std::string> value_columns() const;
  std::vector<SeriesSpec> effective_series() const;
  SystemParams params_at(const SeriesSpec& s, double x) const;
};

struct SweepRow {
  std::string series;
  std::vector<double> values;  // aligned with SweepTable::columns; NaN marks an empty cell
  std::string notes;           // "column=reason" entries separated by ';'
};

struct SweepTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;

  std::optional<std::size_t> column(const std::string& name) const;
  double at(std::size_t row, const std::string& name) const;
  std::vector<double> column_values(const std::string& name, const std::string& series = {}) const;
  bool operator==(const SweepTable& o) const;
};

SweepTable run_sweep(const SweepSpec& spec);

void write_csv(std::ostream& out, const SweepTable& t);
SweepTable read_csv(std::istream& in);

const std::vector<std::string>& figure_presets();
SweepSpec figure_preset(const std::string& name);

}  // namespace zeris
