#include "zeris/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "zeris/error.hpp"
#include "zeris/monte_carlo.hpp"

namespace zeris {

namespace {

const std::vector<std::string> param_columns = {"Ps_dbm", "tau", "N", "N1", "N2"};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::PsDbm: return "Ps_dbm";
    case SweepVariable::Tau: return "tau";
    case SweepVariable::N: return "N";
    case SweepVariable::N1: return "N1";
  }
  return "?";
}

std::string to_string(Estimator e) {
  switch (e) {
    case Estimator::Analytic: return "analytic";
    case Estimator::Asymptotic: return "asymptotic";
    case Estimator::LargeN: return "large-N";
    case Estimator::MonteCarlo: return "monte-carlo";
  }
  return "?";
}

SweepVariable parse_sweep_variable(const std::string& s) {
  for (auto v : {SweepVariable::PsDbm, SweepVariable::Tau, SweepVariable::N, SweepVariable::N1})
    if (s == to_string(v)) return v;
  throw InvalidArgument("unknown sweep variable '" + s + "' (expected Ps_dbm, tau, N, N1)");
}

Estimator parse_estimator(const std::string& s) {
  if (s == "analytic") return Estimator::Analytic;
  if (s == "asymptotic") return Estimator::Asymptotic;
  if (s == "large-N" || s == "largeN") return Estimator::LargeN;
  if (s == "monte-carlo" || s == "mc") return Estimator::MonteCarlo;
  throw InvalidArgument("unknown estimator '" + s + "' (expected analytic, asymptotic, large-N, monte-carlo)");
}

std::vector<Estimator> parse_estimators(const std::string& csv) {
  std::vector<Estimator> out;
  for (auto& s : split(csv, ',')) out.push_back(parse_estimator(s));
  return out;
}

std::vector<Mode> parse_modes(const std::string& csv) {
  std::vector<Mode> out;
  for (auto& s : split(csv, ',')) out.push_back(parse_mode(s));
  return out;
}

std::vector<double> SweepRange::values() const {
  if (!(step > 0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start)
    throw InvalidArgument("sweep range must satisfy start <= stop and step > 0");
  auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = start + static_cast<double>(i) * step;
  return v;
}

std::vector<SeriesSpec> SweepSpec::effective_series() const {
  if (series.empty()) return {SeriesSpec{"base", {}}};
  return series;
}

SystemParams SweepSpec::params_at(const SeriesSpec& s, double x) const {
  ParamsBuilder b(fixed);
  for (auto& [k, v] : s.overrides) b.set(k, v);
  SystemParams base = b.build();
  ParamsBuilder at(base);
  switch (variable) {
    case SweepVariable::PsDbm: at.set("Ps_dbm", x); break;
    case SweepVariable::Tau: at.set("tau", x); break;
    case SweepVariable::N: at.set("N", x); break;
    case SweepVariable::N1: at.set("N1", x); break;
  }
  return at.build();
}

void SweepSpec::validate() const {
  auto grid = range.values();
  if (modes.empty()) throw InvalidArgument("sweep needs at least one mode");
  if (estimators.empty()) throw InvalidArgument("sweep needs at least one estimator");
  if (variable == SweepVariable::N1 && !(modes.size() == 1 && modes[0] == Mode::III()))
    throw InvalidArgument("an N1 sweep requires mode III only");
  bool mc = false;
  for (auto e : estimators) mc |= e == Estimator::MonteCarlo;
  if (mc && n_trials < 1000) throw InvalidArgument("monte-carlo estimator needs at least 1000 trials");
  for (auto& s : effective_series()) {
    if (s.label.empty() || s.label.find_first_of(",\"\n") != std::string::npos)
      throw InvalidArgument("series label must be non-empty and free of commas and quotes");
    for (double x : grid) params_at(s, x);
  }
}

std::vector<std::string> SweepSpec::value_columns() const {
  std::vector<std::string> cols = param_columns;
  for (auto m : modes) {
    std::string p = to_string(m) + "_";
    for (auto e : estimators) {
      switch (e) {
        case Estimator::Analytic:
          if (!m.has_closed_form()) break;
          for (auto k : {"jop", "jip", "see", "njiop"}) cols.push_back(p + k + "_analytic");
          break;
        case Estimator::Asymptotic:
          if (!m.has_closed_form()) break;
          cols.push_back(p + "jop_asymptotic");
          cols.push_back(p + "jip_asymptotic");
          break;
        case Estimator::LargeN:
          if (!m.has_closed_form()) break;
          cols.push_back(p + "jop_largeN");
          if (m.tag != ModeTag::I) cols.push_back(p + "jip_largeN");
          break;
        case Estimator::MonteCarlo:
          for (auto k : {"jop_mc", "jop_mc_se", "jip_mc", "jip_mc_se", "see_mc", "see_mc_se", "njiop_mc"})
            cols.push_back(p + k);
          break;
      }
    }
  }
  return cols;
}

std::optional<std::size_t> SweepTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  return std::nullopt;
}

double SweepTable::at(std::size_t row, const std::string& name) const {
  auto c = column(name);
  if (!c) throw InvalidArgument("no column '" + name + "'");
  return rows.at(row).values.at(*c);
}

std::vector<double> SweepTable::column_values(const std::string& name, const std::string& series) const {
  auto c = column(name);
  if (!c) throw InvalidArgument("no column '" + name + "'");
  std::vector<double> out;
  for (auto& r : rows)
    if (series.empty() || r.series == series) out.push_back(r.values[*c]);
  return out;
}

bool SweepTable::operator==(const SweepTable& o) const {
  if (meta != o.meta || columns != o.columns || rows.size() != o.rows.size()) return false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto &a = rows[i], &b = o.rows[i];
    if (a.series != b.series || a.notes != b.notes || a.values.size() != b.values.size()) return false;
    for (std::size_t j = 0; j < a.values.size(); ++j) {
      double x = a.values[j], y = b.values[j];
      if (std::isnan(x) != std::isnan(y)) return false;
      if (!std::isnan(x) && std::memcmp(&x, &y, sizeof x) != 0) return false;
    }
  }
  return true;
}

namespace {

struct CellWriter {
  const std::vector<std::string>& columns;
  std::map<std::string, std::size_t> index;
  SweepRow& row;
  std::vector<std::string> notes;

  CellWriter(const std::vector<std::string>& cols, SweepRow& r) : columns(cols), row(r) {
    for (std::size_t i = 0; i < cols.size(); ++i) index[cols[i]] = i;
    row.values.assign(cols.size(), NAN);
  }
  void put(const std::string& col, double v) { row.values.at(index.at(col)) = v; }
  void put(const std::string& col, const MetricValue& m) {
    put(col, m.value);
    if (m.clamped) note(col, "clamped");
    if (m.diag.fallback_nodes > 0) note(col, "fallback:" + std::to_string(m.diag.fallback_nodes));
  }
  void note(const std::string& col, const std::string& why) { notes.push_back(col + "=" + why); }
  template <typename F>
  void guard(const std::vector<std::string>& cols, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      for (auto& c : cols) {
        row.values.at(index.at(c)) = NAN;
        note(c, reason_code(e));
      }
    }
  }
  void finish() {
    std::string s;
    for (auto& n : notes) s += (s.empty() ? "" : ";") + n;
    row.notes = s;
  }
};

void compute_cell(const SweepSpec& spec, const std::vector<std::string>& cols, const SeriesSpec& series,
                  double x, std::uint64_t cell, SweepRow& row) {
  row.series = series.label;
  CellWriter w(cols, row);
  SystemParams p;
  try {
    p = spec.params_at(series, x);
  } catch (const std::exception& e) {
    w.note("row", reason_code(e));
    w.finish();
    return;
  }
  w.put("Ps_dbm", watts_to_dbm(p.Ps));
  w.put("tau", p.tau);
  w.put("N", p.N);
  w.put("N1", p.N1);
  w.put("N2", p.N2);

  std::optional<AnalyticModel> model;
  auto need_model = [&]() -> const AnalyticModel& {
    if (!model) model.emplace(p);
    return *model;
  };
  std::vector<Mode> mc_modes;
  for (auto e : spec.estimators) {
    for (auto m : spec.modes) {
      std::string pre = to_string(m) + "_";
      if (!m.has_closed_form() && e != Estimator::MonteCarlo) continue;
      switch (e) {
        case Estimator::Analytic: {
          std::vector<std::string> names;
          for (auto k : {"jop", "jip", "see", "njiop"}) names.push_back(pre + k + "_analytic");
          w.guard(names, [&] {
            auto& a = need_model();
            auto o = a.jop(m), i = a.jip(m);
            w.put(names[0], o);
            w.put(names[1], i);
            w.put(names[2], p.R / p.Ps * std::max(1.0 - o.value - i.value, 0.0));
            w.put(names[3], 0.5 * (o.value + i.value));
          });
          break;
        }
        case Estimator::Asymptotic:
          w.guard({pre + "jop_asymptotic"}, [&] { w.put(pre + "jop_asymptotic", need_model().jop_asymptotic(m)); });
          w.guard({pre + "jip_asymptotic"}, [&] { w.put(pre + "jip_asymptotic", need_model().jip_asymptotic(m)); });
          break;
        case Estimator::LargeN:
          w.guard({pre + "jop_largeN"}, [&] { w.put(pre + "jop_largeN", need_model().jop_large_n()); });
          if (m.tag != ModeTag::I)
            w.guard({pre + "jip_largeN"}, [&] { w.put(pre + "jip_largeN", need_model().jip_large_n(m)); });
          break;
        case Estimator::MonteCarlo:
          mc_modes.push_back(m);
          break;
      }
    }
  }
  if (!mc_modes.empty()) {
    MonteCarloOptions opt;
    opt.cell = cell;
    opt.threads = 1;
    auto est = estimate(mc_modes, p, spec.n_trials, spec.seed, opt);
    for (std::size_t i = 0; i < mc_modes.size(); ++i) {
      std::string pre = to_string(mc_modes[i]) + "_";
      w.put(pre + "jop_mc", est[i].jop.value);
      w.put(pre + "jop_mc_se", est[i].jop.std_error);
      w.put(pre + "jip_mc", est[i].jip.value);
      w.put(pre + "jip_mc_se", est[i].jip.std_error);
      w.put(pre + "see_mc", est[i].see.value);
      w.put(pre + "see_mc_se", est[i].see.std_error);
      w.put(pre + "njiop_mc", 0.5 * (est[i].jop.value + est[i].jip.value));
    }
  }
  w.finish();
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (auto& x : v) s += (s.empty() ? "" : sep) + x;
  return s;
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepTable t;
  t.columns = spec.value_columns();
  auto grid = spec.range.values();
  auto series = spec.effective_series();

  std::vector<std::string> modes, ests;
  for (auto m : spec.modes) modes.push_back(to_string(m));
  for (auto e : spec.estimators) ests.push_back(to_string(e));
  t.meta.emplace_back("tool", std::string("zeris ") + ZERIS_VERSION);
  t.meta.emplace_back("name", spec.name);
  t.meta.emplace_back("variable", to_string(spec.variable));
  t.meta.emplace_back("range", format_double(spec.range.start) + ":" + format_double(spec.range.stop) + ":" +
                                   format_double(spec.range.step));
  t.meta.emplace_back("modes", join(modes, ","));
  t.meta.emplace_back("estimators", join(ests, ","));
  t.meta.emplace_back("trials", std::to_string(spec.n_trials));
  t.meta.emplace_back("seed", std::to_string(spec.seed));
  for (auto& [k, v] : spec.fixed.describe()) t.meta.emplace_back("param." + k, v);
  for (auto& s : series) {
    std::vector<std::string> kv;
    for (auto& [k, v] : s.overrides) kv.push_back(k + "=" + v);
    t.meta.emplace_back("series." + s.label, join(kv, ";"));
  }

  const std::size_t cells = series.size() * grid.size();
  t.rows.resize(cells);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells; i = next++) {
      std::size_t si = i / grid.size(), gi = i % grid.size();
      compute_cell(spec, t.columns, series[si], grid[gi], (static_cast<std::uint64_t>(si) << 32) | gi, t.rows[i]);
    }
  };
  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cells));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return t;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const SweepTable& t) {
  for (auto& [k, v] : t.meta) out << "# " << k << "=" << v << "\n";
  out << "series";
  for (auto& c : t.columns) out << "," << c;
  out << ",notes\n";
  for (auto& r : t.rows) {
    out << csv_field(r.series);
    for (double v : r.values) out << "," << (std::isnan(v) ? std::string() : format_double(v));
    out << "," << csv_field(r.notes) << "\n";
  }
}

SweepTable read_csv(std::istream& in) {
  SweepTable t;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header && line.rfind("# ", 0) == 0) {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw InvalidArgument("malformed header line: " + line);
      t.meta.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
      continue;
    }
    auto f = parse_csv_line(line);
    if (!header) {
      if (f.size() < 2 || f.front() != "series" || f.back() != "notes")
        throw InvalidArgument("CSV header must start with 'series' and end with 'notes'");
      t.columns.assign(f.begin() + 1, f.end() - 1);
      header = true;
      continue;
    }
    if (f.size() != t.columns.size() + 2) throw InvalidArgument("CSV row has wrong field count");
    SweepRow r;
    r.series = f.front();
    r.notes = f.back();
    for (std::size_t i = 1; i + 1 < f.size(); ++i) r.values.push_back(f[i].empty() ? NAN : parse_double(f[i]));
    t.rows.push_back(std::move(r));
  }
  if (!header) throw InvalidArgument("CSV has no header row");
  return t;
}

const std::vector<std::string>& figure_presets() {
  static const std::vector<std::string> names = {"fig2", "fig3", "fig6", "fig7", "fig8", "fig9"};
  return names;
}

SweepSpec figure_preset(const std::string& name) {
  SweepSpec s;
  s.name = name;
  s.n_trials = 100000;
  s.seed = 1;
  const std::vector<Mode> three{Mode::I(), Mode::II(), Mode::III()};
  if (name == "fig2") {
    s.range = {10, 80, 5};
    s.modes = three;
    s.estimators = {Estimator::Analytic, Estimator::Asymptotic, Estimator::MonteCarlo};
    s.series = {{"base", {}},
                {"d_pr=d_pu=15", {{"d_pr", "15"}, {"d_pu", "15"}}},
                {"d_ur=d_ra=15", {{"d_ur", "15"}, {"d_ra", "15"}}}};
  } else if (name == "fig3") {
    s.range = {10, 80, 5};
    s.modes = {Mode::I(), Mode::II(), Mode::III(), Mode::benchmark_I()};
    s.estimators = {Estimator::Analytic, Estimator::Asymptotic, Estimator::MonteCarlo};
    s.series = {{"N=30", {{"N", "30"}}}, {"N=60", {{"N", "60"}}}};
  } else if (name == "fig6") {
    s.range = {10, 80, 2.5};
    s.modes = three;
    s.estimators = {Estimator::Analytic, Estimator::MonteCarlo};
    s.series = {{"N=30", {{"N", "30"}}}, {"N=150", {{"N", "150"}}}};
  } else if (name == "fig7") {
    s.range = {20, 80, 1};
    s.modes = three;
    s.estimators = {Estimator::Analytic, Estimator::MonteCarlo};
    s.fixed.N = 60;
    s.fixed.N1 = 30;
    s.fixed.N2 = 30;
  } else if (name == "fig8") {
    s.variable = SweepVariable::Tau;
    s.range = {0.05, 0.95, 0.05};
    s.modes = three;
    s.estimators = {Estimator::Analytic, Estimator::MonteCarlo};
    s.series = {{"Ps=50dBm", {{"Ps_dbm", "50"}}}, {"Ps=70dBm", {{"Ps_dbm", "70"}}}, {"Ps=90dBm", {{"Ps_dbm", "90"}}}};
  } else if (name == "fig9") {
    s.range = {0, 60, 2};
    s.modes = {Mode::I(), Mode::II(), Mode::III(), Mode::benchmark_II()};
    s.estimators = {Estimator::Analytic, Estimator::MonteCarlo};
    s.fixed.N = 100;
    s.fixed.N1 = 50;
    s.fixed.N2 = 50;
  } else {
    throw InvalidArgument("unknown figure preset '" + name + "' (valid: " + join(figure_presets(), ", ") + ")");
  }
  return s;
}

}  // namespace zeris
