#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "zeris/analytic.hpp"
#include "zeris/error.hpp"
#include "zeris/monte_carlo.hpp"
#include "zeris/sweep.hpp"

using namespace zeris;

namespace {

struct Common {
  std::string config;
  std::vector<std::string> sets;
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  std::string estimators;
  std::string out;
  int L = 0;
  unsigned threads = 0;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "key=value parameter file");
  app->add_option("--set", c.sets, "parameter override key=value (repeatable)");
  app->add_option("--seed", c.seed, "RNG seed");
  app->add_option("--trials", c.trials, "Monte Carlo trials per point");
  app->add_option("--estimators", c.estimators, "comma list of analytic, asymptotic, large-N, monte-carlo");
  app->add_option("--out", c.out, "output CSV file (default stdout)");
  app->add_option("--l", c.L, "quadrature points");
  app->add_option("--threads", c.threads, "worker threads (0: all cores)");
}

SystemParams resolve(const Common& c, SystemParams base = {}) {
  ParamsBuilder b(base);
  if (!c.config.empty()) b.read_file(c.config);
  for (auto& s : c.sets) b.assign(s);
  if (c.L > 0) b.set("L", static_cast<double>(c.L));
  return b.build();
}

void emit(const Common& c, const SweepTable& t) {
  if (c.out.empty()) {
    write_csv(std::cout, t);
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw InvalidArgument("cannot write '" + c.out + "'");
  write_csv(f, t);
}

void print(const std::string& key, double v) { std::cout << key << "=" << format_double(v) << "\n"; }

int run_metric(const Common& c, const std::string& mode_name, double ps_dbm, bool los) {
  SystemParams p = resolve(c);
  if (!std::isnan(ps_dbm)) p.Ps = dbm_to_watts(ps_dbm);
  p.validate();
  Mode m = parse_mode(mode_name);
  auto ests = c.estimators.empty() ? std::vector<Estimator>{Estimator::Analytic} : parse_estimators(c.estimators);
  std::cout << "mode=" << to_string(m) << "\n";
  print("Ps_dbm", watts_to_dbm(p.Ps));
  int status = 0;
  auto attempt = [&](const std::string& key, auto&& f) {
    try {
      MetricValue v = f();
      print(key, v.value);
      if (v.clamped) std::cout << key << ".clamped=1\n";
    } catch (const std::exception& e) {
      std::cout << key << "=\n" << key << ".reason=" << reason_code(e) << "\n";
      std::cerr << e.what() << "\n";
      status = 2;
    }
  };
  AnalyticModel a(p);
  for (auto e : ests) {
    switch (e) {
      case Estimator::Analytic:
        attempt("jop_analytic", [&] { return a.jop(m); });
        attempt("jip_analytic", [&] { return a.jip(m); });
        attempt("see_analytic", [&] { return a.see(m); });
        attempt("njiop_analytic", [&] { return a.normalized_jiop(m); });
        break;
      case Estimator::Asymptotic:
        attempt("jop_asymptotic", [&] { return a.jop_asymptotic(m); });
        attempt("jip_asymptotic", [&] { return a.jip_asymptotic(m); });
        break;
      case Estimator::LargeN:
        attempt("jop_largeN", [&] { return a.jop_large_n(); });
        attempt("jip_largeN", [&] { return a.jip_large_n(m); });
        break;
      case Estimator::MonteCarlo: {
        MonteCarloOptions opt;
        opt.los = los;
        opt.threads = c.threads;
        auto r = estimate(m, p, c.trials, c.seed, opt);
        print("jop_mc", r.jop.value);
        print("jop_mc_se", r.jop.std_error);
        print("jip_mc", r.jip.value);
        print("jip_mc_se", r.jip.std_error);
        print("see_mc", r.see.value);
        print("see_mc_se", r.see.std_error);
        print("trials", static_cast<double>(r.jop.n));
        break;
      }
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zeRIS secure-transmission metrics: closed forms, asymptotes, Monte Carlo"};
  app.require_subcommand(1);

  Common mc;
  std::string mode = "I";
  double ps_dbm = NAN;
  bool los = false;
  auto* metric = app.add_subcommand("metric", "evaluate one parameter point");
  add_common(metric, mc);
  metric->add_option("--mode", mode, "I, II, III, bI, bII");
  metric->add_option("--Ps-dbm", ps_dbm, "transmit power of PS in dBm");
  metric->add_flag("--los", los, "unit-gain PS links in Monte Carlo");

  Common sc;
  std::string variable = "Ps_dbm", modes = "I,II,III";
  double start = 0, stop = 60, step = 5;
  auto* sweep = app.add_subcommand("sweep", "run an explicit sweep");
  add_common(sweep, sc);
  sweep->add_option("--variable", variable, "Ps_dbm, tau, N or N1");
  sweep->add_option("--start", start);
  sweep->add_option("--stop", stop);
  sweep->add_option("--step", step);
  sweep->add_option("--modes", modes, "comma list of I, II, III, bI, bII");

  Common fc;
  std::string fig;
  bool list = false;
  auto* figure = app.add_subcommand("figure", "run a figure preset");
  add_common(figure, fc);
  figure->add_option("name", fig, "preset name");
  figure->add_flag("--list", list, "list presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (metric->parsed()) return run_metric(mc, mode, ps_dbm, los);

    if (sweep->parsed()) {
      SweepSpec s;
      s.variable = parse_sweep_variable(variable);
      s.range = {start, stop, step};
      s.modes = parse_modes(modes);
      if (!sc.estimators.empty()) s.estimators = parse_estimators(sc.estimators);
      s.n_trials = sc.trials;
      s.seed = sc.seed;
      s.threads = sc.threads;
      s.fixed = resolve(sc);
      emit(sc, run_sweep(s));
      return 0;
    }

    if (figure->parsed()) {
      if (list || fig.empty()) {
        for (auto& n : figure_presets()) std::cout << n << "\n";
        return fig.empty() && !list ? 1 : 0;
      }
      SweepSpec s = figure_preset(fig);
      s.fixed = resolve(fc, s.fixed);
      if (figure->count("--trials")) s.n_trials = fc.trials;
      s.seed = fc.seed;
      s.threads = fc.threads;
      if (!fc.estimators.empty()) s.estimators = parse_estimators(fc.estimators);
      emit(fc, run_sweep(s));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
