#include "zeris/params.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "zeris/error.hpp"

namespace zeris {

std::string reason_code(const std::exception& e) {
  if (dynamic_cast<const RegimeError*>(&e)) return "regime";
  if (dynamic_cast<const UnsupportedModeError*>(&e)) return "unsupported-mode";
  if (dynamic_cast<const NumericalIntegrityError*>(&e)) return "numerical-integrity";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "invalid";
  return "error";
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
  if (!(watts > 0)) throw InvalidArgument("watts_to_dbm: power must be positive");
  return 10.0 * std::log10(watts) + 30.0;
}

double path_loss(double d, double a0) {
  if (!(d > 0)) throw InvalidArgument("path_loss: distance must be positive");
  return std::pow(d, -a0);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

void SystemParams::validate() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw InvalidArgument(std::string("invalid parameters: ") + what);
  };
  need(tau > 0 && tau < 1, "tau must lie in (0,1)");
  need(T > 0, "T must be positive");
  need(eta > 0 && eta <= 1, "eta must lie in (0,1]");
  need(N >= 1, "N must be positive");
  need(N1 >= 0 && N2 >= 0, "N1, N2 must be non-negative");
  need(N1 + N2 == N, "N1 + N2 must equal N");
  need(Ps > 0 && Pe >= 0 && Pc >= 0 && sigma2 > 0, "powers must be positive");
  need(R > 0, "R must be positive");
  need(a0 >= 0, "a0 must be non-negative");
  for (double d : {d_pu, d_pj, d_pr, d_ur, d_jr, d_ra, d_re}) need(d > 0, "distances must be positive");
  need(L >= 1, "L must be at least 1");
  for (double x : {Ps, tau, T, eta, Pe, Pc, sigma2, R, a0}) need(std::isfinite(x), "non-finite value");
}

std::vector<std::pair<std::string, std::string>> SystemParams::describe() const {
  auto i = [](int v) { return std::to_string(v); };
  return {{"Ps", format_double(Ps)},     {"tau", format_double(tau)},   {"T", format_double(T)},
          {"eta", format_double(eta)},   {"N", i(N)},                   {"N1", i(N1)},
          {"N2", i(N2)},                 {"Pe", format_double(Pe)},     {"Pc", format_double(Pc)},
          {"sigma2", format_double(sigma2)}, {"R", format_double(R)},   {"a0", format_double(a0)},
          {"d_pu", format_double(d_pu)}, {"d_pj", format_double(d_pj)}, {"d_pr", format_double(d_pr)},
          {"d_ur", format_double(d_ur)}, {"d_jr", format_double(d_jr)}, {"d_ra", format_double(d_ra)},
          {"d_re", format_double(d_re)}, {"L", i(L)}};
}

DerivedConstants derive_constants(const SystemParams& p) {
  p.validate();
  DerivedConstants c;
  c.Pt = p.tau / (1.0 - p.tau) * p.Ps * p.eta;
  c.rho_t = c.Pt / p.sigma2;
  c.beta_pu = path_loss(p.d_pu, p.a0);
  c.beta_pj = path_loss(p.d_pj, p.a0);
  c.beta_pr = path_loss(p.d_pr, p.a0);
  c.beta_ura = path_loss(p.d_ur * p.d_ra, p.a0);
  c.beta_ure = path_loss(p.d_ur * p.d_re, p.a0);
  c.beta_jre = path_loss(p.d_jr * p.d_re, p.a0);
  c.epsilon = std::exp2(p.R / (1.0 - p.tau)) - 1.0;
  c.varsigma = c.epsilon / (c.beta_pu * c.beta_ura);
  c.Q = (1.0 - p.tau) * p.T * (p.N * p.Pe + p.Pc);
  return c;
}

const std::vector<std::string>& ParamsBuilder::keys() {
  static const std::vector<std::string> k = {
      "Ps", "Ps_dbm", "tau", "T", "eta", "N", "N1", "N2", "Pe", "Pe_dbm", "Pc", "Pc_dbm",
      "sigma2", "sigma2_dbm", "R", "a0", "d_pu", "d_pj", "d_pr", "d_ur", "d_jr", "d_ra", "d_re", "L"};
  return k;
}

namespace {

int as_count(const std::string& key, double v) {
  if (v != std::floor(v) || std::abs(v) > 1e9) throw InvalidArgument(key + " must be an integer");
  return static_cast<int>(v);
}

}  // namespace

ParamsBuilder& ParamsBuilder::set(const std::string& key, double v) {
  if (key == "Ps") p_.Ps = v;
  else if (key == "Ps_dbm") p_.Ps = dbm_to_watts(v);
  else if (key == "tau") p_.tau = v;
  else if (key == "T") p_.T = v;
  else if (key == "eta") p_.eta = v;
  else if (key == "N") { p_.N = as_count(key, v); n_set_ = true; }
  else if (key == "N1") n1_ = as_count(key, v);
  else if (key == "N2") n2_ = as_count(key, v);
  else if (key == "Pe") p_.Pe = v;
  else if (key == "Pe_dbm") p_.Pe = dbm_to_watts(v);
  else if (key == "Pc") p_.Pc = v;
  else if (key == "Pc_dbm") p_.Pc = dbm_to_watts(v);
  else if (key == "sigma2") p_.sigma2 = v;
  else if (key == "sigma2_dbm") p_.sigma2 = dbm_to_watts(v);
  else if (key == "R") p_.R = v;
  else if (key == "a0") p_.a0 = v;
  else if (key == "d_pu") p_.d_pu = v;
  else if (key == "d_pj") p_.d_pj = v;
  else if (key == "d_pr") p_.d_pr = v;
  else if (key == "d_ur") p_.d_ur = v;
  else if (key == "d_jr") p_.d_jr = v;
  else if (key == "d_ra") p_.d_ra = v;
  else if (key == "d_re") p_.d_re = v;
  else if (key == "L") p_.L = as_count(key, v);
  else throw InvalidArgument("unknown parameter '" + key + "'");
  return *this;
}

ParamsBuilder& ParamsBuilder::set(const std::string& key, const std::string& value) {
  return set(key, parse_double(value));
}

ParamsBuilder& ParamsBuilder::assign(const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos) throw InvalidArgument("expected key=value, got '" + assignment + "'");
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  return set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

ParamsBuilder& ParamsBuilder::read(std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      assign(line);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return *this;
}

ParamsBuilder& ParamsBuilder::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  return read(in);
}

SystemParams ParamsBuilder::build() const {
  SystemParams p = p_;
  if (n1_ && n2_) {
    p.N1 = *n1_;
    p.N2 = *n2_;
    if (!n_set_) p.N = p.N1 + p.N2;
  } else if (n1_) {
    p.N1 = *n1_;
    p.N2 = p.N - p.N1;
  } else if (n2_) {
    p.N2 = *n2_;
    p.N1 = p.N - p.N2;
  } else if (n_set_) {
    p.N1 = p.N / 2;
    p.N2 = p.N - p.N1;
  }
  p.validate();
  return p;
}

}  // namespace zeris
