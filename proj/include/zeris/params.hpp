#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace zeris {

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Gain d^(-a0) of a link of length d.
double path_loss(double d, double a0);

struct SystemParams {
  double Ps = 1.0;
  double tau = 0.4;
  double T = 1.0;
  double eta = 0.8;
  int N = 30;
  int N1 = 15;
  int N2 = 15;
  double Pe = 2e-6;
  double Pc = 50e-3;
  double sigma2 = 3.1622776601683795e-08;  // -45 dBm
  double R = 1.5;
  double a0 = 2.7;
  double d_pu = 10.0;
  double d_pj = 10.0;
  double d_pr = 10.0;
  double d_ur = 10.0;
  double d_jr = 10.0;
  double d_ra = 10.0;
  double d_re = 10.0;
  int L = 1500;

  void validate() const;

  // Resolved field listing in declaration order, values printed round-trip exact.
  std::vector<std::pair<std::string, std::string>> describe() const;
};

struct DerivedConstants {
  double Pt = 0;
  double rho_t = 0;
  double beta_pu = 0;
  double beta_pj = 0;
  double beta_pr = 0;
  double beta_ura = 0;
  double beta_ure = 0;
  double beta_jre = 0;
  double epsilon = 0;
  double varsigma = 0;
  double Q = 0;
};

DerivedConstants derive_constants(const SystemParams& p);

// Key-value configuration. Keys are SystemParams field names; Ps, Pe, Pc and
// sigma2 also accept a `_dbm` suffix. When N is set without an explicit split,
// N1 = N/2 and N2 = N - N1.
class ParamsBuilder {
 public:
  ParamsBuilder() = default;
  explicit ParamsBuilder(SystemParams base) : p_(base) {}

  ParamsBuilder& set(const std::string& key, const std::string& value);
  ParamsBuilder& set(const std::string& key, double value);
  ParamsBuilder& read(std::istream& in);
  ParamsBuilder& read_file(const std::string& path);
  // Parses "key=value".
  ParamsBuilder& assign(const std::string& assignment);

  SystemParams build() const;

  static const std::vector<std::string>& keys();

 private:
  SystemParams p_;
  std::optional<int> n1_, n2_;
  bool n_set_ = false;
};

std::string format_double(double x);
double parse_double(const std::string& s);

}  // namespace zeris
