#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <string>
#include <string_view>

#include "zeris/cascaded_stats.hpp"
#include "zeris/params.hpp"
#include "zeris/specfun.hpp"

namespace zeris {

enum class ModeTag { I, II, III, BenchmarkI, BenchmarkII };

// Phase design of the surface. The mode-III split (N1, N2) is carried by SystemParams.
struct Mode {
  ModeTag tag = ModeTag::I;

  static constexpr Mode I() { return {ModeTag::I}; }
  static constexpr Mode II() { return {ModeTag::II}; }
  static constexpr Mode III() { return {ModeTag::III}; }
  static constexpr Mode benchmark_I() { return {ModeTag::BenchmarkI}; }
  static constexpr Mode benchmark_II() { return {ModeTag::BenchmarkII}; }

  bool has_closed_form() const { return tag == ModeTag::I || tag == ModeTag::II || tag == ModeTag::III; }
  friend bool operator==(Mode a, Mode b) { return a.tag == b.tag; }
};

// "I", "II", "III", "bI", "bII"
std::string to_string(Mode m);
Mode parse_mode(std::string_view s);

enum class MetricKind { JOP, JIP, SEE, NormalizedJIOP };
enum class Provenance { ClosedForm, Asymptotic, LargeN };

std::string to_string(MetricKind k);
std::string to_string(Provenance p);

struct Diagnostics {
  double quadrature_mass = NAN;  // rule applied to the density being averaged
  double imag_residue = 0;       // |Im| / |Re| of the complex-bracket sum
  int fallback_nodes = 0;        // nodes evaluated by direct integration
};

struct MetricValue {
  double value = NAN;
  MetricKind kind = MetricKind::JOP;
  Provenance provenance = Provenance::ClosedForm;
  bool clamped = false;
  double raw = NAN;
  Diagnostics diag;
};

struct AsymptoticConstants {
  double mu1;
  double mu2;
  double mu3;
};

AsymptoticConstants asymptotic_constants(const SystemParams& p);

// Closed forms and asymptotes for one parameter set. Construction validates
// the parameters and fixes the quadrature rule and moment fits.
class AnalyticModel {
 public:
  explicit AnalyticModel(const SystemParams& p);

  const SystemParams& params() const { return p_; }
  const DerivedConstants& derived() const { return c_; }
  const ZedParams& zed() const { return zed_; }
  const specfun::QuadratureRule& rule() const { return *rule_; }

  double energy_outage_prob() const;
  double energy_sufficiency_prob() const;
  double data_outage_prob(Mode m, Diagnostics* diag = nullptr) const;
  double interception_prob(Mode m, Diagnostics* diag = nullptr) const;

  MetricValue jop(Mode m) const;
  MetricValue jip(Mode m) const;
  MetricValue see(Mode m) const;
  MetricValue normalized_jiop(Mode m) const;

  MetricValue jop_asymptotic(Mode m) const;
  MetricValue jop_large_n() const;
  MetricValue jip_asymptotic(Mode m) const;
  MetricValue jip_large_n(Mode m) const;

  GammaFit user_fit() const { return delta_fit(p_.N1, p_.N2); }
  GammaFit jammer_fit() const { return delta_fit(p_.N2, p_.N1); }

 private:
  double base_weight(double y) const;
  std::complex<double> jammer_bracket(double a_sq, Diagnostics& diag) const;

  SystemParams p_;
  DerivedConstants c_;
  ZedParams zed_;
  std::shared_ptr<const specfun::QuadratureRule> rule_;
};

double energy_outage_prob(const SystemParams& p);
MetricValue jop(Mode m, const SystemParams& p);
MetricValue jip(Mode m, const SystemParams& p);
MetricValue see(Mode m, const SystemParams& p);
MetricValue normalized_jiop(Mode m, const SystemParams& p);
MetricValue jop_asymptotic(Mode m, const SystemParams& p);
MetricValue jop_large_n(const SystemParams& p);
MetricValue jip_asymptotic(Mode m, const SystemParams& p);
MetricValue jip_large_n(Mode m, const SystemParams& p);

}  // namespace zeris
