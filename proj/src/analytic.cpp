#include "zeris/analytic.hpp"

#include <complex>
#include <numbers>

#include "zeris/error.hpp"

namespace zeris {

namespace {

constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;

// Closed-form probabilities may carry quadrature noise of either sign near the
// ends of [0,1]; anything beyond that noise is a numerical failure.
double settle_probability(double raw, bool& clamped, const char* what) {
  if (std::isnan(raw)) throw NumericalIntegrityError(std::string(what) + ": NaN");
  if (raw < 0) {
    if (raw < -1e-12) throw NumericalIntegrityError(std::string(what) + ": negative probability");
    clamped = true;
    return 0.0;
  }
  if (raw > 1) {
    if (raw > 1.01) throw NumericalIntegrityError(std::string(what) + ": probability above one");
    clamped = true;
    return 1.0;
  }
  return raw;
}

MetricValue make_value(double raw, MetricKind kind, Provenance prov, bool clamp_range) {
  MetricValue m;
  m.kind = kind;
  m.provenance = prov;
  m.raw = raw;
  m.value = raw;
  if (clamp_range && !(raw >= 0 && raw <= 1)) {
    m.value = std::clamp(raw, 0.0, 1.0);
    m.clamped = true;
  }
  return m;
}

void check_mass(double mass, const char* what) {
  if (!(std::abs(mass - 1.0) < 0.01))
    throw NumericalIntegrityError(std::string(what) + ": quadrature mass " + format_double(mass));
}

void require_closed_form(Mode m, const char* what) {
  if (!m.has_closed_form())
    throw UnsupportedModeError(std::string(what) + ": no closed form for mode " + to_string(m));
}

// x e^x E1(x), bounded by 1.
double e1_weight(double x) { return x > 0 ? x * specfun::expint_e1_scaled(x) : 0.0; }

}  // namespace

std::string to_string(Mode m) {
  switch (m.tag) {
    case ModeTag::I: return "I";
    case ModeTag::II: return "II";
    case ModeTag::III: return "III";
    case ModeTag::BenchmarkI: return "bI";
    case ModeTag::BenchmarkII: return "bII";
  }
  return "?";
}

Mode parse_mode(std::string_view s) {
  if (s == "I" || s == "1") return Mode::I();
  if (s == "II" || s == "2") return Mode::II();
  if (s == "III" || s == "3") return Mode::III();
  if (s == "bI" || s == "benchmark-I") return Mode::benchmark_I();
  if (s == "bII" || s == "benchmark-II") return Mode::benchmark_II();
  throw InvalidArgument("unknown mode '" + std::string(s) + "' (expected I, II, III, bI, bII)");
}

std::string to_string(MetricKind k) {
  switch (k) {
    case MetricKind::JOP: return "jop";
    case MetricKind::JIP: return "jip";
    case MetricKind::SEE: return "see";
    case MetricKind::NormalizedJIOP: return "njiop";
  }
  return "?";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::Asymptotic: return "asymptotic";
    case Provenance::LargeN: return "large-N";
  }
  return "?";
}

AsymptoticConstants asymptotic_constants(const SystemParams& p) {
  auto c = derive_constants(p);
  auto z = zed_params(p.N);
  double mu1 = c.beta_pu * c.beta_ure / (c.epsilon * c.beta_pj * c.beta_jre);
  return {mu1, 1.0 / (p.N * mu1), p.N * mu1 / (z.phi * z.phi)};
}

AnalyticModel::AnalyticModel(const SystemParams& p)
    : p_(p), c_(derive_constants(p)), zed_(zed_params(p.N)), rule_(specfun::gc_rule(p.L)) {}

double AnalyticModel::energy_outage_prob() const {
  return -std::expm1(-(p_.N * p_.Pe + p_.Pc) / (c_.Pt * p_.N * c_.beta_pr));
}

double AnalyticModel::energy_sufficiency_prob() const {
  return std::exp(-(p_.N * p_.Pe + p_.Pc) / (c_.Pt * p_.N * c_.beta_pr));
}

double AnalyticModel::data_outage_prob(Mode m, Diagnostics* diag) const {
  require_closed_form(m, "data_outage_prob");
  const double s = c_.varsigma / c_.rho_t;
  bool clamped = false;
  double raw = 0;
  if (m.tag == ModeTag::I) {
    const auto& t = rule_->abscissae;
    const double v = zed_.v, phi = zed_.phi;
    Eigen::ArrayXd logpdf = (v - 1) * t.log() - t / phi - (std::lgamma(v) + v * std::log(phi));
    double mass = rule_->apply(logpdf.exp());
    check_mass(mass, "data_outage_prob");
    if (diag) diag->quadrature_mass = mass;
    raw = 1.0 - rule_->apply((logpdf - s / t.square()).exp());
  } else if (m.tag == ModeTag::II) {
    double x = std::sqrt(4.0 * s / p_.N);
    raw = x > 0 ? 1.0 - std::exp(std::log(x) + specfun::log_bessel_k(1.0, x)) : 0.0;
  } else {
    auto fit = user_fit();
    double cc = s / fit.theta;
    raw = 1.0 - std::exp(std::log(2.0) - std::lgamma(fit.k) + 0.5 * fit.k * std::log(cc) +
                         specfun::log_bessel_k(fit.k, 2.0 * std::sqrt(cc)));
  }
  return settle_probability(raw, clamped, "data_outage_prob");
}

double AnalyticModel::base_weight(double y) const {
  const double scale = p_.N * c_.beta_ure;
  return std::exp(-c_.epsilon / (c_.rho_t * c_.beta_pu * y) - y / scale) / scale;
}

// E[1 / (1 + Z^2 / a^2)] for Z ~ Gamma(v, phi), via the incomplete-gamma bracket.
// The imaginary part is the residue left by the bracket; zero on fallback.
cplx AnalyticModel::jammer_bracket(double a_sq, Diagnostics& diag) const {
  const double v = zed_.v, phi = zed_.phi, b = 2.0 - v;
  const double a = std::sqrt(a_sq);
  const cplx alpha(0.0, a / phi);
  const cplx turn(0.0, (v - 2.0) * pi / 2);
  try {
    double pref = v * std::log(a) - std::log(2.0) - std::log(v - 1.0) - v * std::log(phi);
    cplx sum = std::exp(pref + alpha + turn + specfun::log_upper_inc_gamma(b, alpha)) +
               std::exp(pref - alpha - turn + specfun::log_upper_inc_gamma(b, -alpha));
    double residual = std::max(specfun::inc_gamma_recurrence_residual(b, alpha),
                               specfun::inc_gamma_recurrence_residual(b, -alpha));
    if (std::isfinite(sum.real()) && std::isfinite(sum.imag()) && residual < 1e-6 && sum.real() > 0 &&
        sum.real() <= 1.0 + 1e-9 && std::abs(sum.imag()) < 1e-6 * sum.real()) {
      return sum;
    }
  } catch (const NumericalIntegrityError&) {
  }
  ++diag.fallback_nodes;
  double mean = v * phi, sd = std::sqrt(v) * phi;
  double lo = std::max(0.0, mean - 14 * sd), hi = mean + 16 * sd;
  double lnorm = std::lgamma(v) + v * std::log(phi);
  return specfun::integrate_gl(
      [&](double z) {
        if (z <= 0) return 0.0;
        return std::exp((v - 1) * std::log(z) - z / phi - lnorm) / (1.0 + z * z / a_sq);
      },
      lo, hi, 24, 32);
}

double AnalyticModel::interception_prob(Mode m, Diagnostics* diag) const {
  require_closed_form(m, "interception_prob");
  Diagnostics local;
  Diagnostics& d = diag ? *diag : local;
  const auto& t = rule_->abscissae;
  const double scale = p_.N * c_.beta_ure;
  double mass = rule_->apply((-t / scale).exp() / scale);
  check_mass(mass, "interception_prob");
  d.quadrature_mass = mass;
  const double ratio = c_.beta_pu / (c_.epsilon * c_.beta_pj * c_.beta_jre);
  bool clamped = false;
  double raw = 0;
  if (m.tag == ModeTag::I) {
    raw = rule_->integrate([&](double y) {
      double w = base_weight(y);
      return w > 0 ? w * e1_weight(ratio * y / p_.N) : 0.0;
    });
    if (!(raw >= 0)) throw NumericalIntegrityError("interception_prob: sign check failed");
  } else if (m.tag == ModeTag::II) {
    double re = 0, im = 0;
    for (int l = 0; l < rule_->L; ++l) {
      double y = t[l], w = base_weight(y) * rule_->prefactors[l];
      if (!(w > 0)) continue;
      cplx val = jammer_bracket(ratio * y, d);
      re += w * val.real();
      im += w * val.imag();
    }
    raw = rule_->weight * re;
    d.imag_residue = std::abs(im) / std::max(std::abs(re), 1e-300);
    if (re > 0 && d.imag_residue > 1e-6)
      throw NumericalIntegrityError("interception_prob: imaginary residue " + format_double(d.imag_residue));
  } else {
    auto fit = jammer_fit();
    const double k = fit.k;
    raw = rule_->integrate([&](double y) {
      double w = base_weight(y);
      if (!(w > 0)) return 0.0;
      double x = ratio * y / fit.theta;
      return w * std::exp(k * std::log(x) + x + specfun::log_upper_inc_gamma(1.0 - k, x));
    });
  }
  return settle_probability(raw, clamped, "interception_prob");
}

MetricValue AnalyticModel::jop(Mode m) const {
  require_closed_form(m, "jop");
  MetricValue out;
  out.kind = MetricKind::JOP;
  out.provenance = Provenance::ClosedForm;
  double a = energy_outage_prob();
  double b = data_outage_prob(m, &out.diag);
  out.raw = a + b - a * b;
  out.value = settle_probability(out.raw, out.clamped, "jop");
  return out;
}

MetricValue AnalyticModel::jip(Mode m) const {
  require_closed_form(m, "jip");
  MetricValue out;
  out.kind = MetricKind::JIP;
  out.provenance = Provenance::ClosedForm;
  out.raw = energy_sufficiency_prob() * interception_prob(m, &out.diag);
  out.value = settle_probability(out.raw, out.clamped, "jip");
  return out;
}

MetricValue AnalyticModel::see(Mode m) const {
  auto o = jop(m), i = jip(m);
  MetricValue out;
  out.kind = MetricKind::SEE;
  out.provenance = Provenance::ClosedForm;
  out.raw = p_.R / p_.Ps * (1.0 - o.value - i.value);
  out.value = std::max(out.raw, 0.0);
  out.clamped = o.clamped || i.clamped;
  out.diag = i.diag;
  return out;
}

MetricValue AnalyticModel::normalized_jiop(Mode m) const {
  auto o = jop(m), i = jip(m);
  MetricValue out;
  out.kind = MetricKind::NormalizedJIOP;
  out.provenance = Provenance::ClosedForm;
  out.raw = out.value = 0.5 * (o.value + i.value);
  out.clamped = o.clamped || i.clamped;
  out.diag = i.diag;
  return out;
}

MetricValue AnalyticModel::jop_asymptotic(Mode m) const {
  require_closed_form(m, "jop_asymptotic");
  const double energy = (p_.N * p_.Pe + p_.Pc) / (p_.N * c_.beta_pr);
  const double link = c_.epsilon * p_.sigma2 / (c_.beta_pu * c_.beta_ura);
  double raw;
  if (m.tag == ModeTag::I) {
    const double v = zed_.v, phi = zed_.phi;
    if (!(v > 2)) throw RegimeError("jop_asymptotic: mode I needs v > 2");
    raw = (energy + link / (phi * phi * (v - 1) * (v - 2))) / c_.Pt;
  } else if (m.tag == ModeTag::II) {
    double g = c_.Pt * c_.beta_pu * c_.beta_ura * p_.N / (c_.epsilon * p_.sigma2);
    raw = std::log(g) / g;
  } else {
    auto fit = user_fit();
    if (!(fit.k > 1)) throw RegimeError("jop_asymptotic: mode III needs k1 > 1");
    raw = (energy + link / (fit.theta * (fit.k - 1))) / c_.Pt;
  }
  return make_value(raw, MetricKind::JOP, Provenance::Asymptotic, true);
}

MetricValue AnalyticModel::jop_large_n() const {
  return make_value(p_.Pe / (c_.beta_pr * c_.Pt), MetricKind::JOP, Provenance::LargeN, true);
}

MetricValue AnalyticModel::jip_asymptotic(Mode m) const {
  require_closed_form(m, "jip_asymptotic");
  auto k = asymptotic_constants(p_);
  double raw;
  MetricValue out;
  if (m.tag == ModeTag::I) {
    if (!(k.mu1 < std::exp(-specfun::digamma(2.0))))
      throw RegimeError("jip_asymptotic: mu1 = " + format_double(k.mu1) + " outside the valid region");
    raw = -k.mu1 * (std::log(k.mu1) + specfun::digamma(2.0));
  } else if (m.tag == ModeTag::II) {
    const double v = zed_.v, phi = zed_.phi;
    const double lnorm = std::lgamma(v) + v * std::log(phi);
    raw = 1.0 - rule_->integrate([&](double z) {
      return std::exp((v - 1) * std::log(z) - z / phi - lnorm) * e1_weight(k.mu2 * z * z);
    });
  } else {
    auto fit = jammer_fit();
    raw = 1.0 - rule_->integrate([&](double z) {
      return gamma_pdf(z, fit.k, fit.theta) * e1_weight(k.mu2 * z);
    });
  }
  out = make_value(raw, MetricKind::JIP, Provenance::Asymptotic, true);
  return out;
}

MetricValue AnalyticModel::jip_large_n(Mode m) const {
  require_closed_form(m, "jip_large_n");
  auto k = asymptotic_constants(p_);
  double raw;
  if (m.tag == ModeTag::I) {
    throw UnsupportedModeError("jip_large_n: no large-N limit for mode I");
  } else if (m.tag == ModeTag::II) {
    const double v = zed_.v;
    raw = std::exp(0.5 * v * std::log(std::numbers::e * k.mu3 / (2 * v)) - 0.25 * std::log(v) + k.mu3 / 8 -
                   std::sqrt(v * k.mu3 / 2));
  } else {
    auto fit = jammer_fit();
    double nm = p_.N * k.mu1;
    raw = std::exp(fit.k * std::log(nm / (fit.theta + nm)));
  }
  return make_value(raw, MetricKind::JIP, Provenance::LargeN, true);
}

double energy_outage_prob(const SystemParams& p) { return AnalyticModel(p).energy_outage_prob(); }
MetricValue jop(Mode m, const SystemParams& p) { return AnalyticModel(p).jop(m); }
MetricValue jip(Mode m, const SystemParams& p) { return AnalyticModel(p).jip(m); }
MetricValue see(Mode m, const SystemParams& p) { return AnalyticModel(p).see(m); }
MetricValue normalized_jiop(Mode m, const SystemParams& p) { return AnalyticModel(p).normalized_jiop(m); }
MetricValue jop_asymptotic(Mode m, const SystemParams& p) { return AnalyticModel(p).jop_asymptotic(m); }
MetricValue jop_large_n(const SystemParams& p) { return AnalyticModel(p).jop_large_n(); }
MetricValue jip_asymptotic(Mode m, const SystemParams& p) { return AnalyticModel(p).jip_asymptotic(m); }
MetricValue jip_large_n(Mode m, const SystemParams& p) { return AnalyticModel(p).jip_large_n(m); }

}  // namespace zeris
