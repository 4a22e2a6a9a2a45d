#include "zeris/specfun.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "zeris/error.hpp"

namespace zeris::specfun {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double tiny = 1e-300;

// Taylor coefficients of 1/Gamma(z) = sum_{k>=1} c_k z^k.
constexpr double rgamma_coef[] = {
    1.0,
    0.5772156649015328606,
    -0.6558780715202538811,
    -0.0420026350340952355,
    0.1665386113822914895,
    -0.0421977345555443367,
    -0.0096219715278769736,
    0.0072189432466630995,
    -0.0011651675918590651,
    -0.0002152416741149510,
    0.0001280502823881162,
    -0.0000201348547807882,
    -0.0000012504934821427,
    0.0000011330272319817,
    -0.0000002056338416978,
    0.0000000061160951045,
    0.0000000050020076445,
    -0.0000000011812745705,
    0.0000000001043426712,
    0.0000000000077822634,
    -0.0000000000036968056,
    0.0000000000005100370,
    -0.0000000000000205833,
    -0.0000000000000053481,
    0.0000000000000012268,
    -0.0000000000000001181,
};

// gam1 = (1/G(1-x) - 1/G(1+x)) / (2x), gam2 = (1/G(1-x) + 1/G(1+x)) / 2, |x| <= 1/2.
void temme_gammas(double x, double& gam1, double& gam2, double& gampl, double& gammi) {
  constexpr int n = sizeof(rgamma_coef) / sizeof(double);
  double x2 = x * x, even = 0, odd = 0;
  for (int k = n; k >= 1; --k) {
    if (k % 2 == 0)
      even = even * x2 + rgamma_coef[k - 1];
    else
      odd = odd * x2 + rgamma_coef[k - 1];
  }
  gam1 = -even;
  gam2 = odd;
  gampl = gam2 - x * gam1;
  gammi = gam2 + x * gam1;
}

}  // namespace

double log_bessel_k(double nu, double x) {
  if (!(x > 0)) throw DomainError("bessel_k: x must be positive");
  if (!std::isfinite(nu) || !std::isfinite(x)) throw DomainError("bessel_k: non-finite input");
  nu = std::abs(nu);
  const int nl = static_cast<int>(nu + 0.5);
  const double xmu = nu - nl, xmu2 = xmu * xmu;
  const double xi = 1.0 / x, xi2 = 2.0 * xi;
  double rkmu, rk1, lscale = 0;
  if (x < 2.0) {
    double x2 = 0.5 * x, pimu = pi * xmu;
    double fact = std::abs(pimu) < eps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2), e = xmu * d;
    double fact2 = std::abs(e) < eps ? 1.0 : std::sinh(e) / e;
    double gam1, gam2, gampl, gammi;
    temme_gammas(xmu, gam1, gam2, gampl, gammi);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl, q = 0.5 / (e * gammi), c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    for (int i = 1;; ++i) {
      ff = (i * ff + p + q) / (i * static_cast<double>(i) - xmu2);
      c *= d / i;
      p /= i - xmu;
      q /= i + xmu;
      double del = c * ff;
      sum += del;
      sum1 += c * (p - i * ff);
      if (std::abs(del) < std::abs(sum) * eps) break;
      if (i > 10000) throw NumericalIntegrityError("bessel_k: series did not converge");
    }
    rkmu = sum;
    rk1 = sum1 * xi2;
  } else {
    double b = 2.0 * (1.0 + x), d = 1.0 / b, h = d, delh = d;
    double q1 = 0, q2 = 1, a1 = 0.25 - xmu2, q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1;; ++i) {
      a -= 2 * i;
      c = -a * c / (i + 1.0);
      double qnew = (q1 - b * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += c * qnew;
      b += 2.0;
      d = 1.0 / (b + a * d);
      delh = (b * d - 1.0) * delh;
      h += delh;
      double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) < eps) break;
      if (i > 100000) throw NumericalIntegrityError("bessel_k: continued fraction did not converge");
    }
    h = a1 * h;
    rkmu = std::sqrt(pi / (2.0 * x)) / s;
    rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    lscale = -x;
  }
  for (int i = 1; i <= nl; ++i) {
    double next = (xmu + i) * xi2 * rk1 + rkmu;
    rkmu = rk1;
    rk1 = next;
    if (std::abs(rk1) > 1e250) {
      rkmu *= 1e-250;
      rk1 *= 1e-250;
      lscale += 250 * std::numbers::ln10;
    }
  }
  return std::log(rkmu) + lscale;
}

double bessel_k(double nu, double x) { return std::exp(log_bessel_k(nu, x)); }

namespace {

template <typename T>
bool bad_argument(T z) {
  if constexpr (std::is_same_v<T, double>) {
    return !(z > 0) || !std::isfinite(z);
  } else {
    return !std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
           (z.imag() == 0 && z.real() <= 0);
  }
}

// Legendre continued fraction for e^z z^(-a) Gamma(a,z), modified Lentz.
template <typename T>
T inc_gamma_cf(double a, T z) {
  T b = z + 1.0 - a;
  T c = 1.0 / tiny;
  T d = 1.0 / b;
  T h = d;
  for (int i = 1; i < 200000; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    T del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 2 * eps) return h;
  }
  throw NumericalIntegrityError("upper_inc_gamma: continued fraction did not converge");
}

// sum_{n>=0} z^n / (a (a+1) ... (a+n)), a > 0.
template <typename T>
T inc_gamma_series(double a, T z) {
  double ap = a;
  T del = 1.0 / a;
  T sum = del;
  for (int n = 1; n < 100000; ++n) {
    ap += 1.0;
    del *= z / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * eps) return sum;
  }
  throw NumericalIntegrityError("upper_inc_gamma: series did not converge");
}

template <typename T>
T log_of(T z) {
  return std::log(z);
}

// log Gamma(a,z) for a > 0 via Gamma(a) - gamma(a,z).
template <typename T>
T log_inc_gamma_by_series(double a, T z) {
  T lower = std::exp(a * log_of(z) - z - std::lgamma(a)) * inc_gamma_series(a, z);
  return std::lgamma(a) + log_of(T(1.0) - lower);
}

enum class Route { Series, ContinuedFraction, Downward };

template <typename T>
Route choose_route(double a, T z) {
  double r = std::abs(z);
  if constexpr (std::is_same_v<T, double>) {
    if (a > 0 && z < a + 1.0) return Route::Series;
    if (a <= 0 && r < 1.5) return Route::Downward;
    return Route::ContinuedFraction;
  } else {
    if (a > 0 && r < a + 1.0) return Route::Series;
    if (a <= 0 && r < 1.5) return Route::Downward;
    return Route::ContinuedFraction;
  }
}

template <typename T>
T scaled_downward(double a, T z) {
  double shift = std::ceil(-a);
  double start = a + shift;
  T s;
  if (start == 0.0) {
    if constexpr (std::is_same_v<T, double>) {
      s = expint_e1_scaled(z);
    } else {
      s = std::exp(z) * expint_e1_series(z);
    }
  } else {
    s = std::exp(z - start * log_of(z) + log_inc_gamma_by_series(start, z));
  }
  for (double b = start; b > a + 0.5; b -= 1.0) s = (z * s - 1.0) / (b - 1.0);
  return s;
}

}  // namespace

template <typename T>
T upper_inc_gamma_scaled(double a, T z) {
  if (!std::isfinite(a)) throw DomainError("upper_inc_gamma: non-finite order");
  if (bad_argument(z)) throw DomainError("upper_inc_gamma: argument outside principal domain");
  switch (choose_route(a, z)) {
    case Route::Series:
      return std::exp(z - a * log_of(z) + log_inc_gamma_by_series(a, z));
    case Route::Downward:
      return scaled_downward(a, z);
    default:
      return inc_gamma_cf(a, z);
  }
}

template <typename T>
T log_upper_inc_gamma(double a, T z) {
  if constexpr (std::is_same_v<T, double>) {
    if (z == 0.0 && a > 0) return std::lgamma(a);
  } else {
    if (z == T(0.0) && a > 0) return std::lgamma(a);
  }
  if (!std::isfinite(a)) throw DomainError("upper_inc_gamma: non-finite order");
  if (bad_argument(z)) throw DomainError("upper_inc_gamma: argument outside principal domain");
  if (choose_route(a, z) == Route::Series) return log_inc_gamma_by_series(a, z);
  return a * log_of(z) - z + log_of(upper_inc_gamma_scaled(a, z));
}

template <typename T>
T upper_inc_gamma(double a, T z) {
  return std::exp(log_upper_inc_gamma(a, z));
}

template <typename T>
double inc_gamma_recurrence_residual(double a, T z) {
  T s0 = upper_inc_gamma_scaled(a, z);
  T s1 = upper_inc_gamma_scaled(a + 1.0, z);
  return std::abs(z * s1 - a * s0 - 1.0) / std::abs(z * s1);
}

template double upper_inc_gamma<double>(double, double);
template std::complex<double> upper_inc_gamma<std::complex<double>>(double, std::complex<double>);
template double log_upper_inc_gamma<double>(double, double);
template std::complex<double> log_upper_inc_gamma<std::complex<double>>(double, std::complex<double>);
template double upper_inc_gamma_scaled<double>(double, double);
template std::complex<double> upper_inc_gamma_scaled<std::complex<double>>(double, std::complex<double>);
template double inc_gamma_recurrence_residual<double>(double, double);
template double inc_gamma_recurrence_residual<std::complex<double>>(double, std::complex<double>);

double regularized_gamma_p(double a, double x) {
  if (!(a > 0)) throw DomainError("regularized_gamma_p: a must be positive");
  if (x < 0) throw DomainError("regularized_gamma_p: x must be non-negative");
  if (x == 0) return 0.0;
  if (std::isinf(x)) return 1.0;
  double pref = std::exp(a * std::log(x) - x - std::lgamma(a));
  if (x < a + 1.0) return pref * inc_gamma_series(a, x);
  return 1.0 - pref * inc_gamma_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0)) throw DomainError("regularized_gamma_q: a must be positive");
  if (x < 0) throw DomainError("regularized_gamma_q: x must be non-negative");
  if (x == 0) return 1.0;
  if (std::isinf(x)) return 0.0;
  double pref = std::exp(a * std::log(x) - x - std::lgamma(a));
  if (x < a + 1.0) return 1.0 - pref * inc_gamma_series(a, x);
  return pref * inc_gamma_cf(a, x);
}

namespace {

double e1_series(double x) {
  double sum = 0, term = 1;
  for (int n = 1; n < 1000; ++n) {
    term *= -x / n;
    double del = term / n;
    sum += del;
    if (std::abs(del) < std::abs(sum) * eps) break;
  }
  return -euler_gamma - std::log(x) - sum;
}

double e1_scaled_cf(double x) {
  double b = x + 1.0, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 100000; ++i) {
    double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < eps) return h;
  }
  throw NumericalIntegrityError("expint_e1: continued fraction did not converge");
}

}  // namespace

std::complex<double> expint_e1_series(std::complex<double> z) {
  std::complex<double> sum = 0, term = 1;
  for (int n = 1; n < 1000; ++n) {
    term *= -z / static_cast<double>(n);
    std::complex<double> del = term / static_cast<double>(n);
    sum += del;
    if (std::abs(del) < std::abs(sum) * eps) break;
  }
  return -euler_gamma - std::log(z) - sum;
}

double expint_e1(double x) {
  if (!(x > 0)) throw DomainError("expint_e1: x must be positive");
  if (x <= 1.0) return e1_series(x);
  return std::exp(-x) * e1_scaled_cf(x);
}

double expint_e1_scaled(double x) {
  if (!(x > 0)) throw DomainError("expint_e1_scaled: x must be positive");
  if (std::isinf(x)) return 0.0;
  if (x <= 1.0) return std::exp(x) * e1_series(x);
  return e1_scaled_cf(x);
}

double expint_ei(double x) {
  if (x == 0 || std::isnan(x)) throw DomainError("expint_ei: x must be nonzero");
  if (x < 0) return -expint_e1(-x);
  if (x < -std::log(eps)) {
    double sum = 0, term = 1;
    for (int k = 1; k < 1000; ++k) {
      term *= x / k;
      sum += term / k;
      if (term / k < eps * sum) break;
    }
    return sum + std::log(x) + euler_gamma;
  }
  double sum = 0, term = 1;
  for (int k = 1; k < 1000; ++k) {
    double prev = term;
    term *= k / x;
    if (term < eps) break;
    if (term >= prev) {
      sum -= prev;
      break;
    }
    sum += term;
  }
  return std::exp(x) * (1.0 + sum) / x;
}

double digamma(double x) {
  if (!(x > 0)) throw DomainError("digamma: x must be positive");
  double acc = 0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  double r = 1.0 / (x * x);
  double tail = r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r / 12.0))))));
  return acc + std::log(x) - 0.5 / x - tail;
}

QuadratureRule make_gc_rule(int L) {
  if (L < 1) throw InvalidArgument("gc_rule: L must be at least 1");
  QuadratureRule q;
  q.L = L;
  q.varpi = Eigen::ArrayXd::LinSpaced(L, 1, L).unaryExpr([L](double l) { return std::cos((2 * l - 1) * pi / (2.0 * L)); });
  q.nodes = (q.varpi + 1.0) * (pi / 4);
  q.abscissae = q.nodes.tan();
  q.prefactors = (1.0 - q.varpi.square()).sqrt() / q.nodes.cos().square();
  q.weight = pi * pi / (4.0 * L);
  return q;
}

std::shared_ptr<const QuadratureRule> gc_rule(int L) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[L];
  if (!slot) slot = std::make_shared<const QuadratureRule>(make_gc_rule(L));
  return slot;
}

const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  if (n < 1) throw InvalidArgument("gauss_legendre: n must be at least 1");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussLegendre g;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5)), pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1, p2 = 0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1);
      double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    g.nodes[i] = -z;
    g.nodes[n - 1 - i] = z;
    g.weights[i] = g.weights[n - 1 - i] = 2.0 / ((1 - z * z) * pp * pp);
  }
  return cache.emplace(n, std::move(g)).first->second;
}

}  // namespace zeris::specfun
