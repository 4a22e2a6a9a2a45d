#include "zeris/cascaded_stats.hpp"

#include <cmath>

#include "zeris/specfun.hpp"

namespace zeris {

GammaFit gamma_fit(double mean, double second_moment) {
  if (!(mean > 0)) throw InvalidArgument("gamma_fit: mean must be positive");
  double var = second_moment - mean * mean;
  if (!(var > 1e-12 * mean * mean)) throw InvalidArgument("gamma_fit: variance must be positive");
  return {mean * mean / var, var / mean, mean, second_moment};
}

GammaFit delta_fit(int n_same, int n_other) {
  auto m = delta_moments<double>(n_same, n_other);
  return gamma_fit(m.mean, m.second_moment);
}

ZedParams zed_params(int N) {
  if (N < 1) throw InvalidArgument("zed_params: N must be positive");
  constexpr double pi = std::numbers::pi;
  return {N * pi * pi / (16 - pi * pi), (16 - pi * pi) / (4 * pi)};
}

double log_gamma_pdf(double z, double k, double theta) {
  if (z < 0) throw DomainError("gamma_pdf: z must be non-negative");
  if (z == 0) return k < 1 ? INFINITY : (k == 1 ? -std::log(theta) : -INFINITY);
  return (k - 1) * std::log(z) - z / theta - std::lgamma(k) - k * std::log(theta);
}

double gamma_pdf(double z, double k, double theta) { return std::exp(log_gamma_pdf(z, k, theta)); }

double gamma_cdf(double z, double k, double theta) {
  if (z < 0) throw DomainError("gamma_cdf: z must be non-negative");
  return specfun::regularized_gamma_p(k, z / theta);
}

}  // namespace zeris
