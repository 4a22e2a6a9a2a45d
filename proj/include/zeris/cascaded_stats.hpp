#pragma once

#include <numbers>

#include "zeris/error.hpp"

namespace zeris {

// Moments of xi = |h1||h2| for independent CN(0,1) h1, h2.
template <typename Scalar = double>
constexpr Scalar xi_moment(int k) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  switch (k) {
    case 0: return 1;
    case 1: return pi / 4;
    case 2: return 1;
    case 3: return 9 * pi / 16;
    case 4: return 4;
    default: throw InvalidArgument("xi_moment: order must be 0..4");
  }
}

template <typename Scalar = double>
struct DeltaMoments {
  Scalar mean;
  Scalar second_moment;
};

// Moments of |X + W|^2 with X = sum of n_same co-phased xi terms and
// W = sum of n_other xi terms carrying independent uniform phases.
// The second moment is E X^4 + E|W|^4 + 4 E X^2 E|W|^2.
template <typename Scalar = double>
DeltaMoments<Scalar> delta_moments(int n_same, int n_other) {
  if (n_same < 0 || n_other < 0) throw InvalidArgument("delta_moments: negative element count");
  if (n_same + n_other < 1) throw InvalidArgument("delta_moments: need at least one element");
  const Scalar a = n_same, b = n_other;
  const Scalar m1 = xi_moment<Scalar>(1), m2 = xi_moment<Scalar>(2);
  const Scalar m3 = xi_moment<Scalar>(3), m4 = xi_moment<Scalar>(4);
  Scalar ex2 = a * m2 + a * (a - 1) * m1 * m1;
  Scalar ex4 = a * m4 + 4 * a * (a - 1) * m3 * m1 + 3 * a * (a - 1) * m2 * m2 +
               6 * a * (a - 1) * (a - 2) * m2 * m1 * m1 + a * (a - 1) * (a - 2) * (a - 3) * m1 * m1 * m1 * m1;
  Scalar ew2 = b * m2;
  Scalar ew4 = b * m4 + 2 * b * (b - 1) * m2 * m2;
  return {ex2 + ew2, ex4 + ew4 + 4 * ex2 * ew2};
}

// Earlier collected form of the fourth-order polynomial.
// Kept for comparison only; it disagrees with direct enumeration.
template <typename Scalar = double>
Scalar delta_second_moment_uncorrected(int n_same, int n_other) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar x = n_same, y = n_other, p2 = pi * pi, p4 = p2 * p2;
  return (p4 * x * x * x * x + (96 * p2 - 6 * p4) * x * x * x + (11 * p4 - 216 * p2 + 768) * x * x +
          (-6 * p4 + 120 * p2 + 256) * x + 512 * y * y + 512 * y + 64 * p2 * x * x * y +
          32 * p2 * x * y * y + (1024 - 96 * p2) * x * y) /
         256;
}

struct GammaFit {
  double k;
  double theta;
  double mean;
  double second_moment;

  double variance() const { return second_moment - mean * mean; }
};

GammaFit gamma_fit(double mean, double second_moment);
// Fit for the coherent/random-phase cascaded gain; (N1, N2) for the user
// side, (N2, N1) for the jammer side.
GammaFit delta_fit(int n_same, int n_other);

struct ZedParams {
  double v;
  double phi;
};

ZedParams zed_params(int N);

double gamma_pdf(double z, double k, double theta);
double gamma_cdf(double z, double k, double theta);
double log_gamma_pdf(double z, double k, double theta);
inline double gamma_pdf(double z, const GammaFit& f) { return gamma_pdf(z, f.k, f.theta); }
inline double gamma_cdf(double z, const GammaFit& f) { return gamma_cdf(z, f.k, f.theta); }

}  // namespace zeris
