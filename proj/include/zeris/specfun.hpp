#pragma once

#include <complex>
#include <memory>

#include <Eigen/Dense>

namespace zeris::specfun {

inline constexpr double euler_gamma = 0.57721566490153286061;

// Modified Bessel function of the second kind, real order, x > 0.
double bessel_k(double nu, double x);
// log K_nu(x); finite where K_nu itself over- or underflows.
double log_bessel_k(double nu, double x);

// Upper incomplete gamma for real order and real (z > 0) or complex argument.
template <typename T>
T upper_inc_gamma(double a, T z);
template <typename T>
T log_upper_inc_gamma(double a, T z);
// e^z z^(-a) Gamma(a, z); bounded for large |z|.
template <typename T>
T upper_inc_gamma_scaled(double a, T z);
// |z S(a+1,z) - a S(a,z) - 1| / |z S(a+1,z)| with S the scaled function.
template <typename T>
double inc_gamma_recurrence_residual(double a, T z);

double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

double expint_ei(double x);
double expint_e1(double x);
// e^x E1(x) for x > 0.
double expint_e1_scaled(double x);
// Complex E1 by power series, |z| small.
std::complex<double> expint_e1_series(std::complex<double> z);

double digamma(double x);

// Gauss-Chebyshev transform of integrals over (0, inf): z = tan u,
// u_l = (w_l + 1) pi / 4, w_l = cos((2l - 1) pi / (2L)).
struct QuadratureRule {
  int L = 0;
  Eigen::ArrayXd varpi;
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd abscissae;   // tan(u_l)
  Eigen::ArrayXd prefactors;  // sqrt(1 - w_l^2) sec^2(u_l)
  double weight = 0;          // pi^2 / (4L)

  // Sum of weight * prefactor * f(tan u_l) for sampled values f.
  template <typename Derived>
  double apply(const Eigen::ArrayBase<Derived>& values) const {
    return weight * (prefactors * values.derived()).sum();
  }

  template <typename F>
  double integrate(F&& f) const {
    double s = 0;
    for (int l = 0; l < L; ++l) s += prefactors[l] * f(abscissae[l]);
    return weight * s;
  }
};

QuadratureRule make_gc_rule(int L);
// Shared, immutable, built once per L.
std::shared_ptr<const QuadratureRule> gc_rule(int L);

struct GaussLegendre {
  Eigen::ArrayXd nodes;    // on [-1, 1]
  Eigen::ArrayXd weights;
};
const GaussLegendre& gauss_legendre(int n);

// Integral of f over [lo, hi] by composite Gauss-Legendre with `panels` panels.
template <typename F>
double integrate_gl(F&& f, double lo, double hi, int panels = 8, int order = 32) {
  const auto& gl = gauss_legendre(order);
  double h = (hi - lo) / panels, s = 0;
  for (int p = 0; p < panels; ++p) {
    double c = lo + (p + 0.5) * h, r = 0.5 * h;
    for (int i = 0; i < order; ++i) s += r * gl.weights[i] * f(c + r * gl.nodes[i]);
  }
  return s;
}

}  // namespace zeris::specfun
