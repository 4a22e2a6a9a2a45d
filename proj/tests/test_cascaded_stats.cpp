#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "zeris/cascaded_stats.hpp"
#include "zeris/channel.hpp"
#include "zeris/specfun.hpp"
#include "moment_enumeration.hpp"

using namespace zeris;
using namespace zeris::oracle;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("cascaded gain moments, small cases") {
  auto m = delta_moments(1, 0);
  CHECK(m.mean == doctest::Approx(1.0));
  CHECK(m.second_moment == doctest::Approx(4.0));
  CHECK(delta_moments(15, 15).mean == doctest::Approx(159.54).epsilon(1e-4));
  CHECK(delta_moments(0, 1).mean == doctest::Approx(1.0));
  CHECK(delta_moments(0, 1).second_moment == doctest::Approx(4.0));
  CHECK_THROWS_AS(delta_moments(-1, 3), InvalidArgument);
  CHECK_THROWS_AS(delta_moments(0, 0), InvalidArgument);
}

TEST_CASE("product-of-Rayleigh moments") {
  CHECK(xi_moment(1) == doctest::Approx(pi / 4));
  CHECK(xi_moment(2) == 1.0);
  CHECK(xi_moment(3) == doctest::Approx(9 * pi / 16));
  CHECK(xi_moment(4) == 4.0);
  // |h| with E|h|^2 = 1: E|h| = sqrt(pi)/2, E|h|^3 = 3 sqrt(pi)/4, E|h|^4 = 2.
  CHECK(xi_moment(1) == doctest::Approx(std::pow(std::sqrt(pi) / 2, 2)));
  CHECK(xi_moment(3) == doctest::Approx(std::pow(3 * std::sqrt(pi) / 4, 2)));
}

TEST_CASE("collected moments equal the term-by-term expansion") {
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 8; ++b) {
      if (a + b == 0) continue;
      auto m = delta_moments(a, b);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(std::abs(m.mean / second_moment_enumerated(a, b) - 1) < 1e-12);
      CHECK(std::abs(m.second_moment / fourth_moment_enumerated(a, b) - 1) < 1e-9);
    }
}

TEST_CASE("uncorrected collected polynomial differs from the expansion") {
  CHECK(delta_second_moment_uncorrected(1, 0) == doctest::Approx(4.0));
  CHECK(delta_second_moment_uncorrected(0, 3) == doctest::Approx(delta_moments(0, 3).second_moment));
  CHECK(delta_moments(2, 0).second_moment == doctest::Approx(25.10).epsilon(1e-3));
  CHECK(delta_second_moment_uncorrected(2, 0) == doctest::Approx(19.55).epsilon(1e-3));
}

TEST_CASE("long double evaluation agrees") {
  auto d = delta_moments<double>(300, 200);
  auto l = delta_moments<long double>(300, 200);
  CHECK(std::abs(d.second_moment / static_cast<double>(l.second_moment) - 1) < 1e-13);
}

TEST_CASE("swapping arguments gives the jammer-side gain") {
  // With N1 = 5 user-aligned and N2 = 2 jammer-aligned elements, only the two
  // jammer-aligned terms add coherently on the jammer side.
  auto j = delta_moments(2, 5);
  CHECK(j.mean == doctest::Approx(7 + 2 * pi * pi / 16));
  CHECK(delta_moments(5, 2).mean == doctest::Approx(7 + 20 * pi * pi / 16));
}

TEST_CASE("moment matching") {
  auto f = gamma_fit(1, 4);
  CHECK(f.k == doctest::Approx(1.0 / 3));
  CHECK(f.theta == doctest::Approx(3.0));
  CHECK_THROWS_AS(gamma_fit(2, 4), InvalidArgument);
  CHECK_THROWS_AS(gamma_fit(2, 3), InvalidArgument);
  for (int a = 0; a <= 30; a += 3)
    for (int b = 0; b <= 30; b += 5) {
      if (a + b == 0) continue;
      auto g = delta_fit(a, b);
      CHECK(std::abs(g.k * g.theta / g.mean - 1) < 1e-14);
      CHECK(std::abs(g.k * g.theta * g.theta / g.variance() - 1) < 1e-13);
      CHECK(g.k > 0);
      CHECK(g.theta > 0);
    }
}

TEST_CASE("zed parameters") {
  auto z = zed_params(30);
  CHECK(z.v == doctest::Approx(48.298).epsilon(1e-4));
  CHECK(z.phi == doctest::Approx(0.48784).epsilon(1e-4));
  CHECK(zed_params(1).v == doctest::Approx(1.6099).epsilon(1e-4));
  CHECK(zed_params(480).phi == z.phi);
  CHECK(z.v * z.phi == doctest::Approx(30 * pi / 4));
}

TEST_CASE("gamma pdf and cdf") {
  CHECK(gamma_cdf(0.0, 2.0, 1.5) == 0.0);
  CHECK(gamma_cdf(1.0, 1.0, 1.0) == doctest::Approx(0.63212).epsilon(1e-5));
  CHECK(gamma_cdf(1e6, 2.0, 1.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(gamma_cdf(-1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(gamma_pdf(-1.0, 1.0, 1.0), DomainError);
  // k = 1/3 has an integrable singularity at 0; z = s^3 removes it.
  double k = 1.0 / 3, th = 3.0;
  double num = specfun::integrate_gl([&](double s) { return gamma_pdf(s * s * s, k, th) * 3 * s * s; }, 0.0, 1.0, 16, 32);
  CHECK(std::abs(gamma_cdf(1.0, k, th) - num) < 1e-8);
  double prev = 0;
  for (double z = 0.1; z < 50; z *= 1.5) {
    double c = gamma_cdf(z, 4.2, 0.7);
    CHECK(c >= prev);
    prev = c;
  }
  auto q = specfun::gc_rule(1500);
  CHECK(q->integrate([](double z) { return gamma_pdf(z, 3.5, 2.0); }) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("gain moments against simulated channels") {
  Rng rng({7, 0});
  const int draws = 200000;
  for (auto [a, b] : {std::pair{1, 0}, {0, 3}, {2, 2}, {5, 1}}) {
    double s1 = 0, s2 = 0, s4 = 0;
    for (int t = 0; t < draws; ++t) {
      std::complex<double> acc = 0;
      for (int i = 0; i < a + b; ++i) {
        double xi = std::abs(rng.cn()) * std::abs(rng.cn());
        acc += i < a ? std::complex<double>(xi, 0) : std::polar(xi, rng.phase());
      }
      double d = std::norm(acc);
      s1 += d;
      s2 += d * d;
      s4 += d * d * d * d;
    }
    auto m = delta_moments(a, b);
    double mean = s1 / draws, sec = s2 / draws;
    double se1 = std::sqrt((sec - mean * mean) / draws), se2 = std::sqrt((s4 / draws - sec * sec) / draws);
    CAPTURE(a);
    CAPTURE(b);
    CHECK(std::abs(mean - m.mean) < 3 * se1);
    CHECK(std::abs(sec - m.second_moment) < 3 * se2);
  }
}

TEST_CASE("fitted laws track the empirical distributions") {
  Rng rng({11, 0});
  const int draws = 1000000;
  std::vector<double> d1(draws), z(draws);
  for (int t = 0; t < draws; ++t) {
    std::complex<double> acc = 0;
    double zs = 0;
    for (int i = 0; i < 30; ++i) {
      double xi = std::abs(rng.cn()) * std::abs(rng.cn());
      acc += i < 15 ? std::complex<double>(xi, 0) : std::polar(xi, rng.phase());
      zs += xi;
    }
    d1[t] = std::norm(acc);
    z[t] = zs;
  }
  auto ks = [&](std::vector<double>& x, auto&& cdf) {
    std::sort(x.begin(), x.end());
    double d = 0, n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      double f = cdf(x[i]);
      d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
  };
  auto fit = delta_fit(15, 15);
  auto zp = zed_params(30);
  CHECK(ks(d1, [&](double x) { return gamma_cdf(x, fit); }) < 0.05);
  CHECK(ks(z, [&](double x) { return gamma_cdf(x, zp.v, zp.phi); }) < 0.02);
}
