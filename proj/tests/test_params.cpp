#include <doctest.h>

#include <cmath>
#include <sstream>

#include "zeris/error.hpp"
#include "zeris/params.hpp"

using namespace zeris;

TEST_CASE("effective power and derived constants") {
  SystemParams p;
  p.tau = 0.5;
  p.eta = 1.0;
  p.Ps = 2.0;
  CHECK(derive_constants(p).Pt == 2.0);

  SystemParams d;
  auto c = derive_constants(d);
  CHECK(c.Q == doctest::Approx(0.030036).epsilon(1e-12));
  CHECK(c.epsilon == doctest::Approx(std::pow(2.0, 2.5) - 1).epsilon(1e-15));
  CHECK(c.epsilon == doctest::Approx(4.6569).epsilon(1e-4));
  CHECK(c.beta_ura == doctest::Approx(std::pow(100.0, -2.7)).epsilon(1e-15));
  CHECK(c.beta_pu == doctest::Approx(1.9953e-3).epsilon(1e-4));
  CHECK(c.varsigma == doctest::Approx(c.epsilon / (c.beta_pu * c.beta_ura)));
  CHECK(c.rho_t == doctest::Approx(c.Pt / d.sigma2));
  CHECK(derive_constants(d).Pt == c.Pt);
}

TEST_CASE("derive_constants rejects invalid parameters") {
  SystemParams p;
  p.tau = 1.0;
  CHECK_THROWS_AS(derive_constants(p), InvalidArgument);
  p.tau = 0.0;
  CHECK_THROWS_AS(derive_constants(p), InvalidArgument);
  p = SystemParams{};
  p.N1 = 10;
  CHECK_THROWS_AS(derive_constants(p), InvalidArgument);
  p = SystemParams{};
  p.d_re = 0;
  CHECK_THROWS_AS(derive_constants(p), InvalidArgument);
  p = SystemParams{};
  p.L = 0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
}

TEST_CASE("path_loss") {
  CHECK(path_loss(1.0, 3.3) == 1.0);
  CHECK(path_loss(10.0, 2.7) == doctest::Approx(1.9953e-3).epsilon(1e-4));
  CHECK(path_loss(10.0, 0.0) == 1.0);
  CHECK_THROWS_AS(path_loss(0.0, 2.7), InvalidArgument);
  CHECK_THROWS_AS(path_loss(-3.0, 2.7), InvalidArgument);
}

TEST_CASE("dBm conversion") {
  CHECK(dbm_to_watts(30) == doctest::Approx(1.0));
  CHECK(dbm_to_watts(-45) == doctest::Approx(3.1622776601683795e-08).epsilon(1e-14));
  CHECK(watts_to_dbm(dbm_to_watts(47.3)) == doctest::Approx(47.3).epsilon(1e-14));
  CHECK(SystemParams{}.sigma2 == doctest::Approx(dbm_to_watts(-45)).epsilon(1e-15));
}

TEST_CASE("config file parsing") {
  std::istringstream in(
      "# comment\n"
      "Ps_dbm = 40\n"
      "N=60   # inline\n"
      "\n"
      "sigma2_dbm=-50\n"
      "d_re=12.5\n");
  auto p = ParamsBuilder().read(in).build();
  CHECK(p.Ps == doctest::Approx(10.0));
  CHECK(p.N == 60);
  CHECK(p.N1 == 30);
  CHECK(p.N2 == 30);
  CHECK(p.sigma2 == doctest::Approx(1e-8));
  CHECK(p.d_re == 12.5);

  CHECK(ParamsBuilder().set("N", 31.0).build().N1 == 15);
  CHECK(ParamsBuilder().set("N", 31.0).build().N2 == 16);
  CHECK(ParamsBuilder().set("N1", 10.0).build().N2 == 20);
  CHECK(ParamsBuilder().set("N1", 4.0).set("N2", 6.0).build().N == 10);

  std::istringstream bad("Ps=abc\n");
  CHECK_THROWS_AS(ParamsBuilder().read(bad), InvalidArgument);
  CHECK_THROWS_AS(ParamsBuilder().assign("nonsense=1"), InvalidArgument);
  CHECK_THROWS_AS(ParamsBuilder().assign("novalue"), InvalidArgument);
  CHECK_THROWS_AS(ParamsBuilder().set("N", 2.5), InvalidArgument);
  CHECK_THROWS_AS(ParamsBuilder().set("N1", 40.0).build(), InvalidArgument);
}

TEST_CASE("describe round-trips through the builder") {
  SystemParams p;
  p.Ps = 0.123456789012345;
  p.N = 17;
  p.N1 = 5;
  p.N2 = 12;
  ParamsBuilder b;
  for (auto& [k, v] : p.describe()) b.set(k, v);
  auto q = b.build();
  CHECK(q.describe() == p.describe());
  CHECK(q.Ps == p.Ps);
}
