#include <cmath>

#include "doctest.h"
#include "mcf/profile.hpp"

using namespace mcf;

TEST_CASE("sphere factory samples a constant radius covering [0, pi]") {
  Profile p = make_sphere(2, 1.5, 101, 0.25);
  p.validate();
  CHECK(p.kind == ProfileKind::PolarGraph);
  CHECK(p.origin_z == doctest::Approx(0.25));
  CHECK(p.param.front() == doctest::Approx(0.0));
  CHECK(p.param.back() == doctest::Approx(M_PI));
  for (double v : p.value) CHECK(v == doctest::Approx(1.5));
  double z, r;
  p.node_position(0, z, r);
  CHECK(z == doctest::Approx(1.75));
  CHECK(r == doctest::Approx(0.0));
}

TEST_CASE("ellipsoid factory lies on the ellipse") {
  Profile p = make_ellipsoid(2, 1.0, 1.5, 257);
  p.validate();
  for (std::size_t i = 0; i < p.size(); ++i) {
    double z, r;
    p.node_position(i, z, r);
    CHECK(r * r + z * z / 2.25 == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("validate rejects an incomplete polar cover") {
  Profile p = make_sphere(2, 1.0, 11);
  p.param.back() = M_PI - 0.1;  // spacing pi/10 keeps params increasing
  CHECK_THROWS_AS(p.validate(), NotClosedError);
}

TEST_CASE("validate rejects zero radius away from a declared cap") {
  Profile p = make_paraboloid(2, 1.0, 4.0, 51);  // cap_left only
  p.value[25] = 0.0;
  CHECK_THROWS_AS(p.validate(), DegenerateRadiusError);
  Profile q = make_paraboloid(2, 1.0, 4.0, 51);
  q.cap_left = false;
  CHECK_THROWS_AS(q.validate(), DegenerateRadiusError);
}

TEST_CASE("validate rejects non-increasing parameters and non-finite values") {
  Profile p = make_sphere(2, 1.0, 51);
  p.param[10] = p.param[12];
  CHECK_THROWS_AS(p.validate(), Error);
  Profile q = make_sphere(2, 1.0, 51);
  q.value[3] = std::nan("");
  CHECK_THROWS_AS(q.validate(), NonFiniteError);
}

TEST_CASE("monotone cubic interpolation reproduces linear data exactly") {
  std::vector<double> xs{0, 1, 2, 3, 4}, ys{1, 3, 5, 7, 9};
  for (double x : {0.25, 1.5, 3.9})
    CHECK(pchip_eval(xs, ys, x) == doctest::Approx(1 + 2 * x).epsilon(1e-14));
}

TEST_CASE("monotone cubic interpolation does not overshoot step data") {
  std::vector<double> xs{0, 1, 2, 3, 4, 5}, ys{0, 0, 0, 1, 1, 1};
  for (int k = 0; k <= 500; ++k) {
    double v = pchip_eval(xs, ys, 5.0 * k / 500.0);
    CHECK(v >= -1e-14);
    CHECK(v <= 1 + 1e-14);
  }
}

TEST_CASE("interpolation cache is keyed on values, not addresses") {
  std::vector<double> xs{0, 1, 2, 3};
  auto* ys = new std::vector<double>{0, 1, 2, 3};
  CHECK(pchip_eval(xs, *ys, 1.5) == doctest::Approx(1.5));
  delete ys;
  // Same size and (very likely) same allocation; different values.
  auto* ys2 = new std::vector<double>{3, 2, 1, 0};
  CHECK(pchip_eval(xs, *ys2, 1.5) == doctest::Approx(1.5));
  delete ys2;
}

TEST_CASE("resample_uniform keeps endpoints exactly and evens the grid") {
  Profile p = make_sphere(2, 1.0, 65);
  // skew the grid
  for (std::size_t i = 0; i < p.size(); ++i) {
    double s = p.param[i] / M_PI;
    p.param[i] = M_PI * s * s;
    p.value[i] = 1.0 + 0.05 * std::cos(2 * p.param[i]);
  }
  p.param.back() = M_PI;
  CHECK_FALSE(p.uniform_grid());
  Profile q = resample_uniform(p);
  CHECK(q.uniform_grid());
  CHECK(q.param.front() == p.param.front());
  CHECK(q.param.back() == p.param.back());
  CHECK(q.value.front() == p.value.front());
  CHECK(q.value.back() == p.value.back());
  for (std::size_t i = 0; i < q.size(); ++i)
    CHECK(q.value[i] ==
          doctest::Approx(1.0 + 0.05 * std::cos(2 * q.param[i])).epsilon(1e-4));
}
