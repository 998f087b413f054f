#include <cmath>

#include "doctest.h"
#include "mcf/curvature.hpp"

using namespace mcf;

namespace {

// Closed-form principal curvatures of the ellipsoid with radial semi-axis a
// and axial semi-axis c at the point with ellipse parameter t
// (z = c cos t, r = a sin t), derived independently of the library:
//   E = c^2 sin^2 t + a^2 cos^2 t,
//   kappa_ax = a c / E^{3/2},  kappa_rot = c / (a sqrt(E)).
struct EllipsoidOracle {
  double a, c;
  double E(double t) const {
    double s = std::sin(t), co = std::cos(t);
    return c * c * s * s + a * a * co * co;
  }
  double kax(double t) const { return a * c / std::pow(E(t), 1.5); }
  double krot(double t) const { return c / (a * std::sqrt(E(t))); }
};

}  // namespace

TEST_CASE("sphere curvatures are 1/R at every node") {
  for (int n : {2, 3, 5}) {
    Profile p = make_sphere(n, 2.0, 201);
    CurvatureField cf = compute_curvatures(p);
    for (const auto& nd : cf.nodes) {
      CHECK(nd.kappa_ax == doctest::Approx(0.5).epsilon(1e-8));
      CHECK(nd.kappa_rot == doctest::Approx(0.5).epsilon(1e-8));
      CHECK(nd.H == doctest::Approx(n * 0.5).epsilon(1e-8));
      CHECK(nd.normAring2 == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(nd.ratio == doctest::Approx(1.0 / n).epsilon(1e-8));
    }
  }
}

TEST_CASE("ellipsoid curvatures match the closed form pointwise") {
  EllipsoidOracle o{1.0, 1.5};
  Profile p = make_ellipsoid(2, o.a, o.c, 801);
  CurvatureField cf = compute_curvatures(p);
  for (const auto& nd : cf.nodes) {
    double t = std::atan2(nd.r / o.a, nd.z / o.c);
    CHECK(nd.kappa_ax == doctest::Approx(o.kax(t)).epsilon(2e-4));
    CHECK(nd.kappa_rot == doctest::Approx(o.krot(t)).epsilon(2e-4));
    // oblong ellipsoid: meridian is always the flattest direction
    CHECK(nd.kappa_ax <= nd.kappa_rot + 1e-9);
  }
  PinchingConstants pc = pinching_constant(cf);
  CHECK(pc.min_ratio_H == doctest::Approx(1.0 / 3.25).epsilon(1e-4));
  CHECK(pc.min_ratio_kn == doctest::Approx(1.0 / 2.25).epsilon(1e-4));
}

TEST_CASE("paraboloid cap as an axis graph reproduces the graph formulas") {
  // u(rho) = rho^2/2: kappa_ax = (1+rho^2)^{-3/2}, kappa_rot =
  // rho^{-1}... evaluated at radial distance 1.
  Profile p = make_paraboloid(2, 1.0, 3.0, 2401);
  CurvatureField cf = compute_curvatures(p);
  std::size_t best = 0;
  for (std::size_t i = 0; i < cf.nodes.size(); ++i)
    if (std::fabs(cf.nodes[i].r - 1.0) < std::fabs(cf.nodes[best].r - 1.0))
      best = i;
  CHECK(cf.nodes[best].kappa_ax ==
        doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-5));
  CHECK(cf.nodes[best].kappa_rot ==
        doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-5));
  // tip is umbilic with curvature u''(0) = 1; sampling r = sqrt(2x) on a
  // uniform x grid limits the achievable accuracy at the pole itself
  CHECK(cf.nodes[0].kappa_ax == cf.nodes[0].kappa_rot);
  CHECK(cf.nodes[0].kappa_ax == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("cone flank has vanishing meridian curvature") {
  Profile p = make_cone(2, 0.5, 4.0, 801);
  CurvatureField cf = compute_curvatures(p);
  for (std::size_t i = 10; i + 1 < cf.nodes.size(); ++i)
    CHECK(std::fabs(cf.nodes[i].kappa_ax) < 1e-8);
}

TEST_CASE("trace-free norm is clamped at zero") {
  Profile p = make_sphere(2, 1.0, 101);
  CurvatureField cf = compute_curvatures(p);
  for (double v : trace_free_norm(cf)) CHECK(v >= 0.0);
}

TEST_CASE("sphere area formula") {
  CHECK(sphere_area(1) == doctest::Approx(2 * M_PI).epsilon(1e-14));
  CHECK(sphere_area(2) == doctest::Approx(4 * M_PI).epsilon(1e-14));
  CHECK(sphere_area(3) == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-14));
}

TEST_CASE("Gauss integrals on the unit sphere, n = 2") {
  Profile p = make_sphere(2, 1.0, 1601);
  GaussIntegrals g = gauss_integrals(p);
  CHECK(g.intK == doctest::Approx(4 * M_PI).epsilon(1e-5));
  CHECK(g.intHn == doctest::Approx(16 * M_PI).epsilon(1e-5));
}

TEST_CASE("Gauss integrals on the ellipsoid against fine closed-form "
          "quadrature") {
  EllipsoidOracle o{1.0, 1.5};
  Profile p = make_ellipsoid(2, o.a, o.c, 1601);
  GaussIntegrals g = gauss_integrals(p);

  // Simpson quadrature of the closed-form integrands in the ellipse
  // parameter: dmu = 2 pi a sin t sqrt(E) dt.
  std::size_t m = 20001;
  double h = M_PI / double(m - 1), iK = 0, iH2 = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double t = i * h;
    double w = (i == 0 || i + 1 == m) ? 1 : (i % 2 ? 4 : 2);
    double dmu = 2 * M_PI * o.a * std::sin(t) * std::sqrt(o.E(t));
    double H = o.kax(t) + o.krot(t);
    iK += w * o.kax(t) * o.krot(t) * dmu;
    iH2 += w * H * H * dmu;
  }
  iK *= h / 3;
  iH2 *= h / 3;
  CHECK(iK == doctest::Approx(4 * M_PI).epsilon(1e-8));  // Gauss--Bonnet
  CHECK(g.intK == doctest::Approx(iK).epsilon(1e-4));
  CHECK(g.intHn == doctest::Approx(iH2).epsilon(1e-4));
}

TEST_CASE("pinching_constant requires positive mean curvature") {
  Profile p = make_sphere(2, 1.0, 101);
  CurvatureField cf = compute_curvatures(p);
  cf.nodes[5].H = -0.1;
  CHECK_THROWS_AS(pinching_constant(cf), NonPositiveHError);
}
