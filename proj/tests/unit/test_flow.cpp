#include <cmath>
#include <vector>

#include "doctest.h"
#include "mcf/convex_body.hpp"
#include "mcf/flow.hpp"

using namespace mcf;

namespace {

// Independent reference integrator for the closed polar flow: one
// semi-implicit Euler step (diffusion implicit at frozen metric, lower-order
// terms explicit), tridiagonal solve.  Written from the PDE
//   drho/dt = rho''/g - (g + rho'^2)/(rho g) - (n-1)(rho - rho' cot th)/rho^2,
//   g = rho^2 + rho'^2, with even reflection at the poles where
//   drho/dt = n rho''/rho^2 - n/rho.
std::vector<double> implicit_step(const std::vector<double>& rho, double h,
                                  double dt, int n) {
  std::size_t m = rho.size();
  std::vector<double> a(m, 0), b(m, 0), c(m, 0), d(m, 0);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    double th = i * h;
    double r = rho[i];
    double rp = (rho[i + 1] - rho[i - 1]) / (2 * h);
    double g = r * r + rp * rp;
    double k = dt / (g * h * h);
    a[i] = -k;
    b[i] = 1 + 2 * k;
    c[i] = -k;
    d[i] = r + dt * (-(g + rp * rp) / (r * g) -
                     (n - 1) * (r - rp / std::tan(th)) / (r * r));
  }
  {
    double k = 2.0 * n * dt / (h * h * rho[0] * rho[0]);
    b[0] = 1 + k;
    c[0] = -k;
    d[0] = rho[0] - dt * n / rho[0];
    double k2 = 2.0 * n * dt / (h * h * rho[m - 1] * rho[m - 1]);
    b[m - 1] = 1 + k2;
    a[m - 1] = -k2;
    d[m - 1] = rho[m - 1] - dt * n / rho[m - 1];
  }
  // Thomas algorithm
  for (std::size_t i = 1; i < m; ++i) {
    double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  std::vector<double> out(m);
  out[m - 1] = d[m - 1] / b[m - 1];
  for (std::size_t i = m - 1; i-- > 0;)
    out[i] = (d[i] - c[i] * out[i + 1]) / b[i];
  return out;
}

}  // namespace

TEST_CASE("shrinking sphere follows R(t) = sqrt(R0^2 - 2 n t)") {
  FlowConfig cfg;
  cfg.n = 2;
  cfg.t_end = 0.1;
  cfg.record_interval = 0.02;
  FlowHistory h = run_flow(make_sphere(2, 1.0, 201), cfg);
  CHECK(h.termination == Termination::ReachedTEnd);
  for (const auto& s : h.snapshots) {
    double R = std::sqrt(1.0 - 4.0 * s.t);
    for (double v : s.profile.value)
      CHECK(v == doctest::Approx(R).epsilon(1e-4));
  }
}

TEST_CASE("explicit flow agrees with an independent semi-implicit solver") {
  int n = 2;
  Profile p0 = make_ellipsoid(n, 1.0, 1.5, 201);
  double t_end = 0.05;

  FlowConfig cfg;
  cfg.n = n;
  cfg.t_end = t_end;
  cfg.record_interval = t_end;
  FlowHistory hist = run_flow(p0, cfg);
  const Profile& lib = hist.snapshots.back().profile;
  REQUIRE(hist.snapshots.back().t == doctest::Approx(t_end).epsilon(1e-12));

  double h = p0.param[1] - p0.param[0];
  std::vector<double> rho = p0.value;
  double dt = 0.5 * cfl_limit(p0, n);
  double t = 0;
  while (t < t_end - 1e-15) {
    double step = std::min(dt, t_end - t);
    rho = implicit_step(rho, h, step, n);
    t += step;
  }
  double sup = 0;
  for (std::size_t i = 0; i < rho.size(); ++i)
    sup = std::max(sup, std::fabs(rho[i] - lib.value[i]));
  CHECK(sup < 5e-4);
  CHECK(sup > 0);  // genuinely different schemes
}

TEST_CASE("CFL guard") {
  Profile p = make_sphere(2, 1.0, 101);
  double lim = cfl_limit(p, 2);
  CHECK_NOTHROW(step_mcf(p, 0.9 * lim, 2));
  CHECK_THROWS_AS(step_mcf(p, 1.5 * lim, 2), CFLViolationError);
}

TEST_CASE("polar mollifier matches the spherical heat kernel on a zonal "
          "harmonic") {
  // On S^2 the degree-2 zonal harmonic P_2(cos th) decays as e^{-6 s}.
  std::size_t m = 401;
  Profile p = make_sphere(2, 1.0, m);
  for (std::size_t i = 0; i < m; ++i) {
    double x = std::cos(p.param[i]);
    p.value[i] = 1.0 + 0.1 * 0.5 * (3 * x * x - 1);
  }
  double eps = 0.02;
  Profile q = mollify_polar(p, eps);
  double decay = std::exp(-6.0 * eps);
  for (std::size_t i = 0; i < m; ++i) {
    double x = std::cos(p.param[i]);
    CHECK(q.value[i] ==
          doctest::Approx(1.0 + 0.1 * decay * 0.5 * (3 * x * x - 1))
              .epsilon(1e-4));
  }
  Profile r = mollify_polar(p, 0.0);
  CHECK(r.value == p.value);  // bit-identical
}

TEST_CASE("reflected truncation doubles the cap across the cut plane") {
  double focal = 1.0, h = 1.0;
  ConvexBody parab{make_paraboloid(2, focal, 6.0, 1201)};
  ConvexBody om = reflect_truncate(parab, h, 401);
  om.profile.validate();
  CHECK(om.profile.kind == ProfileKind::PolarGraph);
  for (std::size_t i = 0; i < om.profile.size(); ++i) {
    double z, r;
    om.profile.node_position(i, z, r);
    CHECK(z >= -1e-9);
    CHECK(z <= 2 * h + 1e-9);
    double x = std::min(z, 2 * h - z);
    // skip the near-tip region where interpolating r = sqrt(2x) on the
    // uniform x grid dominates the comparison error
    if (x >= 0.2)
      CHECK(r == doctest::Approx(std::sqrt(2 * focal * x)).epsilon(1e-4));
  }
  // poles sit at the tip and its mirror image
  CHECK(om.profile.value.front() == doctest::Approx(h).epsilon(1e-9));
  CHECK(om.profile.value.back() == doctest::Approx(h).epsilon(1e-9));
  CHECK_THROWS_AS(reflect_truncate(parab, -0.5, 101), HeightTooSmallError);
}

TEST_CASE("inradius against a brute-force inscribed-ball search") {
  ConvexBody body{make_ellipsoid(2, 1.0, 1.5, 801)};
  // dense boundary polyline
  std::vector<double> bz, br;
  for (std::size_t i = 0; i < body.profile.size(); ++i) {
    double z, r;
    body.profile.node_position(i, z, r);
    bz.push_back(z);
    br.push_back(r);
  }
  double best = 0;
  for (int k = 0; k <= 2000; ++k) {
    double z = -1.5 + 3.0 * k / 2000.0;
    double dmin = 1e300;
    for (std::size_t i = 0; i < bz.size(); ++i)
      dmin = std::min(dmin, std::hypot(bz[i] - z, br[i]));
    best = std::max(best, dmin);
  }
  CHECK(body.inradius() == doctest::Approx(best).epsilon(1e-3));
  CHECK(body.inradius() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(body.contains(0.0, 0.5));
  CHECK_FALSE(body.contains(0.0, 1.2));
  CHECK(body.boundary_distance(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("existence pipeline is deterministic and skips truncation for a "
          "bounded body") {
  FlowConfig cfg;
  cfg.n = 2;
  cfg.t_end = 0.02;
  ConvexBody sphere{make_sphere(2, 1.0, 201)};
  ExistenceReport a = existence_pipeline(sphere, {7.0}, {0.02, 0.01}, cfg);
  CHECK(a.runs.size() == 2);  // one per smoothing level, no truncation matrix

  ConvexBody parab{make_paraboloid(2, 1.0, 6.0, 1201)};
  ExistenceReport r1 =
      existence_pipeline(parab, {0.8, 1.2}, {0.02, 0.01}, cfg, 0.5, 2);
  ExistenceReport r2 =
      existence_pipeline(parab, {0.8, 1.2}, {0.02, 0.01}, cfg, 0.5, 1);
  CHECK(r1.runs.size() == 4);
  CHECK(r1.finest_pair_distance == r2.finest_pair_distance);  // thread count
  for (std::size_t i = 0; i < r1.runs.size(); ++i)
    CHECK(r1.runs[i].history.snapshots.back().profile.value ==
          r2.runs[i].history.snapshots.back().profile.value);
}

TEST_CASE("blowup termination reports sensible extinction estimate") {
  FlowConfig cfg;
  cfg.n = 3;
  FlowHistory h = run_flow(make_sphere(3, 1.0, 151), cfg);
  CHECK(h.termination == Termination::CurvatureBlowup);
  CHECK(h.extinction_estimate() == doctest::Approx(1.0 / 6.0).epsilon(1e-3));
}
