#include <cmath>

#include "doctest.h"
#include "mcf/verify.hpp"

using namespace mcf;

namespace {

FlowHistory sphere_flow(std::size_t nodes = 201, double t_end = 0.15) {
  FlowConfig cfg;
  cfg.n = 2;
  cfg.t_end = t_end;
  cfg.record_interval = t_end / 10;
  return run_flow(make_sphere(2, 1.0, nodes), cfg);
}

}  // namespace

TEST_CASE("umbilic audit on the sphere measures exactly zero") {
  FlowHistory h = sphere_flow();
  EstimateReport r = audit_umbilic(h, 0.6, 0.4, {0.05, 0.1}, {0.0, 1.0});
  CHECK(r.pass);
  CHECK(r.measured.at("C_meas_eps_0.05") == 0.0);
  CHECK(r.measured.at("C_meas_eps_0.1") == 0.0);
}

TEST_CASE("umbilic audit rejects an unpinched initial surface") {
  FlowHistory h = sphere_flow(101, 0.05);
  CHECK_THROWS_AS(audit_umbilic(h, 0.6, 0.9, {0.1}, {0.0, 1.0}),
                  InitialPinchFailsError);
}

TEST_CASE("interior audit matches an exhaustive scan on the sphere") {
  FlowHistory h = sphere_flow();
  Point2 p{0, 0};
  double r = 0.4, L = 2.0;
  EstimateReport rep = audit_interior(h, p, r, L);
  CHECK(rep.pass);

  // independent exhaustive evaluation
  double theta = 0;
  for (const auto& nd : h.snapshots.front().curv.nodes)
    if (std::hypot(nd.z, nd.r) <= 2 * L * r) theta = std::max(theta, nd.H);
  theta *= r;
  double sup = 0;
  for (const auto& s : h.snapshots)
    for (const auto& nd : s.curv.nodes) {
      double d = std::hypot(nd.z - p.z, nd.r - p.r);
      if (d > L * r) continue;
      sup = std::max(sup, (1.0 - d * d / (L * r * L * r)) * nd.H);
    }
  CHECK(rep.measured.at("C_meas") ==
        doctest::Approx(sup * r / (L * L * L * theta)).epsilon(1e-12));
}

TEST_CASE("interior audit cutoff vanishes exactly on the ball boundary") {
  // Hand-built ellipse (radial semi-axis 1, axial 2) with a node exactly at
  // (0, 1), which is exactly on the boundary of B_{Lr}(origin) for L = 2,
  // r = 0.5; every other node lies strictly outside, so the sup is 0.0.
  Profile p;
  p.kind = ProfileKind::AxisGraph;
  p.n = 2;
  p.cap_left = p.cap_right = true;
  std::size_t m = 401;  // odd: x = 0 is a node
  for (std::size_t i = 0; i < m; ++i) {
    double x = -2.0 + 4.0 * double(i) / double(m - 1);
    p.param.push_back(x);
    p.value.push_back(std::sqrt(std::max(0.0, 1.0 - x * x / 4.0)));
  }
  FlowHistory h;
  h.config.n = 2;
  Snapshot s;
  s.t = 0;
  s.profile = p;
  s.curv = compute_curvatures(p);
  h.snapshots.push_back(std::move(s));

  EstimateReport rep = audit_interior(h, {0, 0}, 0.5, 2.0);
  CHECK(rep.measured.at("C_meas") == 0.0);
}

TEST_CASE("interior audit rejects a ball that touches the surface") {
  FlowHistory h = sphere_flow(101, 0.18);
  CHECK_THROWS_AS(audit_interior(h, {0, 0}, 0.9, 2.0), BallNotContainedError);
}

TEST_CASE("pinching preservation on the sphere") {
  FlowHistory h = sphere_flow();
  EstimateReport r = audit_pinching_preservation(h, 0.4);
  CHECK(r.pass);
  // kappa_1 = kappa_2 on the sphere: m(t) = (1 - 2 alpha)/2 at every time
  CHECK(r.measured.at("m_min") == doctest::Approx(0.1).epsilon(1e-6));
  CHECK_THROWS_AS(audit_pinching_preservation(h, 0.6), NotPinchedError);
}

TEST_CASE("surface Laplacian against sphere eigenfunctions") {
  Profile p = make_sphere(2, 1.0, 801);
  std::vector<double> f0(p.size()), f1(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    f0[i] = std::cos(p.param[i]);  // axial coordinate: Delta z = -2 z
    f1[i] = std::sin(p.param[i]);  // first harmonic profile: -2 sin
  }
  auto l0 = laplace_beltrami(p, f0, 0);
  auto l1 = laplace_beltrami(p, f1, 1);
  for (std::size_t i = 10; i + 10 < p.size(); ++i) {
    CHECK(l0[i] == doctest::Approx(-2.0 * f0[i]).epsilon(1e-4));
    CHECK(l1[i] == doctest::Approx(-2.0 * f1[i]).epsilon(1e-4));
  }
}

TEST_CASE("barrier audit: residual, direction cosine, refinement decay") {
  FlowConfig cfg;
  cfg.n = 2;
  cfg.t_end = 0.1;
  cfg.record_interval = 0.02;
  FlowHistory h = run_flow(make_ellipsoid(2, 1.0, 1.5, 201), cfg);
  FlowHistory h2 = run_flow(make_ellipsoid(2, 1.0, 1.5, 401), cfg);

  Point2 p{-3.0, 0.0}, e{1.0, 0.0};
  EstimateReport r = audit_barrier(h, p, e, -1, &h2);
  CHECK(r.pass);

  // independent beta: minimum direction cosine over the initial orbit
  double beta = 1e300;
  const Snapshot& s0 = h.snapshots.front();
  for (std::size_t i = 0; i < s0.profile.size(); ++i) {
    double z, rr;
    s0.profile.node_position(i, z, rr);
    for (int a = 0; a < 720; ++a) {
      double ph = a * M_PI / 360.0;
      double dx = rr * std::cos(ph) - p.r, dy = rr * std::sin(ph),
             dz = z - p.z;
      beta = std::min(beta, dz / std::sqrt(dx * dx + dy * dy + dz * dz));
    }
  }
  CHECK(r.measured.at("beta") == doctest::Approx(beta).epsilon(1e-6));

  // p inside the body: no positive direction cosine exists
  CHECK_THROWS_AS(audit_barrier(h, {0.0, 0.0}, e), BetaNonPositiveError);
}

TEST_CASE("estimate reports serialize to JSON with verdict and constants") {
  FlowHistory h = sphere_flow(101, 0.05);
  EstimateReport r = audit_pinching_preservation(h, 0.3);
  std::string j = r.to_json();
  CHECK(j.find("\"pass\": true") != std::string::npos);
  CHECK(j.find("m_min") != std::string::npos);
}
