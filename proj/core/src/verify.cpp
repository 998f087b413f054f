#include "mcf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace mcf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double dist(Point2 a, Point2 b) { return std::hypot(a.z - b.z, a.r - b.r); }

Point2 node_pos(const Snapshot& s, std::size_t i) {
  double z, r;
  s.profile.node_position(i, z, r);
  return {z, r};
}

// Nonuniform centered first/second derivatives of f on abscissae x.
void fd_center(const std::vector<double>& x, const std::vector<double>& f,
               std::size_t i, double& d1, double& d2) {
  double h1 = x[i] - x[i - 1], h2 = x[i + 1] - x[i];
  d1 = (f[i + 1] * h1 * h1 - f[i - 1] * h2 * h2 +
        f[i] * (h2 * h2 - h1 * h1)) /
       (h1 * h2 * (h1 + h2));
  d2 = 2.0 * (f[i - 1] * h2 + f[i + 1] * h1 - f[i] * (h1 + h2)) /
       (h1 * h2 * (h1 + h2));
}

struct MeridianGeom {
  std::vector<double> s;       // arclength
  std::vector<double> z, r;    // positions
  std::vector<double> nu_z, nu_r;  // outward unit normal, meridian plane
};

MeridianGeom meridian_geometry(const Profile& p) {
  MeridianGeom g;
  std::size_t m = p.size();
  g.z.resize(m);
  g.r.resize(m);
  g.s.assign(m, 0.0);
  g.nu_z.assign(m, kNaN);
  g.nu_r.assign(m, kNaN);
  for (std::size_t i = 0; i < m; ++i) p.node_position(i, g.z[i], g.r[i]);
  for (std::size_t i = 1; i < m; ++i)
    g.s[i] = g.s[i - 1] + std::hypot(g.z[i] - g.z[i - 1], g.r[i] - g.r[i - 1]);
  // Interior reference point to orient the normal outward.
  double cz = p.kind == ProfileKind::PolarGraph
                  ? p.origin_z
                  : 0.5 * (p.param.front() + p.param.back());
  for (std::size_t i = 1; i + 1 < m; ++i) {
    double zs, rs, tmp;
    fd_center(g.s, g.z, i, zs, tmp);
    fd_center(g.s, g.r, i, rs, tmp);
    double len = std::hypot(zs, rs);
    double nz = rs / len, nr = -zs / len;
    if (nz * (g.z[i] - cz) + nr * g.r[i] < 0) {
      nz = -nz;
      nr = -nr;
    }
    g.nu_z[i] = nz;
    g.nu_r[i] = nr;
  }
  return g;
}

}  // namespace

std::string EstimateReport::to_json() const {
  nlohmann::json j;
  j["id"] = id;
  j["pass"] = pass;
  j["node_count"] = node_count;
  j["snapshot_count"] = snapshot_count;
  j["tolerance"] = tolerance;
  j["detail"] = detail;
  for (const auto& [k, v] : measured)
    j["measured"][k] = std::isfinite(v) ? nlohmann::json(v)
                                        : nlohmann::json(nullptr);
  return j.dump(2);
}

std::vector<double> laplace_beltrami(const Profile& p,
                                     const std::vector<double>& f,
                                     int harmonic) {
  if (f.size() != p.size())
    throw Error("laplace_beltrami: value count does not match the profile");
  MeridianGeom g = meridian_geometry(p);
  std::size_t m = p.size();
  std::vector<double> out(m, kNaN);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    double f1, f2, r1, tmp;
    fd_center(g.s, f, i, f1, f2);
    fd_center(g.s, g.r, i, r1, tmp);
    if (g.r[i] <= 1e-9) {
      if (harmonic == 0) out[i] = p.n * f2;  // pole limit, even reflection
      continue;
    }
    out[i] = f2 + (p.n - 1) * (r1 / g.r[i]) * f1;
    if (harmonic == 1) out[i] -= (p.n - 1) * f[i] / (g.r[i] * g.r[i]);
  }
  return out;
}

EstimateReport audit_umbilic(const FlowHistory& hist, double L, double alpha,
                             const std::vector<double>& eps_list,
                             Point2 center, const FlowHistory* refined,
                             double stability_tol) {
  if (hist.snapshots.empty()) throw Error("audit_umbilic: empty history");
  if (!(L > 0)) throw Error("audit_umbilic: L must be positive");

  auto run = [&](const FlowHistory& h) {
    const Snapshot& s0 = h.snapshots.front();
    double m0 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s0.curv.nodes.size(); ++i) {
      const auto& nd = s0.curv.nodes[i];
      m0 = std::min(m0, nd.kappa_min - alpha * nd.H);
    }
    if (m0 < -1e-6 * s0.curv.max_H())
      throw InitialPinchFailsError("kappa_1 < alpha H on the initial surface");

    // Theta: sup H over B_{2L} at t = 0 and the annulus B_{2L}\B_L later.
    double theta = 0;
    for (std::size_t k = 0; k < h.snapshots.size(); ++k) {
      const Snapshot& s = h.snapshots[k];
      for (std::size_t i = 0; i < s.curv.nodes.size(); ++i) {
        double d = dist(node_pos(s, i), center);
        bool in = k == 0 ? d <= 2 * L : (d <= 2 * L && d > L);
        if (in) theta = std::max(theta, s.curv.nodes[i].H);
      }
    }
    std::vector<double> c(eps_list.size(), 0.0);
    std::size_t hits = 0;
    for (const Snapshot& s : h.snapshots)
      for (std::size_t i = 0; i < s.curv.nodes.size(); ++i) {
        if (dist(node_pos(s, i), center) > L / 2) continue;
        ++hits;
        const auto& nd = s.curv.nodes[i];
        double aring = std::sqrt(nd.normAring2);
        for (std::size_t e = 0; e < eps_list.size(); ++e)
          c[e] = std::max(c[e], std::max(0.0, aring - eps_list[e] * nd.H));
      }
    if (hits == 0)
      throw EmptyRegionError("no surface nodes inside the inner ball");
    if (theta <= 0) throw Error("audit_umbilic: Theta = 0");
    for (double& v : c) v /= theta;
    return std::pair(theta, c);
  };

  auto [theta, c] = run(hist);
  EstimateReport rep;
  rep.id = "umbilic";
  rep.node_count = int(hist.snapshots.front().profile.size());
  rep.snapshot_count = int(hist.snapshots.size());
  rep.tolerance = stability_tol;
  rep.measured["alpha"] = alpha;
  rep.measured["L"] = L;
  rep.measured["Theta"] = theta;
  rep.pass = true;
  char buf[64];
  for (std::size_t e = 0; e < eps_list.size(); ++e) {
    std::snprintf(buf, sizeof buf, "C_meas_eps_%g", eps_list[e]);
    rep.measured[buf] = c[e];
    if (!std::isfinite(c[e])) rep.pass = false;
  }
  if (refined) {
    auto [theta2, c2] = run(*refined);
    (void)theta2;
    double worst = 0;
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
      double ref = std::max({c[e], c2[e], 1e-12});
      worst = std::max(worst, std::abs(c[e] - c2[e]) / ref);
      std::snprintf(buf, sizeof buf, "C_meas_refined_eps_%g", eps_list[e]);
      rep.measured[buf] = c2[e];
    }
    rep.measured["max_relative_drift"] = worst;
    if (worst > stability_tol) rep.pass = false;
    rep.detail = "constants compared against a doubled-resolution run";
  } else {
    rep.detail = "single-resolution audit: constants recorded, finiteness only";
  }
  return rep;
}

EstimateReport audit_interior(const FlowHistory& hist, Point2 p, double r,
                              double L, const FlowHistory* refined,
                              double stability_tol) {
  if (hist.snapshots.empty()) throw Error("audit_interior: empty history");
  if (!(r > 0) || !(L > 0)) throw Error("audit_interior: r, L must be positive");

  auto run = [&](const FlowHistory& h) {
    for (const Snapshot& s : h.snapshots)
      for (std::size_t i = 0; i < s.profile.size(); ++i)
        if (dist(node_pos(s, i), p) < r)
          throw BallNotContainedError(
              "B_r(p) meets the surface at t = " + std::to_string(s.t));
    const Snapshot& s0 = h.snapshots.front();
    double theta = 0;
    for (std::size_t i = 0; i < s0.curv.nodes.size(); ++i)
      if (dist(node_pos(s0, i), p) <= 2 * L * r)
        theta = std::max(theta, s0.curv.nodes[i].H);
    theta *= r;
    if (theta <= 0)
      throw EmptyRegionError("no initial nodes inside B_{2Lr}(p)");
    double sup = 0;
    std::size_t hits = 0;
    for (const Snapshot& s : h.snapshots)
      for (std::size_t i = 0; i < s.curv.nodes.size(); ++i) {
        double d = dist(node_pos(s, i), p);
        if (d > L * r) continue;  // boundary included: the cutoff vanishes there
        ++hits;
        double cut = 1.0 - d * d / (L * r * L * r);
        sup = std::max(sup, cut * s.curv.nodes[i].H);
      }
    if (hits == 0) throw EmptyRegionError("no nodes inside B_{Lr}(p)");
    return sup * r / (L * L * L * theta);
  };

  double c = run(hist);
  EstimateReport rep;
  rep.id = "interior";
  rep.node_count = int(hist.snapshots.front().profile.size());
  rep.snapshot_count = int(hist.snapshots.size());
  rep.tolerance = stability_tol;
  rep.measured["r"] = r;
  rep.measured["L"] = L;
  rep.measured["C_meas"] = c;
  rep.pass = std::isfinite(c);
  if (refined) {
    double c2 = run(*refined);
    rep.measured["C_meas_refined"] = c2;
    double drift = std::abs(c - c2) / std::max({c, c2, 1e-12});
    rep.measured["relative_drift"] = drift;
    if (drift > stability_tol) rep.pass = false;
    rep.detail = "constant compared against a doubled-resolution run";
  } else {
    rep.detail = "single-resolution audit: constant recorded, finiteness only";
  }
  return rep;
}

EstimateReport audit_pinching_preservation(const FlowHistory& hist,
                                           double alpha, double tol) {
  if (hist.snapshots.empty())
    throw Error("audit_pinching_preservation: empty history");
  std::vector<double> m(hist.snapshots.size());
  for (std::size_t k = 0; k < hist.snapshots.size(); ++k) {
    const Snapshot& s = hist.snapshots[k];
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& nd : s.curv.nodes)
      worst = std::min(worst, nd.kappa_min - alpha * nd.H);
    m[k] = worst / s.curv.max_H();
  }
  if (m.front() < -tol)
    throw NotPinchedError("initial surface is not alpha-pinched");
  EstimateReport rep;
  rep.id = "pinching_preservation";
  rep.node_count = int(hist.snapshots.front().profile.size());
  rep.snapshot_count = int(hist.snapshots.size());
  rep.tolerance = tol;
  rep.measured["alpha"] = alpha;
  rep.measured["m_first"] = m.front();
  rep.measured["m_last"] = m.back();
  rep.measured["m_min"] = *std::min_element(m.begin(), m.end());
  rep.pass = rep.measured["m_min"] >= -tol;
  rep.detail = "m(t) = min(kappa_1 - alpha H) / max H per snapshot";
  return rep;
}

EstimateReport audit_barrier(const FlowHistory& hist, Point2 p, Point2 e,
                             double C, const FlowHistory* refined) {
  if (hist.snapshots.empty()) throw Error("audit_barrier: empty history");
  double elen = std::hypot(e.z, e.r);
  if (!(elen > 0)) throw Error("audit_barrier: zero direction");
  e.z /= elen;
  e.r /= elen;

  if (C < 0) {
    C = 0;
    for (const Snapshot& s : hist.snapshots)
      for (const auto& nd : s.curv.nodes) C = std::max(C, nd.normA2);
  }

  // beta: min over the initial orbit of <X - p, e>/|X - p|, p taken in the
  // meridian half-plane at orbit angle zero.
  const Snapshot& s0 = hist.snapshots.front();
  double beta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s0.profile.size(); ++i) {
    Point2 X = node_pos(s0, i);
    for (int a = 0; a < 360; ++a) {
      double ca = std::cos(a * M_PI / 180.0);
      double sa = std::sin(a * M_PI / 180.0);
      double dx = X.r * ca - p.r, dy = X.r * sa, dz = X.z - p.z;
      double nrm = std::sqrt(dx * dx + dy * dy + dz * dz);
      if (nrm < 1e-12) continue;
      beta = std::min(beta, (e.z * dz + e.r * dx) / nrm);
    }
  }
  if (!(beta > 0))
    throw BetaNonPositiveError(
        "the initial surface is not on the positive side of the barrier");

  // Heat residual of the linear function <X - p, e>, split into the
  // rotationally invariant part and the first orbit harmonic:
  // Delta w0 + H e_z nu_z = 0 and Delta_1 w1 + H e_r nu_r = 0.
  auto run = [&](const FlowHistory& h) {
    double sup0 = 0, sup1 = 0;
    for (const Snapshot& s : h.snapshots) {
      MeridianGeom g = meridian_geometry(s.profile);
      std::size_t m = s.profile.size();
      double rmax = *std::max_element(g.r.begin(), g.r.end());
      std::vector<double> w0(m), w1(m);
      for (std::size_t i = 0; i < m; ++i) {
        w0[i] = e.z * (g.z[i] - p.z) - e.r * p.r;
        w1[i] = e.r * g.r[i];
      }
      std::vector<double> l0 = laplace_beltrami(s.profile, w0, 0);
      std::vector<double> l1 = laplace_beltrami(s.profile, w1, 1);
      for (std::size_t i = 2; i + 2 < m; ++i) {
        if (g.r[i] < 0.05 * rmax) continue;  // keep clear of the poles
        double H = s.curv.nodes[i].H;
        if (std::isfinite(l0[i]))
          sup0 = std::max(sup0, std::abs(l0[i] + H * e.z * g.nu_z[i]));
        if (std::isfinite(l1[i]))
          sup1 = std::max(sup1, std::abs(l1[i] + H * e.r * g.nu_r[i]));
      }
    }
    return std::pair(sup0, sup1);
  };

  auto [sup0, sup1] = run(hist);
  EstimateReport rep;
  rep.id = "barrier";
  rep.node_count = int(s0.profile.size());
  rep.snapshot_count = int(hist.snapshots.size());
  rep.measured["beta"] = beta;
  rep.measured["C_used"] = C;
  rep.measured["sup_residual_m0"] = sup0;
  rep.measured["sup_residual_m1"] = sup1;
  rep.pass = std::isfinite(sup0) && std::isfinite(sup1);
  if (refined) {
    auto [r0, r1] = run(*refined);
    rep.measured["sup_residual_m0_refined"] = r0;
    rep.measured["sup_residual_m1_refined"] = r1;
    rep.tolerance = 0.6;  // expect at least first-order decay under halving
    double s_coarse = std::max(sup0, sup1), s_fine = std::max(r0, r1);
    if (!(s_fine <= rep.tolerance * s_coarse + 1e-12)) rep.pass = false;
    rep.detail = "residuals compared against a doubled-resolution run";
  } else {
    rep.detail = "single-resolution audit: residuals recorded";
  }
  return rep;
}

}  // namespace mcf
