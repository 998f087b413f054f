#include "mcf/curvature.hpp"

#include <cmath>
#include <limits>

namespace mcf {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Nonuniform 3-point first/second derivative at the middle node.
void fd3(double h1, double h2, double f0, double f1, double f2, double& d1,
         double& d2) {
  double denom = h1 * h2 * (h1 + h2);
  d1 = (f2 * h1 * h1 - f0 * h2 * h2 + f1 * (h2 * h2 - h1 * h1)) / denom;
  d2 = 2.0 * (f0 * h2 + f2 * h1 - f1 * (h1 + h2)) / denom;
}

struct PolarDerivs {
  double rho, rho_p, rho_pp;
};

PolarDerivs polar_derivs(const Profile& p, std::size_t i) {
  std::size_t m = p.size();
  if (i == 0 || i + 1 == m) {
    // Pole: ghost node by even reflection gives rho' = 0 and
    // rho'' = 2 (rho_adj - rho_pole) / h^2.
    std::size_t j = (i == 0) ? 1 : m - 2;
    double h = std::abs(p.param[j] - p.param[i]);
    return {p.value[i], 0.0, 2.0 * (p.value[j] - p.value[i]) / (h * h)};
  }
  double d1, d2;
  fd3(p.param[i] - p.param[i - 1], p.param[i + 1] - p.param[i],
      p.value[i - 1], p.value[i], p.value[i + 1], d1, d2);
  return {p.value[i], d1, d2};
}

void polar_curvatures(const Profile& p, std::size_t i, double& k_ax,
                      double& k_rot) {
  auto [rho, rp, rpp] = polar_derivs(p, i);
  std::size_t m = p.size();
  if (i == 0 || i + 1 == m) {
    // Umbilic limit at the pole.
    k_ax = k_rot = (rho - rpp) / (rho * rho);
    return;
  }
  double th = p.param[i];
  double g = rho * rho + rp * rp;
  double sg = std::sqrt(g);
  k_ax = (g + rp * rp - rho * rpp) / (g * sg);
  k_rot = (rho - rp * (std::cos(th) / std::sin(th))) / (rho * sg);
}

void axis_curvatures(const Profile& p, std::size_t i, double& k_ax,
                     double& k_rot) {
  std::size_t m = p.size();
  std::size_t a = (i == 0) ? 0 : i - 1;
  std::size_t c = (i + 1 == m) ? m - 1 : i + 1;
  if (a == i) { a = i; c = i + 2; }
  if (c == i) { a = i - 2; c = i; }
  std::size_t b = (a + c) / 2;
  // Curvature of the meridian polyline through the circumscribed circle of
  // three consecutive points; sign so that a convex body gives k_ax >= 0.
  double x0 = p.param[a], r0 = p.value[a];
  double x1 = p.param[b], r1 = p.value[b];
  double x2 = p.param[c], r2 = p.value[c];
  double ux = x1 - x0, ur = r1 - r0, vx = x2 - x1, vr = r2 - r1;
  double cross = ux * vr - ur * vx;
  double lu = std::hypot(ux, ur), lv = std::hypot(vx, vr);
  double lw = std::hypot(x2 - x0, r2 - r0);
  k_ax = -2.0 * cross / (lu * lv * lw);
  // Rotational curvature from the unit tangent: kappa_rot = t_x / r.
  double tx = x2 - x0, tr = r2 - r0;
  double lt = std::hypot(tx, tr);
  double r = p.value[i];
  bool cap = (i == 0 && p.cap_left) || (i + 1 == m && p.cap_right);
  if (cap || r <= 0) {
    k_rot = k_ax;  // umbilic limit at a cap
  } else {
    k_rot = (tx / lt) / r;
  }
}

}  // namespace

double CurvatureField::max_H() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& nd : nodes) m = std::max(m, nd.H);
  return m;
}

double CurvatureField::max_normA() const {
  double m = 0;
  for (const auto& nd : nodes) m = std::max(m, std::sqrt(nd.normA2));
  return m;
}

double CurvatureField::max_Aring_over_H() const {
  double m = 0;
  for (const auto& nd : nodes)
    if (nd.H > 0) m = std::max(m, std::sqrt(nd.normAring2) / nd.H);
  return m;
}

double CurvatureField::min_ratio() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& nd : nodes)
    if (std::isfinite(nd.ratio)) m = std::min(m, nd.ratio);
  return m;
}

CurvatureField compute_curvatures(const Profile& p) {
  p.validate();
  if (p.size() < 5) throw Error("compute_curvatures: need at least 5 nodes");
  CurvatureField cf;
  cf.n = p.n;
  cf.nodes.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    CurvatureNode& nd = cf.nodes[i];
    nd.param = p.param[i];
    p.node_position(i, nd.z, nd.r);
    if (p.kind == ProfileKind::PolarGraph)
      polar_curvatures(p, i, nd.kappa_ax, nd.kappa_rot);
    else
      axis_curvatures(p, i, nd.kappa_ax, nd.kappa_rot);
    if (!std::isfinite(nd.kappa_ax) || !std::isfinite(nd.kappa_rot))
      throw NonFiniteError("curvature at node " + std::to_string(i));
    nd.kappa_min = std::min(nd.kappa_ax, nd.kappa_rot);
    nd.kappa_max = std::max(nd.kappa_ax, nd.kappa_rot);
    nd.H = nd.kappa_ax + (p.n - 1) * nd.kappa_rot;
    nd.normA2 = nd.kappa_ax * nd.kappa_ax +
                (p.n - 1) * nd.kappa_rot * nd.kappa_rot;
    nd.normAring2 = std::max(0.0, nd.normA2 - nd.H * nd.H / p.n);
    nd.ratio = nd.H > 0 ? nd.kappa_min / nd.H
                        : std::numeric_limits<double>::quiet_NaN();
  }
  return cf;
}

std::vector<double> trace_free_norm(const CurvatureField& cf) {
  std::vector<double> out(cf.nodes.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::sqrt(cf.nodes[i].normAring2);
  return out;
}

double sphere_area(int m) {
  // area(S^m) = 2 pi^{(m+1)/2} / Gamma((m+1)/2)
  return 2.0 * std::pow(kPi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

GaussIntegrals gauss_integrals(const Profile& p) {
  if (p.kind != ProfileKind::PolarGraph)
    throw NotClosedError("gauss_integrals needs a closed PolarGraph profile");
  CurvatureField cf = compute_curvatures(p);
  std::size_t m = p.size();
  std::vector<double> fK(m), fH(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto [rho, rp, rpp] = polar_derivs(p, i);
    double th = p.param[i];
    double orbit = rho * std::sin(th);  // distance to the axis
    double w = sphere_area(p.n - 1) * std::pow(orbit, p.n - 1) *
               std::sqrt(rho * rho + rp * rp);
    double K = cf.nodes[i].kappa_ax *
               std::pow(cf.nodes[i].kappa_rot, p.n - 1);
    fK[i] = K * w;
    fH[i] = std::pow(cf.nodes[i].H, p.n) * w;
  }
  GaussIntegrals out;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    double dth = p.param[i + 1] - p.param[i];
    out.intK += 0.5 * dth * (fK[i] + fK[i + 1]);
    out.intHn += 0.5 * dth * (fH[i] + fH[i + 1]);
  }
  return out;
}

PinchingConstants pinching_constant(const CurvatureField& cf) {
  PinchingConstants out;
  out.min_ratio_H = std::numeric_limits<double>::infinity();
  out.min_ratio_kn = std::numeric_limits<double>::infinity();
  for (const auto& nd : cf.nodes) {
    if (!(nd.H > 0)) throw NonPositiveHError("pinching_constant");
    out.min_ratio_H = std::min(out.min_ratio_H, nd.kappa_min / nd.H);
    if (nd.kappa_max > 0)
      out.min_ratio_kn = std::min(out.min_ratio_kn, nd.kappa_min / nd.kappa_max);
  }
  return out;
}

}  // namespace mcf
