#include "mcf/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mcf {

namespace {

constexpr double kPi = 3.14159265358979323846;

double point_segment_distance(double px, double py, double ax, double ay,
                              double bx, double by) {
  double dx = bx - ax, dy = by - ay;
  double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (ax + t * dx), py - (ay + t * dy));
}

}  // namespace

bool ConvexBody::contains(double z, double r) const {
  r = std::abs(r);
  if (profile.kind == ProfileKind::PolarGraph) {
    double dz = z - profile.origin_z;
    double dist = std::hypot(dz, r);
    if (dist == 0) return true;
    double th = std::atan2(r, dz);
    double rho = pchip_eval(profile.param, profile.value, th);
    return dist <= rho;
  }
  if (z < profile.param.front() || z > profile.param.back()) return false;
  return r <= pchip_eval(profile.param, profile.value, z);
}

double ConvexBody::boundary_distance(double z, double r) const {
  r = std::abs(r);
  double best = std::numeric_limits<double>::infinity();
  std::size_t m = profile.size();
  double z0, r0, z1, r1;
  profile.node_position(0, z0, r0);
  for (std::size_t i = 1; i < m; ++i) {
    profile.node_position(i, z1, r1);
    best = std::min(best, point_segment_distance(z, r, z0, r0, z1, r1));
    z0 = z1;
    r0 = r1;
  }
  return best;
}

double ConvexBody::inradius() const {
  // Scan centres along the axis, then refine around the best one.
  double zmin, zmax, rtmp;
  if (profile.kind == ProfileKind::PolarGraph) {
    profile.node_position(0, zmax, rtmp);
    profile.node_position(profile.size() - 1, zmin, rtmp);
    if (zmin > zmax) std::swap(zmin, zmax);
  } else {
    zmin = profile.param.front();
    zmax = profile.param.back();
  }
  auto clearance = [&](double z) {
    if (!contains(z, 0)) return 0.0;
    return boundary_distance(z, 0);
  };
  const int coarse = 512;
  double best_z = zmin, best = 0;
  for (int i = 0; i <= coarse; ++i) {
    double z = zmin + (zmax - zmin) * double(i) / coarse;
    double c = clearance(z);
    if (c > best) { best = c; best_z = z; }
  }
  double span = (zmax - zmin) / coarse;
  for (int pass = 0; pass < 40; ++pass) {
    bool improved = false;
    for (double dz : {-span, span}) {
      double c = clearance(best_z + dz);
      if (c > best) { best = c; best_z += dz; improved = true; }
    }
    if (!improved) span *= 0.5;
    if (span < 1e-12 * (zmax - zmin)) break;
  }
  return best;
}

ConvexBody reflect_truncate(const ConvexBody& body, double h,
                            std::size_t nodes) {
  const Profile& bp = body.profile;
  bp.validate();
  if (bp.kind != ProfileKind::AxisGraph || !bp.cap_left)
    throw Error("reflect_truncate expects an AxisGraph body with a cap tip");
  double z_tip = bp.param.front();
  if (!(h > z_tip)) throw HeightTooSmallError("h below the tip");
  if (bp.param.back() < h)
    throw Error("reflect_truncate: profile samples must reach the plane {x = h}");

  // Boundary radius of Omega^h at axis coordinate z in [z_tip, 2h - z_tip]:
  // r(min(z, 2h - z)) since r is non-decreasing on an unbounded convex body.
  auto boundary_r = [&](double z) {
    double x = std::min(z, 2.0 * h - z);
    if (x <= z_tip) return 0.0;
    return pchip_eval(bp.param, bp.value, x);
  };

  double zc = h;                 // centroid of the axis segment [z_tip, 2h - z_tip]
  double half = h - z_tip;       // distance from centre to either tip
  ConvexBody out;
  out.profile.kind = ProfileKind::PolarGraph;
  out.profile.n = bp.n;
  out.profile.origin_z = zc;
  out.profile.param.resize(nodes);
  out.profile.value.resize(nodes);
  double t_hi = 2.0 * (half + boundary_r(h));
  for (std::size_t i = 0; i < nodes; ++i) {
    double th = kPi * double(i) / double(nodes - 1);
    out.profile.param[i] = th;
    if (i == 0 || i + 1 == nodes) {
      out.profile.value[i] = half;
      continue;
    }
    double s = std::sin(th), c = std::cos(th);
    double lo = 0, hi = t_hi;
    // f(t) = t sin(th) - r_b(zc + t cos(th)) has a single sign change.
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      double f = mid * s - boundary_r(zc + mid * c);
      (f < 0 ? lo : hi) = mid;
    }
    out.profile.value[i] = 0.5 * (lo + hi);
  }
  out.profile.param.back() = kPi;
  out.profile.validate();
  return out;
}

}  // namespace mcf
