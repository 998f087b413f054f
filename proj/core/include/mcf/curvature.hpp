#pragma once

#include <vector>

#include "mcf/profile.hpp"

namespace mcf {

/// Pointwise curvature data at one profile node.
///
/// On a rotationally symmetric hypersurface exactly two distinct principal
/// curvatures occur: kappa_ax along the meridian (multiplicity 1) and
/// kappa_rot in the rotational directions (multiplicity n-1).  The outward
/// normal of a convex body is used throughout, so a round sphere of radius R
/// has H = n/R > 0.
struct CurvatureNode {
  double param = 0;
  double z = 0;      ///< axis coordinate
  double r = 0;      ///< distance to the axis
  double kappa_ax = 0;
  double kappa_rot = 0;
  double kappa_min = 0;  ///< kappa_1
  double kappa_max = 0;  ///< kappa_n
  double H = 0;
  double normA2 = 0;     ///< |A|^2
  double normAring2 = 0; ///< |Aring|^2 = |A|^2 - H^2/n, clamped at 0
  double ratio = 0;      ///< kappa_1 / H, NaN where H <= 0
};

struct CurvatureField {
  int n = 2;
  std::vector<CurvatureNode> nodes;

  double max_H() const;
  double max_normA() const;       ///< sup |A|
  double max_Aring_over_H() const;///< sup |Aring|/H over nodes with H > 0
  double min_ratio() const;       ///< min kappa_1/H (NaN-free nodes only)
};

/// Curvatures of a profile by centered second-order finite differences.
/// PolarGraph poles use ghost nodes by even reflection and the umbilic limit
/// kappa_ax = kappa_rot.  AxisGraph nodes are differenced along the meridian
/// curve itself (chord/arclength based), which stays finite at caps where
/// r -> 0 with infinite graph slope.
CurvatureField compute_curvatures(const Profile& p);

/// |Aring| = sqrt(|A|^2 - H^2/n) per node (round-off clamped at 0).
std::vector<double> trace_free_norm(const CurvatureField& cf);

struct GaussIntegrals {
  double intK = 0;  ///< integral of the Gauss curvature K over the hypersurface
  double intHn = 0; ///< integral of H^n
};

/// Quadrature of K and H^n over the full hypersurface of revolution.
/// Requires a closed convex PolarGraph profile; for such a profile intK
/// equals area(S^n) within quadrature error.
GaussIntegrals gauss_integrals(const Profile& p);

struct PinchingConstants {
  double min_ratio_H = 0;   ///< min over nodes of kappa_1 / H
  double min_ratio_kn = 0;  ///< min over nodes of kappa_1 / kappa_n
};

/// Requires H > 0 at all nodes.
PinchingConstants pinching_constant(const CurvatureField& cf);

/// Surface area of the unit m-sphere S^m.
double sphere_area(int m);

}  // namespace mcf
