#pragma once

#include "mcf/profile.hpp"

namespace mcf {

/// A profile marked as the boundary of a convex region Omega, with a
/// containment test and an inradius estimate.  Containment and distances are
/// computed in the (axis, radius) half-plane; by rotational symmetry the
/// ambient distance from any point to the hypersurface equals the half-plane
/// distance to the meridian.
struct ConvexBody {
  Profile profile;

  /// Point (z, r), r >= 0, inside the closed region?
  bool contains(double z, double r) const;

  /// Distance from (z, r) to the boundary meridian polyline.
  double boundary_distance(double z, double r) const;

  /// Radius of the largest inscribed ball (centre searched along the axis;
  /// by symmetry and convexity an optimal centre lies on the axis).
  double inradius() const;
};

/// Bounded convex body Omega^h obtained by intersecting an unbounded
/// AxisGraph body (radius increasing away from a cap tip) with its reflection
/// about the plane {x = h}.  The result is returned as a closed PolarGraph
/// about the midpoint of the axis segment inside Omega^h.
ConvexBody reflect_truncate(const ConvexBody& body, double h,
                            std::size_t nodes = 401);

}  // namespace mcf
