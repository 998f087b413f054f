#pragma once

#include <cstddef>
#include <vector>

#include "mcf/errors.hpp"

namespace mcf {

enum class ProfileKind { AxisGraph, PolarGraph };

/// A rotationally symmetric hypersurface in R^{n+1}, stored as a sampled
/// 1-D generating function.
///
/// AxisGraph:  param = coordinate x on the symmetry axis, value = radius
///             r(x) >= 0.  A value of 0 is legal only at a declared cap end.
/// PolarGraph: param = polar angle theta in [0, pi] about the point
///             (origin_z, 0) on the axis, value = radial distance
///             rho(theta) > 0.  Covers the whole closed hypersurface.
struct Profile {
  ProfileKind kind = ProfileKind::PolarGraph;
  int n = 2;              ///< hypersurface dimension (n >= 1)
  double origin_z = 0.0;  ///< axis position of the polar origin (PolarGraph)
  bool cap_left = false;  ///< AxisGraph: r = 0 allowed at the first sample
  bool cap_right = false; ///< AxisGraph: r = 0 allowed at the last sample
  std::vector<double> param;
  std::vector<double> value;

  std::size_t size() const { return param.size(); }

  /// Throws if the sample arrays violate the type invariants.
  void validate() const;

  /// Ambient position of node i restricted to the (axis, radius) half-plane.
  void node_position(std::size_t i, double& z, double& r) const;

  /// True if the parameter grid is uniform within a relative tolerance.
  bool uniform_grid(double rel_tol = 1e-9) const;
};

Profile make_sphere(int n, double radius, std::size_t nodes,
                    double center_z = 0.0);

/// Rotationally symmetric ellipsoid with radial semi-axis a and axial
/// semi-axis c, centred at the origin, as a PolarGraph.
Profile make_ellipsoid(int n, double a, double c, std::size_t nodes);

/// Paraboloid body boundary u(rho) = rho^2 / (2 p) as an AxisGraph radius
/// function r(x) = sqrt(2 p x) on [0, x_max], with a cap at x = 0.
Profile make_paraboloid(int n, double p, double x_max, std::size_t nodes);

/// Cone body boundary r(x) = slope * x on [0, x_max] (cap at the vertex).
Profile make_cone(int n, double slope, double x_max, std::size_t nodes);

/// Monotone cubic (Fritsch--Carlson) interpolation of (xs, ys) at x.
double pchip_eval(const std::vector<double>& xs, const std::vector<double>& ys,
                  double x);

/// Resample a profile onto a uniform parameter grid of the same extent and
/// node count using monotone cubic interpolation.  Pole/end samples are kept
/// exactly.
Profile resample_uniform(const Profile& p);

}  // namespace mcf
