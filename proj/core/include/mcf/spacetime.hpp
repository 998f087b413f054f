#pragma once

#include <string>
#include <vector>

#include "mcf/flow.hpp"

namespace mcf {

/// A recorded point of the discrete spacetime: ambient position restricted
/// to the (axis, radius) half-plane, a time, and back-references into the
/// FlowHistory it came from.
struct SpacetimePoint {
  double z = 0;
  double r = 0;
  double t = 0;
  int snapshot_index = -1;
  int node_index = -1;
};

/// P_r(X, t) = B_r(X) x (t - r^2/(2n), t].
struct ParabolicCylinder {
  SpacetimePoint center;
  double radius = 0;

  double t_min(int n) const { return center.t - radius * radius / (2.0 * n); }
  double t_max() const { return center.t; }
};

/// Ambient distance between half-plane points, minimised over the orbit
/// circle of the second point (equals the plain 2-D distance).
double ambient_distance(double z1, double r1, double z2, double r2);

double H_at(const FlowHistory& hist, const SpacetimePoint& p);

SpacetimePoint spacetime_point(const FlowHistory& hist, int snapshot_index,
                               int node_index);

/// All recorded nodes inside the cylinder.  Throws EmptyWindowError when no
/// snapshot time falls in the cylinder's time range (distinct from a
/// legitimately empty node set).
std::vector<SpacetimePoint> cylinder_nodes(const FlowHistory& hist,
                                           const ParabolicCylinder& cyl);

struct PickCertificate {
  std::vector<SpacetimePoint> chain;  ///< doubling chain, seed first
  std::vector<double> chain_H;
  bool property1 = false;  ///< (Y,s) in P_{delta/(2 H(seed))}(seed)
  bool property2 = false;  ///< H(Y,s) >= H(seed)
  bool property3 = false;  ///< H <= 2 H(Y,s) in P_{delta/(4 H(Y,s))}(Y,s)
  int cylinder_node_count = 0;  ///< coverage of the final property-3 cylinder
};

struct PickResult {
  SpacetimePoint point;
  PickCertificate certificate;

  std::string to_json() const;
};

/// Point selection by curvature doubling: starting from the seed, while the
/// current point fails H <= 2 H(current) in P_{delta/(4H)}(current), jump to
/// a recorded point with at least twice the curvature (ties broken by
/// smallest snapshot index, then smallest node index).  Terminates because H
/// is bounded on the finite dataset.
PickResult pick_point(const FlowHistory& hist, const SpacetimePoint& seed,
                      double delta);

/// Parabolic rescaling about (center, center.t): positions lambda (X - Y),
/// times lambda^2 (t - s); curvatures are recomputed and satisfy
/// H_new = H_old / lambda.  The translation uses the axis component of the
/// center only (an off-axis translation would break rotational symmetry).
FlowHistory rescale(const FlowHistory& hist, const SpacetimePoint& center,
                    double lambda);

struct HorizonMaximizer {
  double horizon = 0;   ///< j
  int snapshot_index = -1;
  int node_index = -1;
  double t = 0;
  double value = 0;     ///< t (j - t) H^2 at the maximiser
};

struct TypeReport {
  std::vector<double> times;
  std::vector<double> sqrt_t_max_H;   ///< sqrt(t) * max H per snapshot
  double sup_sqrt_t_max_H = 0;
  bool finite_time_blowup = false;
  std::vector<HorizonMaximizer> horizon_maximizers;
  std::string classification;  ///< evidence-only label
  int node_count = 0;

  std::string to_json() const;
};

/// Singularity-type evidence: the running quantity sqrt(t) max H, its sup,
/// and for each horizon j the maximiser of t (j - t) H^2 over the recorded
/// spacetime.  Finite data cannot prove a sup finite; the label says so.
TypeReport classify_type(const FlowHistory& hist,
                         const std::vector<double>& horizons = {});

}  // namespace mcf
