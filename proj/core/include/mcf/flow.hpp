#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcf/convex_body.hpp"
#include "mcf/curvature.hpp"
#include "mcf/profile.hpp"

namespace mcf {

struct FlowConfig {
  int n = 2;
  double dt_safety = 0.8;          ///< CFL fraction in (0, 1]
  double max_H_blowup = -1;        ///< stop threshold; < 0 means 1e3 * initial max H
  std::optional<double> t_end;
  int remesh_interval = 200;       ///< steps between monotone-cubic remeshes
  double record_interval = -1;     ///< snapshot cadence in time units; < 0 = auto
  std::size_t max_steps = 50'000'000;

  void validate() const;
};

enum class Termination { ReachedTEnd, CurvatureBlowup, Degenerate };

const char* to_string(Termination t);

struct Snapshot {
  double t = 0;
  Profile profile;
  CurvatureField curv;
};

/// The discrete spacetime track {M_t}: time-ordered snapshots plus the
/// termination reason.
struct FlowHistory {
  std::vector<Snapshot> snapshots;
  Termination termination = Termination::ReachedTEnd;
  FlowConfig config;

  double t_first() const { return snapshots.front().t; }
  double t_last() const { return snapshots.back().t; }

  /// Sphere-law extrapolation of the extinction time from the last snapshot:
  /// t_last + (n / max H)^2 / (2n).
  double extinction_estimate() const;
};

/// One explicit Euler step of the reduced graphical MCF
///   AxisGraph:  dr/dt = r'' / (1 + r'^2) - (n-1)/r        (Dirichlet ends)
///   PolarGraph: drho/dt = -H * sqrt(rho^2 + rho'^2) / rho  (reflecting poles)
/// Throws CFLViolationError when dt exceeds the stability bound and
/// RadiusCollapseError when the radius crosses 0 in the interior.
Profile step_mcf(const Profile& p, double dt, int n);

/// Stability limit for step_mcf on profile p (the dt admitting dt_safety = 1).
double cfl_limit(const Profile& p, int n);

FlowHistory run_flow(const Profile& p0, const FlowConfig& cfg);

/// Spherical heat smoothing of a PolarGraph radial function for time eps:
/// solves df/ds = f'' + (n-1) cot(theta) f' on [0, pi] with reflecting poles.
/// eps = 0 returns the input bit-identically.
Profile mollify_polar(const Profile& p, double eps);

struct ExistenceRun {
  double height = 0;
  double eps = 0;
  FlowHistory history;
  double sup_A = 0;        ///< sup over t <= delta of sup |A|
  double max_H_at_delta = 0;
};

struct ExistenceReport {
  std::vector<ExistenceRun> runs;
  /// Hausdorff-type distance, inside the fixed ball about the tip, between
  /// the final profiles of consecutive runs in refinement order.
  std::vector<double> consecutive_distances;
  double finest_pair_distance = 0;  ///< between the two finest settings
  double sup_A_overall = 0;
  double ball_radius = 0;
  double tip_z = 0;
};

/// The truncate--mollify--flow matrix: for each height h and smoothing
/// level eps, flow the mollified reflected truncation to t = cfg.t_end and
/// report the stabilisation of the flowed profiles near the tip.  A bounded
/// (closed PolarGraph) body skips the truncation and runs one flow per eps.
ExistenceReport existence_pipeline(const ConvexBody& body,
                                   const std::vector<double>& heights,
                                   const std::vector<double>& epss,
                                   const FlowConfig& cfg,
                                   double ball_radius = 1.0,
                                   int threads = 1);

/// Persist a history as a directory: manifest.json plus one CSV per snapshot.
void save_history(const std::string& dir, const FlowHistory& hist);

}  // namespace mcf
