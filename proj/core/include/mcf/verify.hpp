#pragma once

#include <map>
#include <string>
#include <vector>

#include "mcf/flow.hpp"

namespace mcf {

/// Outcome of one inequality audit: named measured suprema / fitted
/// constants, grid metadata, and a verdict that is a pure function of the
/// recorded numbers and the stated tolerance.
struct EstimateReport {
  std::string id;
  std::map<std::string, double> measured;
  bool pass = false;
  int node_count = 0;
  int snapshot_count = 0;
  double tolerance = 0;
  std::string detail;

  std::string to_json() const;
};

struct Point2 {
  double z = 0;
  double r = 0;
};

/// Local umbilic estimate |Aring| <= eps H + C_eps Theta in B_{L/2} x [0,T):
/// Theta is the sup of H over B_{2L} x {0} union (B_{2L} \ B_L) x (0,T),
/// C_meas(eps) = sup over B_{L/2} x [0,T) of (|Aring| - eps H)_+ / Theta.
/// Balls are centred at `center`.  When `refined` (same flow at doubled
/// resolution) is given, pass requires every C_meas(eps) stable within
/// stability_tol (default 10%); otherwise pass = all C_meas finite.
EstimateReport audit_umbilic(const FlowHistory& hist, double L, double alpha,
                             const std::vector<double>& eps_list,
                             Point2 center = {},
                             const FlowHistory* refined = nullptr,
                             double stability_tol = 0.10);

/// Interior estimate: with B_r(p) contained in Omega_t for all audited times
/// and Theta = r * sup_{B_{2Lr}} H(.,0),
/// C_meas = sup_t sup_{X in B_{Lr}(p)} (1 - |X-p|^2/(L r)^2) H(X,t) * r/(L^3 Theta).
EstimateReport audit_interior(const FlowHistory& hist, Point2 p, double r,
                              double L, const FlowHistory* refined = nullptr,
                              double stability_tol = 0.10);

/// Pinching preservation: with kappa_1 >= alpha H on the first snapshot,
/// records m(t) = min_nodes (kappa_1 - alpha H) / max H per snapshot and
/// passes iff m(t) >= -tol throughout.
EstimateReport audit_pinching_preservation(const FlowHistory& hist,
                                           double alpha, double tol = 1e-3);

/// Barrier identity for psi(X) = <X-p, e> e^{(C+1)t}: checks the discrete
/// residual of (d_t - Delta)<X-p, e> = 0 (both the normal motion and the
/// surface Laplacian of the linear function produce -H <nu, e>), and that
/// psi >= beta |X-p| holds at t = 0 with beta the measured minimum of the
/// direction cosine.  C defaults to sup_t sup |A|^2 from the data.
/// e = (e_z, e_r) is a unit vector in the meridian plane; the radial part is
/// handled as a first rotational harmonic.
EstimateReport audit_barrier(const FlowHistory& hist, Point2 p, Point2 e,
                             double C = -1,
                             const FlowHistory* refined = nullptr);

/// Laplace--Beltrami of the rotationally invariant node values f on the
/// profile: f''(s) + (n-1) (r'(s)/r) f'(s) in meridian arclength s.
/// harmonic = 1 adds the first-orbit-harmonic term -(n-1) f / r^2.
std::vector<double> laplace_beltrami(const Profile& p,
                                     const std::vector<double>& f,
                                     int harmonic = 0);

}  // namespace mcf
