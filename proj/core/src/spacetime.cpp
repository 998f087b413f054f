#include "mcf/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace mcf {

double ambient_distance(double z1, double r1, double z2, double r2) {
  // Minimising over the orbit circle of one point reduces to the
  // half-plane distance: |X - Y|^2 = (z1-z2)^2 + r1^2 + r2^2 - 2 r1 r2.
  return std::hypot(z1 - z2, r1 - r2);
}

double H_at(const FlowHistory& hist, const SpacetimePoint& p) {
  return hist.snapshots.at(p.snapshot_index).curv.nodes.at(p.node_index).H;
}

SpacetimePoint spacetime_point(const FlowHistory& hist, int snapshot_index,
                               int node_index) {
  const Snapshot& s = hist.snapshots.at(snapshot_index);
  const CurvatureNode& nd = s.curv.nodes.at(node_index);
  return {nd.z, nd.r, s.t, snapshot_index, node_index};
}

std::vector<SpacetimePoint> cylinder_nodes(const FlowHistory& hist,
                                           const ParabolicCylinder& cyl) {
  int n = hist.config.n;
  double t0 = cyl.t_min(n), t1 = cyl.t_max();
  std::vector<SpacetimePoint> out;
  bool any_snapshot = false;
  for (std::size_t si = 0; si < hist.snapshots.size(); ++si) {
    double t = hist.snapshots[si].t;
    if (!(t > t0 && t <= t1)) continue;  // half-open (t - r^2/2n, t]
    any_snapshot = true;
    const auto& nodes = hist.snapshots[si].curv.nodes;
    for (std::size_t ni = 0; ni < nodes.size(); ++ni) {
      if (ambient_distance(nodes[ni].z, nodes[ni].r, cyl.center.z,
                           cyl.center.r) <= cyl.radius)
        out.push_back({nodes[ni].z, nodes[ni].r, t, int(si), int(ni)});
    }
  }
  if (!any_snapshot)
    throw EmptyWindowError("no snapshots in the cylinder time range");
  return out;
}

namespace {

// Smallest snapshot index, then smallest node index, among the recorded
// points in cyl with H >= threshold.  Returns false when none exists.
bool first_doubling_candidate(const FlowHistory& hist,
                              const ParabolicCylinder& cyl, double threshold,
                              SpacetimePoint& out) {
  auto pts = cylinder_nodes(hist, cyl);
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return std::tie(a.snapshot_index, a.node_index) <
           std::tie(b.snapshot_index, b.node_index);
  });
  for (const auto& p : pts)
    if (H_at(hist, p) >= threshold) {
      out = p;
      return true;
    }
  return false;
}

bool property3_holds(const FlowHistory& hist, const SpacetimePoint& y,
                     double delta, int* count = nullptr) {
  double Hy = H_at(hist, y);
  ParabolicCylinder cyl{y, delta / (4.0 * Hy)};
  auto pts = cylinder_nodes(hist, cyl);
  if (count) *count = int(pts.size());
  for (const auto& p : pts)
    if (H_at(hist, p) > 2.0 * Hy) return false;
  return true;
}

}  // namespace

PickResult pick_point(const FlowHistory& hist, const SpacetimePoint& seed,
                      double delta) {
  double Hseed = H_at(hist, seed);
  if (!(Hseed > 0)) throw Error("pick_point: H(seed) must be positive");
  int n = hist.config.n;
  double r_seed = delta / (2.0 * Hseed);
  if (seed.t - r_seed * r_seed / (2.0 * n) < hist.t_first() - 1e-12 &&
      seed.snapshot_index > 0)
    throw SeedNotCoveredError(
        "P_{delta/(2 H(seed))}(seed) exits the recorded spacetime");

  PickResult res;
  res.certificate.chain.push_back(seed);
  res.certificate.chain_H.push_back(Hseed);
  SpacetimePoint cur = seed;
  for (;;) {
    int count = 0;
    if (property3_holds(hist, cur, delta, &count)) {
      res.certificate.cylinder_node_count = count;
      break;
    }
    double Hcur = H_at(hist, cur);
    ParabolicCylinder cyl{cur, delta / (4.0 * Hcur)};
    SpacetimePoint nxt;
    if (!first_doubling_candidate(hist, cyl, 2.0 * Hcur, nxt))
      throw Error("pick_point: property 3 fails but no doubling point found");
    cur = nxt;
    res.certificate.chain.push_back(cur);
    res.certificate.chain_H.push_back(H_at(hist, cur));
  }
  res.point = cur;

  // Certify (1)-(3) directly on the result.
  const auto& c = res.certificate;
  res.certificate.property2 = H_at(hist, cur) >= Hseed;
  ParabolicCylinder big{seed, r_seed};
  res.certificate.property1 =
      ambient_distance(cur.z, cur.r, seed.z, seed.r) <= big.radius &&
      cur.t > big.t_min(n) - 1e-15 && cur.t <= big.t_max();
  res.certificate.property3 = property3_holds(hist, cur, delta);
  (void)c;
  return res;
}

std::string PickResult::to_json() const {
  nlohmann::json j;
  auto pt = [](const SpacetimePoint& p) {
    return nlohmann::json{{"z", p.z},
                          {"r", p.r},
                          {"t", p.t},
                          {"snapshot", p.snapshot_index},
                          {"node", p.node_index}};
  };
  j["point"] = pt(point);
  j["properties"] = {{"p1", certificate.property1},
                     {"p2", certificate.property2},
                     {"p3", certificate.property3}};
  j["cylinder_node_count"] = certificate.cylinder_node_count;
  j["chain"] = nlohmann::json::array();
  for (std::size_t i = 0; i < certificate.chain.size(); ++i) {
    auto e = pt(certificate.chain[i]);
    e["H"] = certificate.chain_H[i];
    j["chain"].push_back(e);
  }
  return j.dump(2);
}

FlowHistory rescale(const FlowHistory& hist, const SpacetimePoint& center,
                    double lambda) {
  if (!(lambda > 0)) throw Error("rescale: lambda must be positive");
  FlowHistory out;
  out.config = hist.config;
  out.config.max_H_blowup = hist.config.max_H_blowup / lambda;
  if (out.config.t_end) out.config.t_end = *out.config.t_end * lambda * lambda;
  out.config.record_interval = hist.config.record_interval * lambda * lambda;
  out.termination = hist.termination;
  out.snapshots.reserve(hist.snapshots.size());
  for (const auto& s : hist.snapshots) {
    Snapshot ns;
    ns.t = lambda * lambda * (s.t - center.t);
    ns.profile = s.profile;
    if (ns.profile.kind == ProfileKind::PolarGraph) {
      ns.profile.origin_z = lambda * (ns.profile.origin_z - center.z);
      for (double& v : ns.profile.value) v *= lambda;
    } else {
      for (double& x : ns.profile.param) x = lambda * (x - center.z);
      for (double& v : ns.profile.value) v *= lambda;
    }
    ns.curv = compute_curvatures(ns.profile);
    out.snapshots.push_back(std::move(ns));
  }
  return out;
}

TypeReport classify_type(const FlowHistory& hist,
                         const std::vector<double>& horizons) {
  if (hist.snapshots.empty()) throw Error("classify_type: empty history");
  TypeReport rep;
  rep.node_count = int(hist.snapshots.front().curv.nodes.size());
  for (const auto& s : hist.snapshots) {
    double v = std::sqrt(std::max(0.0, s.t)) * s.curv.max_H();
    rep.times.push_back(s.t);
    rep.sqrt_t_max_H.push_back(v);
    rep.sup_sqrt_t_max_H = std::max(rep.sup_sqrt_t_max_H, v);
  }
  rep.finite_time_blowup = hist.termination == Termination::CurvatureBlowup;
  if (rep.finite_time_blowup) {
    rep.classification = "finite-time";
  } else {
    // Evidence only: compare the tail of sqrt(t) max H with its sup.
    double tail = rep.sqrt_t_max_H.back();
    rep.classification = tail >= 0.99 * rep.sup_sqrt_t_max_H
                             ? "type-IIb evidence"
                             : "type-III evidence";
  }
  for (double j : horizons) {
    HorizonMaximizer hm;
    hm.horizon = j;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t si = 0; si < hist.snapshots.size(); ++si) {
      double t = hist.snapshots[si].t;
      if (t < 0 || t > j) continue;
      const auto& nodes = hist.snapshots[si].curv.nodes;
      for (std::size_t ni = 0; ni < nodes.size(); ++ni) {
        double v = t * (j - t) * nodes[ni].H * nodes[ni].H;
        if (v > best) {
          best = v;
          hm.snapshot_index = int(si);
          hm.node_index = int(ni);
          hm.t = t;
          hm.value = v;
        }
      }
    }
    rep.horizon_maximizers.push_back(hm);
  }
  return rep;
}

std::string TypeReport::to_json() const {
  nlohmann::json j;
  j["classification"] = classification;
  j["finite_time_blowup"] = finite_time_blowup;
  j["sup_sqrt_t_max_H"] = sup_sqrt_t_max_H;
  j["node_count"] = node_count;
  j["times"] = times;
  j["sqrt_t_max_H"] = sqrt_t_max_H;
  j["horizon_maximizers"] = nlohmann::json::array();
  for (const auto& hm : horizon_maximizers)
    j["horizon_maximizers"].push_back({{"horizon", hm.horizon},
                                       {"snapshot", hm.snapshot_index},
                                       {"node", hm.node_index},
                                       {"t", hm.t},
                                       {"value", hm.value}});
  return j.dump(2);
}

}  // namespace mcf
