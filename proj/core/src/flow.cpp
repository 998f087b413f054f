#include "mcf/flow.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "json.hpp"
#include "mcf/csv.hpp"

namespace mcf {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void FlowConfig::validate() const {
  if (n < 1) throw ConfigError("n must be >= 1");
  if (!(dt_safety > 0) || dt_safety > 1)
    throw ConfigError("dt_safety must lie in (0, 1]");
  if (max_H_blowup == 0) throw ConfigError("max_H_blowup must be nonzero");
  if (remesh_interval < 1) throw ConfigError("remesh_interval must be >= 1");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::ReachedTEnd: return "ReachedTEnd";
    case Termination::CurvatureBlowup: return "CurvatureBlowup";
    case Termination::Degenerate: return "Degenerate";
  }
  return "?";
}

double FlowHistory::extinction_estimate() const {
  const Snapshot& last = snapshots.back();
  double maxH = last.curv.max_H();
  int n = config.n;
  double R = n / maxH;
  return last.t + R * R / (2.0 * n);
}

namespace {

// Per-node stiffness (diffusion coefficient in the parameter variable).
double max_stiffness(const Profile& p, int n) {
  std::size_t m = p.size();
  double D = 0;
  if (p.kind == ProfileKind::PolarGraph) {
    double h = (p.param.back() - p.param.front()) / double(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
      double rho = p.value[i];
      double rp = 0;
      if (i > 0 && i + 1 < m) rp = (p.value[i + 1] - p.value[i - 1]) / (2 * h);
      double d = 1.0 / (rho * rho + rp * rp) + n / (rho * rho);
      D = std::max(D, d);
    }
  } else {
    double h = (p.param.back() - p.param.front()) / double(m - 1);
    for (std::size_t i = 1; i + 1 < m; ++i) {
      double rp = (p.value[i + 1] - p.value[i - 1]) / (2 * h);
      D = std::max(D, 1.0 / (1.0 + rp * rp));
    }
    (void)h;
  }
  return D;
}

// Reduced graphical MCF right side; also reports H per node (PolarGraph).
void polar_rhs(const Profile& p, std::vector<double>& F,
               std::vector<double>& Hout) {
  std::size_t m = p.size();
  int n = p.n;
  double h = (p.param.back() - p.param.front()) / double(m - 1);
  F.resize(m);
  Hout.resize(m);
  const std::vector<double>& rho = p.value;
  for (std::size_t i = 0; i < m; ++i) {
    double r = rho[i];
    double f;
    if (i == 0 || i + 1 == m) {
      std::size_t j = (i == 0) ? 1 : m - 2;
      double rpp = 2.0 * (rho[j] - r) / (h * h);
      f = n * rpp / (r * r) - n / r;
      Hout[i] = n * (r - rpp) / (r * r);
    } else {
      double rp = (rho[i + 1] - rho[i - 1]) / (2 * h);
      double rpp = (rho[i + 1] - 2 * r + rho[i - 1]) / (h * h);
      double th = p.param[i];
      double g = r * r + rp * rp;
      double cot = std::cos(th) / std::sin(th);
      f = rpp / g - (g + rp * rp) / (r * g) - (n - 1) * (r - rp * cot) / (r * r);
      // normal speed -H resolved onto the radial direction
      Hout[i] = -f * r / std::sqrt(g);
    }
    F[i] = f;
  }
}

void axis_rhs(const Profile& p, std::vector<double>& F) {
  std::size_t m = p.size();
  int n = p.n;
  double h = (p.param.back() - p.param.front()) / double(m - 1);
  F.assign(m, 0.0);  // Dirichlet endpoints
  const std::vector<double>& r = p.value;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    double rp = (r[i + 1] - r[i - 1]) / (2 * h);
    double rpp = (r[i + 1] - 2 * r[i] + r[i - 1]) / (h * h);
    F[i] = rpp / (1.0 + rp * rp) - (n - 1) / r[i];
  }
}

}  // namespace

double cfl_limit(const Profile& p, int n) {
  std::size_t m = p.size();
  double h = (p.param.back() - p.param.front()) / double(m - 1);
  Profile q = p;
  q.n = n;
  return h * h / (2.0 * max_stiffness(q, n));
}

Profile step_mcf(const Profile& p, double dt, int n) {
  p.validate();
  if (!p.uniform_grid(1e-6))
    throw Error("step_mcf requires a uniform parameter grid");
  if (dt > cfl_limit(p, n) * (1.0 + 1e-12))
    throw CFLViolationError("dt exceeds the stability bound");
  Profile q = p;
  q.n = n;
  std::vector<double> F, H;
  if (p.kind == ProfileKind::PolarGraph) {
    Profile tmp = q;
    polar_rhs(tmp, F, H);
  } else {
    axis_rhs(q, F);
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    q.value[i] = p.value[i] + dt * F[i];
    if (!std::isfinite(q.value[i]))
      throw NonFiniteError("step_mcf at node " + std::to_string(i));
    bool interior_zero = q.value[i] <= 0 &&
        !(p.kind == ProfileKind::AxisGraph &&
          ((i == 0 && p.cap_left) || (i + 1 == q.size() && p.cap_right)));
    if (interior_zero) throw RadiusCollapseError("radius hit 0 during step");
  }
  return q;
}

FlowHistory run_flow(const Profile& p0, const FlowConfig& cfg) {
  cfg.validate();
  p0.validate();
  Profile p = p0.uniform_grid(1e-9) ? p0 : resample_uniform(p0);
  p.n = cfg.n;

  FlowHistory hist;
  hist.config = cfg;
  CurvatureField cf0 = compute_curvatures(p);
  double H0 = cf0.max_H();
  double blowup = cfg.max_H_blowup > 0 ? cfg.max_H_blowup : 1e3 * H0;
  hist.config.max_H_blowup = blowup;

  double record_dt = cfg.record_interval;
  if (record_dt <= 0) {
    double Tguess = cfg.t_end ? *cfg.t_end
                              : (cfg.n / H0) * (cfg.n / H0) / (2.0 * cfg.n);
    record_dt = Tguess / 100.0;
  }

  hist.snapshots.push_back({0.0, p, cf0});
  double t = 0.0;
  double next_record = record_dt;
  hist.termination = Termination::ReachedTEnd;

  std::vector<double> F, H;
  std::size_t m = p.size();
  double hgrid = (p.param.back() - p.param.front()) / double(m - 1);

  auto record = [&](double time) {
    hist.snapshots.push_back({time, p, compute_curvatures(p)});
  };

  bool recorded_last = true;
  for (std::size_t step = 0; step < cfg.max_steps; ++step) {
    if (p.kind == ProfileKind::PolarGraph) {
      polar_rhs(p, F, H);
    } else {
      axis_rhs(p, F);
      H.assign(m, 0.0);
    }
    double maxH = *std::max_element(H.begin(), H.end());
    if (p.kind == ProfileKind::PolarGraph && maxH >= blowup) {
      hist.termination = Termination::CurvatureBlowup;
      if (!recorded_last) record(t);
      return hist;
    }
    double dt = cfg.dt_safety * hgrid * hgrid / (2.0 * max_stiffness(p, cfg.n));
    bool hit_end = false;
    if (cfg.t_end && t + dt >= *cfg.t_end) {
      dt = *cfg.t_end - t;
      hit_end = true;
    }
    bool hit_record = false;
    if (!hit_end && t + dt >= next_record) {
      dt = next_record - t;
      hit_record = true;
    }

    bool degraded = false;
    for (std::size_t i = 0; i < m; ++i) {
      p.value[i] += dt * F[i];
      if (!std::isfinite(p.value[i]) ||
          (p.value[i] <= 0 && !(p.kind == ProfileKind::AxisGraph &&
                                ((i == 0 && p.cap_left) ||
                                 (i + 1 == m && p.cap_right)))))
        degraded = true;
    }
    t += dt;
    recorded_last = false;
    if (degraded) {
      hist.termination = Termination::Degenerate;
      // the last valid state is the previously recorded snapshot
      return hist;
    }
    if (hit_end) {
      record(t);
      hist.termination = Termination::ReachedTEnd;
      return hist;
    }
    if (hit_record) {
      record(t);
      recorded_last = true;
      next_record += record_dt;
    }
    if ((step + 1) % std::size_t(cfg.remesh_interval) == 0 &&
        !p.uniform_grid(1e-9))
      p = resample_uniform(p);
  }
  if (!recorded_last) record(t);
  hist.termination = Termination::Degenerate;
  return hist;
}

Profile mollify_polar(const Profile& p, double eps) {
  p.validate();
  if (p.kind != ProfileKind::PolarGraph)
    throw Error("mollify_polar expects a PolarGraph profile");
  if (eps == 0.0) return p;
  Profile q = p.uniform_grid(1e-9) ? p : resample_uniform(p);
  std::size_t m = q.size();
  int n = q.n;
  double h = kPi / double(m - 1);
  double dt = 0.4 * h * h / double(n);
  std::size_t steps = std::size_t(std::ceil(eps / dt));
  dt = eps / double(steps);
  std::vector<double> f = q.value, g(m);
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t i = 0; i < m; ++i) {
      if (i == 0 || i + 1 == m) {
        std::size_t j = (i == 0) ? 1 : m - 2;
        double fpp = 2.0 * (f[j] - f[i]) / (h * h);
        g[i] = n * fpp;  // Laplacian of a symmetric function at the pole
      } else {
        double fp = (f[i + 1] - f[i - 1]) / (2 * h);
        double fpp = (f[i + 1] - 2 * f[i] + f[i - 1]) / (h * h);
        double cot = std::cos(q.param[i]) / std::sin(q.param[i]);
        g[i] = fpp + (n - 1) * cot * fp;
      }
    }
    for (std::size_t i = 0; i < m; ++i) f[i] += dt * g[i];
  }
  q.value = f;
  q.validate();
  return q;
}

namespace {

// Meridian polyline of the final snapshot, as (z, r) points.
std::vector<std::pair<double, double>> meridian_points(const Profile& p) {
  std::vector<std::pair<double, double>> pts(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    p.node_position(i, pts[i].first, pts[i].second);
  return pts;
}

double dist_to_polyline(double z, double r,
                        const std::vector<std::pair<double, double>>& poly) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < poly.size(); ++i) {
    double ax = poly[i - 1].first, ay = poly[i - 1].second;
    double bx = poly[i].first, by = poly[i].second;
    double dx = bx - ax, dy = by - ay;
    double len2 = dx * dx + dy * dy;
    double u = len2 > 0 ? ((z - ax) * dx + (r - ay) * dy) / len2 : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    best = std::min(best, std::hypot(z - (ax + u * dx), r - (ay + u * dy)));
  }
  return best;
}

// Symmetric Hausdorff distance between two meridians, restricted to the
// ball of the given radius about (tip_z, 0).
double hausdorff_in_ball(const Profile& a, const Profile& b, double tip_z,
                         double ball_radius) {
  auto pa = meridian_points(a), pb = meridian_points(b);
  double d = 0;
  int used = 0;
  for (const auto& [z, r] : pa)
    if (std::hypot(z - tip_z, r) <= ball_radius) {
      d = std::max(d, dist_to_polyline(z, r, pb));
      ++used;
    }
  for (const auto& [z, r] : pb)
    if (std::hypot(z - tip_z, r) <= ball_radius)
      d = std::max(d, dist_to_polyline(z, r, pa));
  if (used == 0) return std::numeric_limits<double>::quiet_NaN();
  return d;
}

}  // namespace

ExistenceReport existence_pipeline(const ConvexBody& body,
                                   const std::vector<double>& heights,
                                   const std::vector<double>& epss,
                                   const FlowConfig& cfg, double ball_radius,
                                   int threads) {
  if (!cfg.t_end) throw ConfigError("existence_pipeline needs cfg.t_end (delta)");
  for (std::size_t i = 1; i < heights.size(); ++i)
    if (heights[i] <= heights[i - 1])
      throw ConfigError("heights must be increasing");
  for (std::size_t i = 1; i < epss.size(); ++i)
    if (epss[i] >= epss[i - 1]) throw ConfigError("epss must be decreasing");

  bool bounded = body.profile.kind == ProfileKind::PolarGraph;
  double tip_z;
  if (bounded) {
    double r;
    body.profile.node_position(body.profile.size() - 1, tip_z, r);
  } else {
    tip_z = body.profile.param.front();
  }

  ExistenceReport rep;
  rep.ball_radius = ball_radius;
  rep.tip_z = tip_z;
  std::vector<double> hs = bounded ? std::vector<double>{0.0} : heights;
  for (double h : hs)
    for (double eps : epss)
      rep.runs.push_back({h, eps, {}, 0, 0});

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= rep.runs.size()) break;
      ExistenceRun& run = rep.runs[k];
      ConvexBody trunc = bounded ? body : reflect_truncate(body, run.height);
      Profile smooth = mollify_polar(trunc.profile, run.eps);
      run.history = run_flow(smooth, cfg);
      for (const auto& s : run.history.snapshots)
        run.sup_A = std::max(run.sup_A, s.curv.max_normA());
      run.max_H_at_delta = run.history.snapshots.back().curv.max_H();
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t k = 1; k < rep.runs.size(); ++k)
    rep.consecutive_distances.push_back(
        hausdorff_in_ball(rep.runs[k - 1].history.snapshots.back().profile,
                          rep.runs[k].history.snapshots.back().profile, tip_z,
                          ball_radius));
  rep.finest_pair_distance = rep.consecutive_distances.empty()
                                 ? 0.0
                                 : rep.consecutive_distances.back();
  for (const auto& r : rep.runs)
    rep.sup_A_overall = std::max(rep.sup_A_overall, r.sup_A);
  return rep;
}

void save_history(const std::string& dir, const FlowHistory& hist) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::json manifest;
  manifest["n"] = hist.config.n;
  manifest["termination"] = to_string(hist.termination);
  manifest["config"] = {
      {"dt_safety", hist.config.dt_safety},
      {"max_H_blowup", hist.config.max_H_blowup},
      {"t_end", hist.config.t_end ? nlohmann::json(*hist.config.t_end)
                                  : nlohmann::json()},
      {"remesh_interval", hist.config.remesh_interval},
      {"record_interval", hist.config.record_interval},
  };
  nlohmann::json times = nlohmann::json::array();
  nlohmann::json files = nlohmann::json::array();
  for (std::size_t i = 0; i < hist.snapshots.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof name, "snapshot_%05zu.csv", i);
    times.push_back(hist.snapshots[i].t);
    files.push_back(name);
    write_curvature_csv((fs::path(dir) / name).string(),
                        hist.snapshots[i].curv);
  }
  manifest["snapshot_times"] = times;
  manifest["snapshot_files"] = files;
  std::ofstream os(fs::path(dir) / "manifest.json");
  os << manifest.dump(2) << "\n";
}

}  // namespace mcf
