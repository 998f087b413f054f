// mcflab: experiment runner for the rotationally symmetric mean curvature
// flow laboratory.  Subcommands: flow, soliton, verify, pick, classify,
// existence, preset.  Exit status: 0 = all audits pass, 1 = audit failure,
// 2 = usage or configuration error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "mcf/config.hpp"
#include "mcf/convex_body.hpp"
#include "mcf/csv.hpp"
#include "mcf/flow.hpp"
#include "mcf/soliton.hpp"
#include "mcf/spacetime.hpp"
#include "mcf/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mcf;

namespace {

constexpr const char* kToolVersion = "mcflab 0.1.0";

struct GlobalOpts {
  std::string out = "out";
  std::string config_file;
  int threads = 1;
  unsigned seed = 0;
};

void add_global_opts(CLI::App* sc, GlobalOpts& g) {
  sc->add_option("--out", g.out, "output directory");
  sc->add_option("--config", g.config_file, "key = value config file");
  sc->add_option("--threads", g.threads, "worker threads for fan-out");
  sc->add_option("--seed", g.seed, "seed for randomized components");
}

/// Registers a string-valued option that layers into `ov` under `key`;
/// numeric validation happens in Config so malformed values name their key.
void add_cfg_opt(CLI::App* sc, Config& ov, const std::string& flag,
                 const std::string& key, const std::string& desc) {
  sc->add_option_function<std::string>(
      flag, [&ov, key](const std::string& v) { ov.set(key, v); }, desc);
}

Config layer(const Config& defaults, const GlobalOpts& g, const Config& cli) {
  Config c = defaults;
  if (!g.config_file.empty()) c = Config::resolve(c, Config::load(g.config_file));
  return Config::resolve(c, cli);
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream os(p);
  if (!os) throw Error("cannot open output file: " + p.string());
  os << text << '\n';
}

void write_manifest(const fs::path& out, const std::string& sub,
                    const Config& cfg, bool pass, double wall_s,
                    const json& report) {
  json j;
  j["tool"] = kToolVersion;
  j["subcommand"] = sub;
  j["config"] = json::parse(cfg.to_json());
  j["pass"] = pass;
  j["wall_time_s"] = wall_s;
  j["report"] = report;
  write_text(out / "manifest.json", j.dump(2));
}

Profile build_surface(const Config& c) {
  std::string s = c.get("surface");
  int n = c.get_int("n");
  std::size_t nodes = std::size_t(c.get_int("nodes"));
  if (s == "sphere") return make_sphere(n, c.get_double("radius"), nodes);
  if (s == "ellipsoid")
    return make_ellipsoid(n, c.get_double("a"), c.get_double("c"), nodes);
  if (s == "paraboloid")
    return make_paraboloid(n, c.get_double("focal"), c.get_double("x_max"),
                           nodes);
  throw ConfigError("key surface: unknown surface '" + s + "'");
}

FlowConfig build_flow_config(const Config& c) {
  FlowConfig fc;
  fc.n = c.get_int("n");
  fc.dt_safety = c.get_double("dt_safety");
  double te = c.get_double("t_end");
  if (te > 0) fc.t_end = te;
  fc.record_interval = c.get_double("record_interval");
  fc.validate();
  return fc;
}

Config flow_defaults() {
  Config c;
  c.set("surface", "sphere");
  c.set("n", 2);
  c.set("nodes", 201);
  c.set("radius", 1.0);
  c.set("a", 1.0);
  c.set("c", 1.5);
  c.set("focal", 1.0);
  c.set("x_max", 6.0);
  c.set("dt_safety", 0.8);
  c.set("t_end", -1.0);  // <= 0: run to curvature blowup
  c.set("record_interval", -1.0);
  return c;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

// ---------------------------------------------------------------- presets

using PresetFn = std::function<bool(const Config&, const fs::path&,
                                    const GlobalOpts&, json&)>;

bool preset_sphere_shrink(const Config& c, const fs::path& out,
                          const GlobalOpts&, json& rep) {
  int n = c.get_int("n");
  double R = c.get_double("radius");
  Config fc = c;
  fc.set("surface", "sphere");
  FlowConfig cfg = build_flow_config(fc);
  double T = R * R / (2.0 * n);
  if (cfg.record_interval <= 0) cfg.record_interval = T / 50.0;
  FlowHistory h = run_flow(make_sphere(n, R, std::size_t(c.get_int("nodes"))),
                           cfg);
  save_history((out / "history").string(), h);

  double t_probe = c.get_double("probe_time");
  double R_exact = std::sqrt(R * R - 2.0 * n * t_probe);
  std::size_t k = 0;
  for (std::size_t i = 0; i < h.snapshots.size(); ++i)
    if (std::fabs(h.snapshots[i].t - t_probe) <
        std::fabs(h.snapshots[k].t - t_probe))
      k = i;
  double worst = 0;
  for (double rho : h.snapshots[k].profile.value)
    worst = std::max(worst, std::fabs(rho - R_exact) / R_exact);
  double ext = h.extinction_estimate();
  double ext_err = std::fabs(ext - T) / T;

  rep["probe_time"] = h.snapshots[k].t;
  rep["radius_exact"] = R_exact;
  rep["radius_max_rel_error"] = worst;
  rep["extinction_estimate"] = ext;
  rep["extinction_rel_error"] = ext_err;
  rep["termination"] = to_string(h.termination);
  return worst < 1e-3 && ext_err < 1e-3 &&
         h.termination == Termination::CurvatureBlowup;
}

bool preset_pinch_preserve(const Config& c, const fs::path& out,
                           const GlobalOpts&, json& rep) {
  Config fc = c;
  fc.set("surface", "ellipsoid");
  FlowHistory h = run_flow(build_surface(fc), build_flow_config(fc));
  double alpha = c.get_double("alpha");
  if (alpha <= 0) alpha = h.snapshots.front().curv.min_ratio();
  EstimateReport r = audit_pinching_preservation(h, alpha, c.get_double("tol"));
  write_text(out / "pinching.json", r.to_json());
  save_history((out / "history").string(), h);
  rep = json::parse(r.to_json());
  return r.pass;
}

bool preset_umbilic_audit(const Config& c, const fs::path& out,
                          const GlobalOpts&, json& rep) {
  Config fc = c;
  fc.set("surface", "ellipsoid");
  FlowHistory h = run_flow(build_surface(fc), build_flow_config(fc));
  Config fc2 = fc;
  fc2.set("nodes", 2 * c.get_int("nodes") - 1);
  FlowHistory h2 = run_flow(build_surface(fc2), build_flow_config(fc2));
  double alpha = c.get_double("alpha");
  if (alpha <= 0) alpha = h.snapshots.front().curv.min_ratio();
  Point2 center{c.get_double("center_z"), c.get_double("center_r")};
  EstimateReport r = audit_umbilic(h, c.get_double("L"), alpha,
                                   c.get_double_list("eps_list"), center, &h2);
  write_text(out / "umbilic.json", r.to_json());
  double a0 = h.snapshots.front().curv.max_Aring_over_H();
  double a1 = h.snapshots.back().curv.max_Aring_over_H();
  rep = json::parse(r.to_json());
  rep["aring_over_H_initial"] = a0;
  rep["aring_over_H_final"] = a1;
  return r.pass;
}

bool preset_interior_audit(const Config& c, const fs::path& out,
                           const GlobalOpts&, json& rep) {
  Config fc = c;
  fc.set("surface", "sphere");
  FlowHistory h = run_flow(build_surface(fc), build_flow_config(fc));
  Config fc2 = fc;
  fc2.set("nodes", 2 * c.get_int("nodes") - 1);
  FlowHistory h2 = run_flow(build_surface(fc2), build_flow_config(fc2));
  Point2 p{c.get_double("p_z"), c.get_double("p_r")};
  EstimateReport r = audit_interior(h, p, c.get_double("r"),
                                    c.get_double("L"), &h2);
  write_text(out / "interior.json", r.to_json());
  rep = json::parse(r.to_json());
  return r.pass;
}

bool preset_barrier_audit(const Config& c, const fs::path& out,
                          const GlobalOpts&, json& rep) {
  Config fc = c;
  fc.set("surface", "ellipsoid");
  FlowHistory h = run_flow(build_surface(fc), build_flow_config(fc));
  Config fc2 = fc;
  fc2.set("nodes", 2 * c.get_int("nodes") - 1);
  FlowHistory h2 = run_flow(build_surface(fc2), build_flow_config(fc2));
  Point2 p{c.get_double("p_z"), c.get_double("p_r")};
  Point2 e{c.get_double("e_z"), c.get_double("e_r")};
  EstimateReport r = audit_barrier(h, p, e, -1, &h2);
  write_text(out / "barrier.json", r.to_json());
  rep = json::parse(r.to_json());
  return r.pass;
}

bool preset_point_pick_demo(const Config& c, const fs::path& out,
                            const GlobalOpts&, json& rep) {
  Config fc = c;
  fc.set("surface", "sphere");
  FlowHistory h = run_flow(build_surface(fc), build_flow_config(fc));
  SpacetimePoint seed = spacetime_point(
      h, std::size_t(c.get_int("seed_snapshot")),
      std::size_t(c.get_int("seed_node")));
  PickResult r = pick_point(h, seed, c.get_double("delta"));
  write_text(out / "pick.json", r.to_json());
  rep = json::parse(r.to_json());
  return r.certificate.property1 && r.certificate.property2 &&
         r.certificate.property3;
}

bool soliton_scan(const Config& c, const fs::path& out, json& rep,
                  SolitonKind kind) {
  int n = c.get_int("n");
  double rho_max = c.get_double("rho_max");
  double h = c.get_double("step");
  double tip = c.get_double("tip_height");
  auto shoot1 = [&](double hh) {
    return kind == SolitonKind::Translator
               ? shoot_translator(n, rho_max, hh)
               : shoot_expander(n, tip, rho_max, hh);
  };
  SolitonProfile s = shoot1(h);
  SolitonProfile s2 = shoot1(h / 2);
  write_soliton_csv((out / "soliton.csv").string(), s);

  IdentityReport i1 = verify_identities(s);
  IdentityReport i2 = verify_identities(s2);
  json ji;
  ji["coarse"] = json::parse(i1.to_json());
  ji["fine"] = json::parse(i2.to_json());
  ji["ratio_gradient_field"] = i1.sup_gradient_field / i2.sup_gradient_field;
  ji["ratio_gradV_meridian"] = i1.sup_gradV_meridian / i2.sup_gradV_meridian;
  ji["ratio_gradV_rotational"] =
      i1.sup_gradV_rotational / i2.sup_gradV_rotational;
  write_text(out / "identities.json", ji.dump(2));

  auto res = s.geometric_residual();
  double sup_res = *std::max_element(res.begin(), res.end());
  rep["sup_geometric_residual"] = sup_res;
  rep["identities"] = ji;
  rep["cone_slope"] = s.cone_slope();

  bool pass = true;
  json alphas = json::array();
  for (double alpha : c.get_double_list("alpha_list")) {
    DecayReport d = decay_audit(s, alpha);
    char name[64];
    std::snprintf(name, sizeof name, "decay_alpha_%g.json", alpha);
    write_text(out / name, d.to_json());
    bool crossed = d.alpha_max.back() < alpha && d.d_star < d.d.back();
    bool ineq = d.ineq_logH_pointwise && d.ineq_logH_integrated &&
                (kind == SolitonKind::Translator ? d.ineq_V_bounds
                                                 : d.ineq_V_linear);
    json ja = json::parse(d.to_json());
    ja["crossed_below_alpha"] = crossed;
    alphas.push_back(ja);
    std::printf("%s alpha=%g: d_star=%.4f alpha_max(end)=%.5f %s\n",
                crossed && ineq ? "PASS" : "FAIL", alpha, d.d_star,
                d.alpha_max.back(), crossed ? "crossed" : "not crossed");
    pass = pass && crossed && ineq;
  }
  rep["decay"] = alphas;
  return pass;
}

bool preset_bowl_scan(const Config& c, const fs::path& out, const GlobalOpts&,
                      json& rep) {
  return soliton_scan(c, out, rep, SolitonKind::Translator);
}

bool preset_expander_scan(const Config& c, const fs::path& out,
                          const GlobalOpts&, json& rep) {
  return soliton_scan(c, out, rep, SolitonKind::Expander);
}

bool preset_existence(const Config& c, const fs::path& out,
                      const GlobalOpts& g, json& rep) {
  ConvexBody body{make_paraboloid(c.get_int("n"), c.get_double("focal"),
                                  c.get_double("x_max"),
                                  std::size_t(c.get_int("body_nodes")))};
  Config fc = c;
  fc.set("t_end", c.get_double("delta"));
  FlowConfig cfg = build_flow_config(fc);
  ExistenceReport r = existence_pipeline(
      body, c.get_double_list("heights"), c.get_double_list("eps_list"), cfg,
      c.get_double("ball_radius"), g.threads);
  json jr;
  jr["ball_radius"] = r.ball_radius;
  jr["finest_pair_distance"] = r.finest_pair_distance;
  jr["sup_A_overall"] = r.sup_A_overall;
  jr["consecutive_distances"] = r.consecutive_distances;
  json runs = json::array();
  for (const auto& run : r.runs) {
    json jrun;
    jrun["height"] = run.height;
    jrun["eps"] = run.eps;
    jrun["sup_A"] = run.sup_A;
    jrun["max_H_at_delta"] = run.max_H_at_delta;
    jrun["termination"] = to_string(run.history.termination);
    runs.push_back(jrun);
  }
  jr["runs"] = runs;
  write_text(out / "existence.json", jr.dump(2));
  rep = jr;
  bool bounded = std::isfinite(r.sup_A_overall);
  return r.finest_pair_distance < c.get_double("tol") && bounded;
}

bool preset_type_classify(const Config& c, const fs::path& out,
                          const GlobalOpts&, json& rep) {
  FlowHistory h = run_flow(build_surface(c), build_flow_config(c));
  TypeReport r = classify_type(h, c.get_double_list("horizons"));
  write_text(out / "classify.json", r.to_json());
  rep = json::parse(r.to_json());
  bool consistent = r.finite_time_blowup ==
                    (h.termination == Termination::CurvatureBlowup);
  return consistent;
}

struct Preset {
  Config defaults;
  PresetFn run;
};

std::map<std::string, Preset> preset_registry() {
  std::map<std::string, Preset> reg;
  {
    Config c;
    c.set("n", 2);
    c.set("radius", 1.0);
    c.set("nodes", 400);
    c.set("dt_safety", 0.8);
    c.set("t_end", -1.0);
    c.set("record_interval", -1.0);
    c.set("probe_time", 0.1);
    reg["sphere-shrink"] = {c, preset_sphere_shrink};
  }
  {
    Config c = flow_defaults();
    c.set("surface", "ellipsoid");
    c.set("nodes", 400);
    c.set("alpha", -1.0);  // <= 0: use the initial min kappa_1/H
    c.set("tol", 1e-3);
    reg["pinch-preserve"] = {c, preset_pinch_preserve};
  }
  {
    Config c = flow_defaults();
    c.set("surface", "ellipsoid");
    c.set("nodes", 301);
    c.set("t_end", 0.15);
    c.set("alpha", -1.0);
    c.set("L", 0.6);
    c.set("center_z", 0.0);
    c.set("center_r", 1.0);
    c.set("eps_list", "0.05,0.1,0.2");
    reg["umbilic-audit"] = {c, preset_umbilic_audit};
  }
  {
    Config c = flow_defaults();
    c.set("nodes", 301);
    c.set("t_end", 0.18);
    c.set("p_z", 0.0);
    c.set("p_r", 0.0);
    c.set("r", 0.4);
    c.set("L", 2.0);
    reg["interior-audit"] = {c, preset_interior_audit};
  }
  {
    Config c = flow_defaults();
    c.set("surface", "ellipsoid");
    c.set("nodes", 301);
    c.set("t_end", 0.15);
    c.set("p_z", -3.0);
    c.set("p_r", 0.0);
    c.set("e_z", 1.0);
    c.set("e_r", 0.0);
    reg["barrier-audit"] = {c, preset_barrier_audit};
  }
  {
    Config c = flow_defaults();
    c.set("seed_snapshot", 0);
    c.set("seed_node", 0);
    c.set("delta", 2.0);
    reg["point-pick-demo"] = {c, preset_point_pick_demo};
  }
  {
    Config c;
    c.set("n", 2);
    c.set("rho_max", 20.0);
    c.set("step", 2e-3);
    c.set("tip_height", 0.0);
    c.set("alpha_list", "0.3,0.1,0.03");
    reg["bowl-scan"] = {c, preset_bowl_scan};
  }
  {
    Config c;
    c.set("n", 2);
    c.set("rho_max", 15.0);
    c.set("step", 2e-3);
    c.set("tip_height", 1.0);
    c.set("alpha_list", "0.3,0.1,0.03");
    reg["expander-scan"] = {c, preset_expander_scan};
  }
  {
    Config c;
    c.set("n", 2);
    c.set("focal", 1.0);
    c.set("x_max", 6.0);
    c.set("body_nodes", 1201);
    c.set("heights", "0.6,1.0,1.4");
    c.set("eps_list", "0.04,0.02,0.01");
    c.set("delta", 0.05);
    c.set("ball_radius", 0.5);
    c.set("tol", 1e-2);
    c.set("dt_safety", 0.8);
    c.set("record_interval", -1.0);
    reg["existence-construction"] = {c, preset_existence};
  }
  {
    Config c = flow_defaults();
    c.set("horizons", "0.1,0.2");
    reg["type-classify"] = {c, preset_type_classify};
  }
  return reg;
}

int run_with_manifest(const std::string& sub, const Config& cfg,
                      const GlobalOpts& g,
                      const std::function<bool(json&)>& body) {
  fs::create_directories(g.out);
  Timer timer;
  json rep;
  bool pass = body(rep);
  write_manifest(g.out, sub, cfg, pass, timer.s(), rep);
  std::printf("%s %s (%.2fs) -> %s\n", pass ? "PASS" : "FAIL", sub.c_str(),
              timer.s(), g.out.c_str());
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotationally symmetric mean curvature flow laboratory"};
  app.require_subcommand(1);

  GlobalOpts g;

  // flow ------------------------------------------------------------------
  auto* sc_flow = app.add_subcommand("flow", "run a flow and save snapshots");
  Config flow_cli;
  add_global_opts(sc_flow, g);
  add_cfg_opt(sc_flow, flow_cli, "--surface", "surface",
              "sphere | ellipsoid | paraboloid");
  add_cfg_opt(sc_flow, flow_cli, "--n", "n", "hypersurface dimension");
  add_cfg_opt(sc_flow, flow_cli, "--nodes", "nodes", "grid nodes");
  add_cfg_opt(sc_flow, flow_cli, "--radius", "radius", "sphere radius");
  add_cfg_opt(sc_flow, flow_cli, "--a-axis", "a", "ellipsoid radial semi-axis");
  add_cfg_opt(sc_flow, flow_cli, "--c-axis", "c", "ellipsoid axial semi-axis");
  add_cfg_opt(sc_flow, flow_cli, "--focal", "focal", "paraboloid focal length");
  add_cfg_opt(sc_flow, flow_cli, "--x-max", "x_max", "paraboloid extent");
  add_cfg_opt(sc_flow, flow_cli, "--t-end", "t_end",
              "stop time; <= 0 runs to curvature blowup");
  add_cfg_opt(sc_flow, flow_cli, "--dt-safety", "dt_safety", "CFL fraction");
  add_cfg_opt(sc_flow, flow_cli, "--record-interval", "record_interval",
              "snapshot cadence; < 0 = auto");

  // soliton ---------------------------------------------------------------
  auto* sc_sol = app.add_subcommand("soliton", "shoot and audit a soliton");
  Config sol_cli;
  std::string sol_kind = "translator";
  add_global_opts(sc_sol, g);
  sc_sol->add_option("--kind", sol_kind, "translator | expander");
  add_cfg_opt(sc_sol, sol_cli, "--n", "n", "hypersurface dimension");
  add_cfg_opt(sc_sol, sol_cli, "--rho-max", "rho_max", "radial extent");
  add_cfg_opt(sc_sol, sol_cli, "--step", "step", "radial grid step");
  add_cfg_opt(sc_sol, sol_cli, "--tip-height", "tip_height",
              "expander tip height u(0)");
  add_cfg_opt(sc_sol, sol_cli, "--alpha-list", "alpha_list",
              "pinching levels for the decay audit");

  // verify ----------------------------------------------------------------
  auto* sc_ver = app.add_subcommand("verify", "run an inequality audit");
  Config ver_cli;
  std::string estimate;
  bool refine = false;
  add_global_opts(sc_ver, g);
  sc_ver->add_option("--estimate", estimate,
                     "umbilic | interior | pinching | barrier")
      ->required();
  sc_ver->add_flag("--refine", refine, "compare against doubled resolution");
  for (auto [flag, key] : std::initializer_list<std::pair<const char*,
                                                          const char*>>{
           {"--surface", "surface"}, {"--n", "n"}, {"--nodes", "nodes"},
           {"--radius", "radius"}, {"--a-axis", "a"}, {"--c-axis", "c"},
           {"--t-end", "t_end"}, {"--dt-safety", "dt_safety"},
           {"--record-interval", "record_interval"}, {"--L", "L"},
           {"--alpha", "alpha"}, {"--eps-list", "eps_list"},
           {"--center-z", "center_z"}, {"--center-r", "center_r"},
           {"--p-z", "p_z"}, {"--p-r", "p_r"}, {"--r", "r"},
           {"--e-z", "e_z"}, {"--e-r", "e_r"}, {"--tol", "tol"}})
    add_cfg_opt(sc_ver, ver_cli, flag, key, key);

  // pick ------------------------------------------------------------------
  auto* sc_pick = app.add_subcommand("pick", "curvature point-picking");
  Config pick_cli;
  add_global_opts(sc_pick, g);
  for (auto [flag, key] : std::initializer_list<std::pair<const char*,
                                                          const char*>>{
           {"--surface", "surface"}, {"--n", "n"}, {"--nodes", "nodes"},
           {"--radius", "radius"}, {"--a-axis", "a"}, {"--c-axis", "c"},
           {"--t-end", "t_end"}, {"--seed-snapshot", "seed_snapshot"},
           {"--seed-node", "seed_node"}, {"--delta", "delta"}})
    add_cfg_opt(sc_pick, pick_cli, flag, key, key);

  // classify --------------------------------------------------------------
  auto* sc_cls = app.add_subcommand("classify", "singularity-type evidence");
  Config cls_cli;
  add_global_opts(sc_cls, g);
  for (auto [flag, key] : std::initializer_list<std::pair<const char*,
                                                          const char*>>{
           {"--surface", "surface"}, {"--n", "n"}, {"--nodes", "nodes"},
           {"--radius", "radius"}, {"--a-axis", "a"}, {"--c-axis", "c"},
           {"--t-end", "t_end"}, {"--horizons", "horizons"}})
    add_cfg_opt(sc_cls, cls_cli, flag, key, key);

  // existence -------------------------------------------------------------
  auto* sc_ex = app.add_subcommand("existence",
                                   "truncate-mollify-flow matrix");
  Config ex_cli;
  add_global_opts(sc_ex, g);
  for (auto [flag, key] : std::initializer_list<std::pair<const char*,
                                                          const char*>>{
           {"--n", "n"}, {"--focal", "focal"}, {"--x-max", "x_max"},
           {"--body-nodes", "body_nodes"}, {"--heights", "heights"},
           {"--eps-list", "eps_list"}, {"--delta", "delta"},
           {"--ball-radius", "ball_radius"}, {"--tol", "tol"}})
    add_cfg_opt(sc_ex, ex_cli, flag, key, key);

  // preset ----------------------------------------------------------------
  auto* sc_pre = app.add_subcommand("preset", "run a registered experiment");
  std::string preset_name;
  std::vector<std::string> sets;
  add_global_opts(sc_pre, g);
  sc_pre->add_option("name", preset_name, "preset name")->required();
  sc_pre->add_option("--set", sets, "override, key=value (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto reg = preset_registry();

    if (*sc_flow) {
      Config cfg = layer(flow_defaults(), g, flow_cli);
      return run_with_manifest("flow", cfg, g, [&](json& rep) {
        FlowHistory h = run_flow(build_surface(cfg), build_flow_config(cfg));
        save_history((fs::path(g.out) / "history").string(), h);
        write_curvature_csv((fs::path(g.out) / "final_curvature.csv").string(),
                            h.snapshots.back().curv);
        rep["termination"] = to_string(h.termination);
        rep["t_last"] = h.t_last();
        rep["snapshots"] = h.snapshots.size();
        rep["max_H_final"] = h.snapshots.back().curv.max_H();
        return true;
      });
    }

    if (*sc_sol) {
      Config defs = reg[sol_kind == "expander" ? "expander-scan" : "bowl-scan"]
                        .defaults;
      if (sol_kind != "translator" && sol_kind != "expander")
        throw ConfigError("key kind: unknown soliton kind '" + sol_kind + "'");
      Config cfg = layer(defs, g, sol_cli);
      SolitonKind kind = sol_kind == "expander" ? SolitonKind::Expander
                                                : SolitonKind::Translator;
      return run_with_manifest("soliton", cfg, g, [&](json& rep) {
        return soliton_scan(cfg, g.out, rep, kind);
      });
    }

    if (*sc_ver) {
      std::string pre;
      if (estimate == "umbilic") pre = "umbilic-audit";
      else if (estimate == "interior") pre = "interior-audit";
      else if (estimate == "pinching") pre = "pinch-preserve";
      else if (estimate == "barrier") pre = "barrier-audit";
      else
        throw ConfigError("key estimate: unknown estimate '" + estimate + "'");
      Config cfg = layer(reg[pre].defaults, g, ver_cli);
      return run_with_manifest("verify", cfg, g, [&](json& rep) {
        bool pass = reg[pre].run(cfg, g.out, g, rep);
        std::printf("%s %s\n", pass ? "PASS" : "FAIL", estimate.c_str());
        return pass;
      });
    }

    if (*sc_pick) {
      Config cfg = layer(reg["point-pick-demo"].defaults, g, pick_cli);
      return run_with_manifest("pick", cfg, g, [&](json& rep) {
        return reg["point-pick-demo"].run(cfg, g.out, g, rep);
      });
    }

    if (*sc_cls) {
      Config cfg = layer(reg["type-classify"].defaults, g, cls_cli);
      return run_with_manifest("classify", cfg, g, [&](json& rep) {
        return reg["type-classify"].run(cfg, g.out, g, rep);
      });
    }

    if (*sc_ex) {
      Config cfg = layer(reg["existence-construction"].defaults, g, ex_cli);
      return run_with_manifest("existence", cfg, g, [&](json& rep) {
        return reg["existence-construction"].run(cfg, g.out, g, rep);
      });
    }

    if (*sc_pre) {
      auto it = reg.find(preset_name);
      if (it == reg.end())
        throw ConfigError("unknown preset: " + preset_name);
      Config ov;
      for (const std::string& s : sets) {
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
          throw ConfigError("--set expects key=value, got '" + s + "'");
        ov.set(s.substr(0, eq), s.substr(eq + 1));
      }
      Config cfg = layer(it->second.defaults, g, ov);
      return run_with_manifest("preset:" + preset_name, cfg, g,
                               [&](json& rep) {
                                 return it->second.run(cfg, g.out, g, rep);
                               });
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
