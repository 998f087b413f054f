#include "mcf/soliton.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"

namespace mcf {

namespace {

// Right side of the reduced second-order ODEs, as p' = f(rho, u, p).
double translator_pprime(int n, double rho, double /*u*/, double p) {
  return (1.0 + p * p) * (1.0 - (n - 1) * p / rho);
}

double expander_pprime(int n, double rho, double u, double p) {
  return (1.0 + p * p) * (0.5 * (u - rho * p) - (n - 1) * p / rho);
}

template <typename F>
void rk4(F&& f, int n, double& rho, double& u, double& p, double dh) {
  auto du = [](double pp) { return pp; };
  double k1u = du(p), k1p = f(n, rho, u, p);
  double k2u = du(p + 0.5 * dh * k1p),
         k2p = f(n, rho + 0.5 * dh, u + 0.5 * dh * k1u, p + 0.5 * dh * k1p);
  double k3u = du(p + 0.5 * dh * k2p),
         k3p = f(n, rho + 0.5 * dh, u + 0.5 * dh * k2u, p + 0.5 * dh * k2p);
  double k4u = du(p + dh * k3p),
         k4p = f(n, rho + dh, u + dh * k3u, p + dh * k3p);
  u += dh / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
  p += dh / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
  rho += dh;
}

template <typename F>
SolitonProfile shoot(SolitonKind kind, int n, double tip_height,
                     double rho_max, double h, F&& series, double u2,
                     double u4) {
  if (n < 2) throw Error("soliton: n must be >= 2");
  if (!(h > 0) || h > 0.05)
    throw StepTooLargeError("grid step must lie in (0, 0.05]");
  if (rho_max < 4 * h) throw Error("soliton: rho_max too small");
  (void)series;

  SolitonProfile s;
  s.kind = kind;
  s.n = n;
  s.tip_height = tip_height;
  std::size_t m = std::size_t(std::llround(rho_max / h)) + 1;
  s.nodes.resize(m);
  s.nodes[0] = {0.0, tip_height, 0.0};

  // Series start across the removable singularity at rho = 0:
  // u = tip + u2 rho^2 + u4 rho^4.
  double rho = h;
  double u = tip_height + u2 * h * h + u4 * h * h * h * h;
  double p = 2 * u2 * h + 4 * u4 * h * h * h;
  s.nodes[1] = {rho, u, p};

  auto f = [kind](int nn, double r, double uu, double pp) {
    return kind == SolitonKind::Translator ? translator_pprime(nn, r, uu, pp)
                                           : expander_pprime(nn, r, uu, pp);
  };
  // Keep the integration error well below the sampling FD error.
  int sub = std::max(1, int(std::ceil(h / 1e-3)));
  for (std::size_t i = 2; i < m; ++i) {
    double dh = h / sub;
    for (int k = 0; k < sub; ++k) rk4(f, n, rho, u, p, dh);
    rho = double(i) * h;  // keep the grid exactly uniform
    s.nodes[i] = {rho, u, p};
    if (!std::isfinite(u) || !std::isfinite(p))
      throw NonFiniteError("soliton integration at rho = " +
                           std::to_string(rho));
    if (s.kappa_min(i) < -1e-10)
      throw NonConvexError("kappa_1 < 0 at rho = " + std::to_string(rho));
  }
  return s;
}

}  // namespace

double SolitonProfile::grid_step() const {
  return nodes[1].rho - nodes[0].rho;
}

double SolitonProfile::H(std::size_t i) const {
  const SolitonNode& nd = nodes[i];
  if (kind == SolitonKind::Translator)
    return 1.0 / std::sqrt(1.0 + nd.up * nd.up);
  return (nd.u - nd.rho * nd.up) / (2.0 * std::sqrt(1.0 + nd.up * nd.up));
}

double SolitonProfile::kappa_rot(std::size_t i) const {
  if (i == 0) return kappa_ax(0);
  const SolitonNode& nd = nodes[i];
  return nd.up / (nd.rho * std::sqrt(1.0 + nd.up * nd.up));
}

double SolitonProfile::kappa_ax(std::size_t i) const {
  if (i == 0) {
    // umbilic tip: u''(0) = 1/n (translator) resp. tip_height/(2n) (expander)
    return kind == SolitonKind::Translator ? 1.0 / n : tip_height / (2.0 * n);
  }
  return H(i) - (n - 1) * kappa_rot(i);
}

double SolitonProfile::kappa_min(std::size_t i) const {
  return std::min(kappa_ax(i), kappa_rot(i));
}

double SolitonProfile::ratio(std::size_t i) const {
  return kappa_min(i) / H(i);
}

double SolitonProfile::normV(std::size_t i) const {
  const SolitonNode& nd = nodes[i];
  double w = std::sqrt(1.0 + nd.up * nd.up);
  if (kind == SolitonKind::Translator) return nd.up / w;
  return 0.5 * (nd.rho + nd.u * nd.up) / w;
}

std::vector<double> SolitonProfile::arclength() const {
  std::vector<double> d(nodes.size(), 0.0);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    double w0 = std::sqrt(1.0 + nodes[i - 1].up * nodes[i - 1].up);
    double w1 = std::sqrt(1.0 + nodes[i].up * nodes[i].up);
    d[i] = d[i - 1] + 0.5 * (w0 + w1) * (nodes[i].rho - nodes[i - 1].rho);
  }
  return d;
}

std::vector<double> SolitonProfile::geometric_residual() const {
  std::size_t m = nodes.size();
  double h = grid_step();
  std::vector<double> res(m);
  for (std::size_t i = 0; i < m; ++i) {
    double p, pp;
    if (i == 0) {
      p = 0.0;  // even reflection at the tip
      pp = 2.0 * (nodes[1].u - nodes[0].u) / (h * h);
    } else if (i + 1 == m) {
      p = (3 * nodes[i].u - 4 * nodes[i - 1].u + nodes[i - 2].u) / (2 * h);
      pp = (2 * nodes[i].u - 5 * nodes[i - 1].u + 4 * nodes[i - 2].u -
            nodes[i - 3].u) / (h * h);
    } else {
      p = (nodes[i + 1].u - nodes[i - 1].u) / (2 * h);
      pp = (nodes[i + 1].u - 2 * nodes[i].u + nodes[i - 1].u) / (h * h);
    }
    double w = std::sqrt(1.0 + p * p);
    double k_ax = pp / (w * w * w);
    double k_rot = i == 0 ? k_ax : p / (nodes[i].rho * w);
    double Hfd = k_ax + (n - 1) * k_rot;
    double rhs = kind == SolitonKind::Translator
                     ? 1.0 / w
                     : (nodes[i].u - nodes[i].rho * p) / (2.0 * w);
    res[i] = std::abs(Hfd - rhs);
  }
  return res;
}

SolitonProfile shoot_translator(int n, double rho_max, double h) {
  double u2 = 1.0 / (2.0 * n);
  double u4 = 1.0 / (4.0 * double(n) * n * n * (n + 2));
  return shoot(SolitonKind::Translator, n, 0.0, rho_max, h, 0, u2, u4);
}

SolitonProfile shoot_expander(int n, double tip_height, double rho_max,
                              double h) {
  if (!(tip_height > 0))
    throw NonConvexError("expander needs tip_height > 0");
  double u2 = tip_height / (4.0 * n);
  double u4 = (8.0 * u2 * u2 * u2 - 0.5 * u2) / (4.0 * n + 8.0);
  return shoot(SolitonKind::Expander, n, tip_height, rho_max, h, 0, u2, u4);
}

IdentityReport verify_identities(const SolitonProfile& s) {
  std::size_t m = s.nodes.size();
  std::vector<double> d = s.arclength();
  double shift = s.kind == SolitonKind::Expander ? 0.5 : 0.0;
  IdentityReport rep;
  auto fd = [&](auto&& f, std::size_t i) {
    // nonuniform centered first derivative in arclength
    double h1 = d[i] - d[i - 1], h2 = d[i + 1] - d[i];
    double f0 = f(i - 1), f1 = f(i), f2 = f(i + 1);
    return (f2 * h1 * h1 - f0 * h2 * h2 + f1 * (h2 * h2 - h1 * h1)) /
           (h1 * h2 * (h1 + h2));
  };
  for (std::size_t i = 1; i + 1 < m; ++i) {
    double gf = fd([&](std::size_t k) { return s.H(k); }, i) +
                s.kappa_ax(i) * s.normV(i);
    double gm = fd([&](std::size_t k) { return s.normV(k); }, i) -
                (s.H(i) * s.kappa_ax(i) + shift);
    double drho_ds = fd([&](std::size_t k) { return s.nodes[k].rho; }, i);
    double gr = s.normV(i) * drho_ds / s.nodes[i].rho -
                (s.H(i) * s.kappa_rot(i) + shift);
    rep.sup_gradient_field = std::max(rep.sup_gradient_field, std::abs(gf));
    rep.sup_gradV_meridian = std::max(rep.sup_gradV_meridian, std::abs(gm));
    rep.sup_gradV_rotational = std::max(rep.sup_gradV_rotational, std::abs(gr));
  }
  return rep;
}

std::string IdentityReport::to_json() const {
  nlohmann::json j;
  j["sup_gradient_field"] = sup_gradient_field;
  j["sup_gradV_meridian"] = sup_gradV_meridian;
  j["sup_gradV_rotational"] = sup_gradV_rotational;
  return j.dump(2);
}

DecayReport decay_audit(const SolitonProfile& s, double alpha) {
  if (!(alpha > 0)) throw Error("decay_audit: alpha must be positive");
  std::size_t m = s.nodes.size();
  double h = s.grid_step();
  DecayReport rep;
  rep.alpha = alpha;
  rep.d = s.arclength();
  rep.H.resize(m);
  rep.normV.resize(m);
  rep.ratio.resize(m);
  rep.alpha_max.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    rep.H[i] = s.H(i);
    rep.normV[i] = s.normV(i);
    rep.ratio[i] = s.ratio(i);
    rep.alpha_max[i] = i == 0 ? rep.ratio[0]
                              : std::min(rep.alpha_max[i - 1], rep.ratio[i]);
  }
  rep.alpha_max_monotone = true;
  for (std::size_t i = 1; i < m; ++i)
    if (rep.ratio[i] > rep.ratio[i - 1] + 1e-12) rep.alpha_max_monotone = false;

  std::size_t istar = 0;
  while (istar + 1 < m && rep.alpha_max[istar + 1] >= alpha) ++istar;
  rep.d_star = rep.alpha_max[0] >= alpha ? rep.d[istar] : 0.0;

  double slack = h;
  rep.max_slack_used = slack;
  // Cumulative quadratures along the meridian (arclength measure).
  std::vector<double> intH2(m, 0.0), intV(m, 0.0);
  for (std::size_t i = 1; i < m; ++i) {
    double ds = rep.d[i] - rep.d[i - 1];
    intH2[i] = intH2[i - 1] +
               0.5 * ds * (rep.H[i] * rep.H[i] + rep.H[i - 1] * rep.H[i - 1]);
    intV[i] = intV[i - 1] + 0.5 * ds * (rep.normV[i] + rep.normV[i - 1]);
  }
  rep.ineq_V_bounds = true;
  rep.ineq_V_linear = true;
  rep.ineq_logH_pointwise = true;
  rep.ineq_logH_integrated = true;
  for (std::size_t i = 0; i < m && rep.alpha_max[i] >= alpha; ++i) {
    if (s.kind == SolitonKind::Translator) {
      if (rep.normV[i] > 1.0 + 1e-12 ||
          rep.normV[i] < alpha * intH2[i] - slack)
        rep.ineq_V_bounds = false;
    } else {
      if (rep.normV[i] < 0.5 * alpha * rep.d[i] - slack)
        rep.ineq_V_linear = false;
    }
    double dlogH = std::log(rep.H[i]) - std::log(rep.H[0]);
    if (-dlogH < alpha * intV[i] - slack) rep.ineq_logH_integrated = false;
    if (i > 0 && i + 1 < m) {
      double h1 = rep.d[i] - rep.d[i - 1], h2 = rep.d[i + 1] - rep.d[i];
      double slope = (std::log(rep.H[i + 1]) * h1 * h1 -
                      std::log(rep.H[i - 1]) * h2 * h2 +
                      std::log(rep.H[i]) * (h2 * h2 - h1 * h1)) /
                     (h1 * h2 * (h1 + h2));
      double lhs = -rep.normV[i] * slope;
      if (lhs < alpha * rep.normV[i] * rep.normV[i] -
                    slack * (1.0 + rep.normV[i]))
        rep.ineq_logH_pointwise = false;
    }
  }
  return rep;
}

std::string DecayReport::to_json() const {
  nlohmann::json j;
  j["alpha"] = alpha;
  j["d_star"] = d_star;
  j["alpha_max_final"] = alpha_max.back();
  j["alpha_max_monotone"] = alpha_max_monotone;
  j["ineq_V_bounds"] = ineq_V_bounds;
  j["ineq_V_linear"] = ineq_V_linear;
  j["ineq_logH_pointwise"] = ineq_logH_pointwise;
  j["ineq_logH_integrated"] = ineq_logH_integrated;
  j["max_slack_used"] = max_slack_used;
  return j.dump(2);
}

void write_soliton_csv(const std::string& path, const SolitonProfile& s) {
  std::ofstream os(path);
  os << "d,u,H,kappa1,kappan,ratio,normV,residual\n";
  auto d = s.arclength();
  auto res = s.geometric_residual();
  os.precision(17);
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    os << d[i] << ',' << s.nodes[i].u << ',' << s.H(i) << ',' << s.kappa_min(i)
       << ',' << std::max(s.kappa_ax(i), s.kappa_rot(i)) << ',' << s.ratio(i)
       << ',' << s.normV(i) << ',' << res[i] << '\n';
  }
}

}  // namespace mcf
