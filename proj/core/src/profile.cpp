#include "mcf/profile.hpp"

#include <algorithm>
#include <cmath>

namespace mcf {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void Profile::validate() const {
  if (n < 1) throw Error("Profile: n must be >= 1");
  if (param.size() != value.size()) throw Error("Profile: size mismatch");
  if (param.size() < 2) throw Error("Profile: need at least 2 samples");
  for (std::size_t i = 0; i < param.size(); ++i) {
    if (!std::isfinite(param[i]) || !std::isfinite(value[i]))
      throw NonFiniteError("Profile sample " + std::to_string(i));
    if (i > 0 && !(param[i] > param[i - 1]))
      throw Error("Profile: parameters not strictly increasing at " +
                  std::to_string(i));
  }
  if (kind == ProfileKind::AxisGraph) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      bool cap = (i == 0 && cap_left) || (i + 1 == value.size() && cap_right);
      if (value[i] < 0 || (value[i] == 0 && !cap))
        throw DegenerateRadiusError("AxisGraph r = 0 away from declared caps");
    }
  } else {
    if (std::abs(param.front()) > 1e-9 || std::abs(param.back() - kPi) > 1e-9)
      throw NotClosedError("PolarGraph must cover theta in [0, pi]");
    for (double v : value)
      if (!(v > 0)) throw DegenerateRadiusError("PolarGraph rho must be > 0");
  }
}

void Profile::node_position(std::size_t i, double& z, double& r) const {
  if (kind == ProfileKind::AxisGraph) {
    z = param[i];
    r = value[i];
  } else {
    z = origin_z + value[i] * std::cos(param[i]);
    r = value[i] * std::sin(param[i]);
  }
}

bool Profile::uniform_grid(double rel_tol) const {
  if (param.size() < 3) return true;
  double h = (param.back() - param.front()) / double(param.size() - 1);
  for (std::size_t i = 1; i < param.size(); ++i) {
    double hi = param[i] - param[i - 1];
    if (std::abs(hi - h) > rel_tol * h) return false;
  }
  return true;
}

Profile make_sphere(int n, double radius, std::size_t nodes, double center_z) {
  Profile p;
  p.kind = ProfileKind::PolarGraph;
  p.n = n;
  p.origin_z = center_z;
  p.param.resize(nodes);
  p.value.assign(nodes, radius);
  for (std::size_t i = 0; i < nodes; ++i)
    p.param[i] = kPi * double(i) / double(nodes - 1);
  p.param.back() = kPi;
  return p;
}

Profile make_ellipsoid(int n, double a, double c, std::size_t nodes) {
  Profile p;
  p.kind = ProfileKind::PolarGraph;
  p.n = n;
  p.param.resize(nodes);
  p.value.resize(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    double th = kPi * double(i) / double(nodes - 1);
    p.param[i] = th;
    double ct = std::cos(th) / c, st = std::sin(th) / a;
    p.value[i] = 1.0 / std::sqrt(ct * ct + st * st);
  }
  p.param.back() = kPi;
  return p;
}

Profile make_paraboloid(int n, double focal, double x_max, std::size_t nodes) {
  Profile p;
  p.kind = ProfileKind::AxisGraph;
  p.n = n;
  p.cap_left = true;
  p.param.resize(nodes);
  p.value.resize(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    double x = x_max * double(i) / double(nodes - 1);
    p.param[i] = x;
    p.value[i] = std::sqrt(2.0 * focal * x);
  }
  return p;
}

Profile make_cone(int n, double slope, double x_max, std::size_t nodes) {
  Profile p;
  p.kind = ProfileKind::AxisGraph;
  p.n = n;
  p.cap_left = true;
  p.param.resize(nodes);
  p.value.resize(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    double x = x_max * double(i) / double(nodes - 1);
    p.param[i] = x;
    p.value[i] = slope * x;
  }
  return p;
}

namespace {

// Fritsch--Carlson monotone slopes.
std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  std::size_t n = x.size();
  std::vector<double> h(n - 1), del(n - 1), m(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    del[i] = (y[i + 1] - y[i]) / h[i];
  }
  if (n == 2) {
    m[0] = m[1] = del[0];
    return m;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (del[i - 1] * del[i] <= 0) {
      m[i] = 0;
    } else {
      double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
      m[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
    }
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double m0 = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m0 * d0 <= 0) m0 = 0;
    else if (d0 * d1 <= 0 && std::abs(m0) > 3 * std::abs(d0)) m0 = 3 * d0;
    return m0;
  };
  m[0] = end_slope(h[0], h[1], del[0], del[1]);
  m[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
  return m;
}

}  // namespace

double pchip_eval(const std::vector<double>& xs, const std::vector<double>& ys,
                  double x) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = it == xs.begin() ? 0 : std::size_t(it - xs.begin()) - 1;
  if (i + 1 >= xs.size()) i = xs.size() - 2;
  static thread_local std::vector<double> cached_x, cached_y, cached_m;
  if (cached_x != xs || cached_y != ys) {
    cached_m = pchip_slopes(xs, ys);
    cached_x = xs;
    cached_y = ys;
  }
  double h = xs[i + 1] - xs[i], t = (x - xs[i]) / h;
  double t2 = t * t, t3 = t2 * t;
  double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * ys[i] + h10 * h * cached_m[i] + h01 * ys[i + 1] +
         h11 * h * cached_m[i + 1];
}

Profile resample_uniform(const Profile& p) {
  p.validate();
  Profile q = p;
  std::size_t n = p.size();
  double a = p.param.front(), b = p.param.back();
  for (std::size_t i = 0; i < n; ++i) {
    double x = a + (b - a) * double(i) / double(n - 1);
    q.param[i] = x;
    q.value[i] = pchip_eval(p.param, p.value, x);
  }
  q.param.front() = a;
  q.param.back() = b;
  q.value.front() = p.value.front();
  q.value.back() = p.value.back();
  return q;
}

}  // namespace mcf
