#include "qcn/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "qcn/errors.hpp"
#include "qcn/parallel.hpp"

namespace qcn {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Nodes/weights on (-1, 1) by Newton iteration on Legendre polynomials.
void gauss_legendre_sym(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double xi = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * xi * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (xi * p0 - p1) / (xi * xi - 1.0);
      const double dx = p0 / pp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    x[i] = -xi;
    x[n - 1 - i] = xi;
    w[i] = 2.0 / ((1.0 - xi * xi) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

struct Rule {
  std::vector<double> x, w;
};

const Rule& cached_rule(int n) {
  static std::map<int, Rule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    Rule r;
    gauss_legendre_sym(n, r.x, r.w);
    it = cache.emplace(n, std::move(r)).first;
  }
  return it->second;
}

int chunk_count(int n_angular) { return std::min(64, std::max(1, n_angular)); }

}  // namespace

void gauss_legendre_01(int n, std::vector<double>& nodes,
                       std::vector<double>& weights) {
  if (n < 1) fail(errc::invalid_params, "gauss_legendre_01: n < 1");
  const Rule& r = cached_rule(n);
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = 0.5 * (r.x[i] + 1.0);
    weights[i] = 0.5 * r.w[i];
  }
}

double integrate_disc(const std::function<double(complexd)>& f, int n_radial,
                      int n_angular) {
  if (n_radial < 1 || n_angular < 4)
    fail(errc::invalid_params, "integrate_disc: resolution too small");
  std::vector<double> rx, rw;
  gauss_legendre_01(n_radial, rx, rw);
  const double dtheta = 2.0 * kPi / n_angular;
  const int chunks = chunk_count(n_angular);
  return reduce_chunks(chunks, [&](int c) {
    const int j0 = static_cast<int>(static_cast<long long>(c) * n_angular / chunks);
    const int j1 =
        static_cast<int>(static_cast<long long>(c + 1) * n_angular / chunks);
    double acc = 0.0;
    for (int j = j0; j < j1; ++j) {
      const double theta = j * dtheta;
      const double ct = std::cos(theta), st = std::sin(theta);
      double ring = 0.0;
      for (int i = 0; i < n_radial; ++i) {
        const double r = rx[i];
        ring += rw[i] * r * f(complexd(r * ct, r * st));
      }
      acc += ring * dtheta;
    }
    return acc;
  });
}

PolarNodes polar_nodes(const PolarPatch& patch, int n_radial, int n_angular) {
  if (n_radial < 1 || n_angular < 4)
    fail(errc::invalid_params, "polar_nodes: resolution too small");
  if (patch.grading < 1)
    fail(errc::invalid_params, "polar_nodes: grading < 1");
  const int panel = 16;
  const int n_panels = (n_angular + panel - 1) / panel;
  const Rule& ang = cached_rule(panel);
  std::vector<double> rx, rw;
  gauss_legendre_01(n_radial, rx, rw);

  const double p = static_cast<double>(patch.grading);
  const double span = patch.theta_max - patch.theta_min;
  const double hpanel = span / n_panels;

  PolarNodes out;
  out.points.reserve(static_cast<size_t>(n_panels) * panel * n_radial);
  out.weights.reserve(out.points.capacity());
  for (int pa = 0; pa < n_panels; ++pa) {
    const double a = patch.theta_min + pa * hpanel;
    for (int q = 0; q < panel; ++q) {
      const double theta = a + 0.5 * hpanel * (ang.x[q] + 1.0);
      const double wtheta = 0.5 * hpanel * ang.w[q];
      const double rho = patch.rho(theta);
      const double ct = std::cos(theta), st = std::sin(theta);
      const double rho2 = rho * rho;
      for (int i = 0; i < n_radial; ++i) {
        const double t = rx[i];
        // s = t^p, area element s rho^2 ds dtheta = p t^{2p-1} rho^2 dt dtheta
        const double s = std::pow(t, p);
        const double jac = p * std::pow(t, 2.0 * p - 1.0) * rho2;
        out.points.emplace_back(s * rho * ct, s * rho * st);
        out.weights.push_back(rw[i] * wtheta * jac);
      }
    }
  }
  return out;
}

double integrate_polar(const PolarPatch& patch,
                       const std::function<double(complexd)>& f, int n_radial,
                       int n_angular) {
  const PolarNodes nodes = polar_nodes(patch, n_radial, n_angular);
  const int n = static_cast<int>(nodes.points.size());
  const int chunks = chunk_count(n / std::max(1, n_radial));
  return reduce_chunks(chunks, [&](int c) {
    const int k0 = static_cast<int>(static_cast<long long>(c) * n / chunks);
    const int k1 = static_cast<int>(static_cast<long long>(c + 1) * n / chunks);
    double acc = 0.0;
    for (int k = k0; k < k1; ++k) acc += nodes.weights[k] * f(nodes.points[k]);
    return acc;
  });
}

double golden_section_min(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_iter) {
  const double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace qcn
