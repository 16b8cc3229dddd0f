#include "qcn/domain.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qcn/errors.hpp"

namespace qcn {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Composite Simpson of g over [a, b] with n (even) intervals.
double simpson(const std::function<double(double)>& g, double a, double b,
               int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = g(a) + g(b);
  for (int i = 1; i < n; ++i) s += g(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

DomainSpec DomainSpec::ellipse(double semi_x, double semi_y) {
  if (!(semi_x > 0.0) || !(semi_y > 0.0))
    fail(errc::invalid_params, "ellipse: semi-axes must be positive");
  DomainSpec d;
  const double ax = semi_x, ay = semi_y;
  d.rho_ = [ax, ay](double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return ax * ay / std::sqrt(ay * ay * c * c + ax * ax * s * s);
  };
  d.theta_min_ = -kPi;
  d.theta_max_ = kPi;
  d.periodic_ = true;
  d.is_ellipse_ = true;
  d.semi_x_ = ax;
  d.semi_y_ = ay;
  d.area_ = kPi * ax * ay;
  d.diameter_ = 2.0 * std::max(ax, ay);
  d.convex_ = true;
  return d;
}

DomainSpec DomainSpec::polar(std::function<double(double)> rho,
                             double theta_min, double theta_max,
                             bool periodic) {
  if (!(theta_max > theta_min))
    fail(errc::invalid_params, "polar domain: empty angular range");
  DomainSpec d;
  d.rho_ = std::move(rho);
  d.theta_min_ = theta_min;
  d.theta_max_ = theta_max;
  d.periodic_ = periodic;
  d.finalize(false);
  return d;
}

DomainSpec DomainSpec::square(double side) {
  if (!(side > 0.0)) fail(errc::invalid_params, "square: side must be positive");
  const double h = 0.5 * side;
  DomainSpec d = polar(
      [h](double theta) {
        const double c = std::abs(std::cos(theta));
        const double s = std::abs(std::sin(theta));
        return h / std::max(c, s);
      },
      -kPi, kPi, true);
  d.convex_ = true;
  return d;
}

void DomainSpec::finalize(bool) {
  const int kAreaNodes = 10000;
  area_ = simpson([this](double th) { return 0.5 * rho_(th) * rho_(th); },
                  theta_min_, theta_max_, kAreaNodes);
  if (!(area_ > 0.0)) fail(errc::invalid_params, "domain has nonpositive area");

  // Boundary polygon for diameter and convexity.
  const int n = 2048;
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    const double th = theta_min_ + (theta_max_ - theta_min_) *
                                       (periodic_ ? (double)i / n
                                                  : (double)i / (n - 1));
    const double r = rho_(th);
    if (r < -1e-12) fail(errc::invalid_params, "rho(theta) < 0");
    xs[i] = r * std::cos(th);
    ys[i] = r * std::sin(th);
  }

  double d2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double dx = xs[i] - xs[j], dy = ys[i] - ys[j];
      d2 = std::max(d2, dx * dx + dy * dy);
    }
  diameter_ = std::sqrt(d2);

  // Convexity by the midpoint criterion: a star-shaped region is convex iff
  // midpoints of boundary pairs stay inside. Cross-product tests miss thin
  // reentrant cusps whose boundary points sit at vanishing radii.
  const int nc = 512;
  std::vector<double> cx(nc), cy(nc);
  for (int i = 0; i < nc; ++i) {
    const double th = theta_min_ + (theta_max_ - theta_min_) *
                                       (periodic_ ? (double)i / nc
                                                  : (double)i / (nc - 1));
    const double r = rho_(th);
    cx[i] = r * std::cos(th);
    cy[i] = r * std::sin(th);
  }
  bool convex = true;
  const double slack = 1e-9;
  for (int i = 0; i < nc && convex; ++i)
    for (int j = i + 1; j < nc; ++j) {
      const double mx = 0.5 * (cx[i] + cx[j]);
      const double my = 0.5 * (cy[i] + cy[j]);
      const double r = std::hypot(mx, my);
      if (r < slack * diameter_) continue;
      const double th = std::atan2(my, mx);
      if (!periodic_ && (th < theta_min_ || th > theta_max_)) {
        convex = false;
        break;
      }
      const double limit = rho_(th);
      if (r > limit * (1.0 + slack) + slack * diameter_) {
        convex = false;
        break;
      }
    }
  convex_ = convex;
}

double DomainSpec::rho(double theta) const {
  if (!rho_) fail(errc::bad_input, "DomainSpec: empty");
  return rho_(theta);
}

double DomainSpec::same_area_radius() const {
  return std::sqrt(area_ / kPi);
}

bool DomainSpec::contains(complexd z, double shrink) const {
  const double r = std::abs(z);
  if (r == 0.0) return true;
  double th = std::arg(z);
  if (!periodic_) {
    if (th < theta_min_ || th > theta_max_) return false;
  }
  return r <= shrink * rho_(th);
}

}  // namespace qcn
