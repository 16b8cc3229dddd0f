#include "qcn/qcmaps.hpp"

#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace qcn {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kOriginGuard = 1e-8;

std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      fail(errc::unknown_map, "malformed map parameter: " + item);
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

double param_value(const std::map<std::string, std::string>& params,
                   const std::string& key, double fallback,
                   bool required = false) {
  auto it = params.find(key);
  if (it == params.end()) {
    if (required) fail(errc::unknown_map, "missing map parameter: " + key);
    return fallback;
  }
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    fail(errc::unknown_map, "bad numeric value for " + key);
  }
}

}  // namespace

complexd AnalyticQCMap::mu(complexd z) const {
  const complexd den = phi_z(z);
  const double mag = std::abs(den);
  if (!(mag > 0.0) || !std::isfinite(mag))
    fail(errc::invalid_params,
         "dilatation of " + id + " undefined at this point");
  return phi_zbar(z) / den;
}

MatrixField AnalyticQCMap::matrix() const {
  const double sup = (ellipticity_K - 1.0) / (ellipticity_K + 1.0);
  AnalyticQCMap self = *this;
  return MatrixField::from_mu(
      [self](complexd z) { return self.mu(z); }, sup);
}

AnalyticQCMap make_ellipse_map(double a, double b) {
  if (!(a > b) || !(b >= 0.0))
    fail(errc::invalid_params, "ellipse map requires a > b >= 0");
  const double d = a * a - b * b;
  const double ca = a / d, cb = b / d;
  AnalyticQCMap m;
  {
    std::ostringstream os;
    os << "ellipse:a=" << a << ",b=" << b;
    m.id = os.str();
  }
  m.phi = [ca, cb](complexd z) { return ca * z - cb * std::conj(z); };
  m.phi_z = [ca](complexd) { return complexd(ca, 0.0); };
  m.phi_zbar = [cb](complexd) { return complexd(-cb, 0.0); };
  m.jacobian = [d](complexd) { return 1.0 / d; };
  m.inverse = [a, b](complexd w) { return a * w + b * std::conj(w); };
  m.inv_jacobian_abs = [d](complexd) { return d; };
  m.inv_jacobian_sup = d;
  m.domain = DomainSpec::ellipse(a + b, a - b);
  m.ellipticity_K = ellipticity_from_mu(b / a);
  m.radial_grading = 1;
  m.quasidisc = true;
  return m;
}

AnalyticQCMap make_rose_petal_map() {
  const double s2 = std::sqrt(2.0);
  AnalyticQCMap m;
  m.id = "rose_petal";
  // z^{3/2}/(sqrt2 conj(z)^{1/2}) = z^2/(sqrt2 |z|) away from the cut.
  m.phi = [s2](complexd z) {
    const double r = std::abs(z);
    if (r == 0.0) return complexd(-1.0, 0.0);
    return z * z / (s2 * r) - 1.0;
  };
  m.phi_z = [s2](complexd z) {
    return 3.0 / (2.0 * s2) * z / std::abs(z);
  };
  m.phi_zbar = [s2](complexd z) {
    const complexd e = z / std::abs(z);
    return -1.0 / (2.0 * s2) * e * e * e;
  };
  m.jacobian = [](complexd) { return 1.0; };
  m.inverse = [](complexd w) {
    const complexd u = w + 1.0;
    const double r = std::abs(u);
    if (r == 0.0) return complexd(0.0, 0.0);
    return std::sqrt(2.0 * r) * std::sqrt(u);
  };
  m.inv_jacobian_abs = [](complexd) { return 1.0; };
  m.inv_jacobian_sup = 1.0;
  m.domain = DomainSpec::polar(
      [](double theta) { return 2.0 * std::sqrt(2.0) * std::cos(2.0 * theta); },
      -kPi / 4.0, kPi / 4.0, false);
  m.ellipticity_K = 2.0;
  m.radial_grading = 1;
  m.quasidisc = true;
  return m;
}

AnalyticQCMap make_cusp_map() {
  AnalyticQCMap m;
  m.id = "cusp";
  // 2 z^{3/8}/conj(z)^{1/8} = 2 sqrt(z)/|z|^{1/4} away from the cut.
  m.phi = [](complexd z) {
    const double r = std::abs(z);
    if (r == 0.0) return complexd(-1.0, 0.0);
    return 2.0 * std::sqrt(z) / std::pow(r, 0.25) - 1.0;
  };
  m.phi_z = [](complexd z) {
    const double r = std::abs(z);
    return 0.75 / (std::sqrt(z) * std::pow(r, 0.25));
  };
  m.phi_zbar = [](complexd z) {
    const double r = std::abs(z);
    return -0.25 * z * std::sqrt(z) / std::pow(r, 2.25);
  };
  m.jacobian = [](complexd z) {
    return 0.5 / std::pow(std::abs(z), 1.5);
  };
  m.inverse = [](complexd w) {
    const complexd u = w + 1.0;
    const double r = std::abs(u);
    if (r == 0.0) return complexd(0.0, 0.0);
    const complexd dir = u / r;
    return std::pow(0.5 * r, 4.0) * dir * dir;
  };
  m.inv_jacobian_abs = [](complexd w) {
    const double r = std::abs(w + 1.0);
    return r * r * r * r * r * r / 32.0;
  };
  m.inv_jacobian_sup = 2.0;
  m.domain = DomainSpec::polar(
      [](double theta) {
        const double c = std::cos(0.5 * theta);
        return c * c * c * c;
      },
      -kPi, kPi, true);
  m.ellipticity_K = 2.0;
  m.radial_grading = 4;
  m.quasidisc = false;  // inward boundary cusp at the origin
  return m;
}

double shear_lambda_max(double f_prime, double a_scale) {
  const double t =
      a_scale * a_scale + 1.0 / (a_scale * a_scale) + f_prime * f_prime;
  return 0.5 * (t + std::sqrt(t * t - 4.0));
}

AnalyticQCMap make_shear_map(std::function<double(double)> f,
                             std::function<double(double)> f_prime,
                             double f_prime_sup, double a_scale) {
  if (!(a_scale > 0.0))
    fail(errc::invalid_params, "shear map requires a_scale > 0");
  if (!(f_prime_sup >= 0.0) || !std::isfinite(f_prime_sup))
    fail(errc::invalid_params, "shear map requires bounded f'");
  const double a = a_scale;
  AnalyticQCMap m;
  m.id = "shear";
  m.phi = [f, a](complexd z) {
    return complexd(a * z.real() + f(z.imag()), z.imag() / a);
  };
  m.phi_z = [f_prime, a](complexd z) {
    return 0.5 * complexd(a + 1.0 / a, -f_prime(z.imag()));
  };
  m.phi_zbar = [f_prime, a](complexd z) {
    return 0.5 * complexd(a - 1.0 / a, f_prime(z.imag()));
  };
  m.jacobian = [](complexd) { return 1.0; };
  m.inverse = [f, a](complexd w) {
    const double y = a * w.imag();
    return complexd((w.real() - f(y)) / a, y);
  };
  m.inv_jacobian_abs = [](complexd) { return 1.0; };
  m.inv_jacobian_sup = 1.0;

  auto phi = m.phi;
  auto rho = [phi](double theta) {
    const complexd dir(std::cos(theta), std::sin(theta));
    auto excess = [&](double t) { return std::norm(phi(t * dir)) - 1.0; };
    double hi = 0.5;
    int guard = 0;
    while (excess(hi) < 0.0) {
      hi *= 1.5;
      if (++guard > 200)
        fail(errc::invalid_params, "shear domain ray never leaves the disc");
    }
    double lo = 0.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (excess(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  m.domain = DomainSpec::polar(rho, -kPi, kPi, true);
  m.ellipticity_K = shear_lambda_max(f_prime_sup, a);
  m.radial_grading = 1;
  m.quasidisc = true;
  return m;
}

AnalyticQCMap make_map(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string tail =
      colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  if (head == "ellipse") {
    const auto params = parse_params(tail);
    const double a = param_value(params, "a", 0.0, true);
    const double b = param_value(params, "b", 0.0, true);
    return make_ellipse_map(a, b);
  }
  if (head == "disc" || head == "identity") return make_ellipse_map(1.0, 0.0);
  if (head == "rose_petal") return make_rose_petal_map();
  if (head == "cusp") return make_cusp_map();
  if (head == "shear") {
    const auto params = parse_params(tail);
    auto it = params.find("fprime");
    if (it == params.end())
      fail(errc::unknown_map, "shear map needs fprime=const<value>");
    const std::string& fp = it->second;
    if (fp.rfind("const", 0) != 0)
      fail(errc::unknown_map, "unsupported fprime spec: " + fp);
    double c = 0.0;
    try {
      c = std::stod(fp.substr(5));
    } catch (const std::exception&) {
      fail(errc::unknown_map, "bad fprime constant: " + fp);
    }
    const double a = param_value(params, "a", 1.0);
    auto map = make_shear_map([c](double y) { return c * y; },
                              [c](double) { return c; }, std::abs(c), a);
    map.id = spec;
    return map;
  }
  fail(errc::unknown_map, "unknown map id: " + spec);
}

DilatationField dilatation_field(const AnalyticQCMap& map) {
  AnalyticQCMap self = map;
  return {[self](complexd z) { return self.mu(z); },
          (map.ellipticity_K - 1.0) / (map.ellipticity_K + 1.0)};
}

complexd second_dilatation(const AnalyticQCMap& map, complexd z) {
  return map.phi_zbar(z) / std::conj(map.phi_z(z));
}

complexd inverse_dilatation(const AnalyticQCMap& map, complexd w) {
  if (!(std::abs(w) < 1.0))
    fail(errc::outside_disc, "inverse_dilatation: |w| >= 1");
  if (!map.inverse) fail(errc::invalid_params, "map has no inverse");
  return -second_dilatation(map, map.inverse(w));
}

double bilipschitz_check(const AnalyticQCMap& map,
                         std::span<const complexd> samples) {
  if (samples.empty())
    fail(errc::invalid_params, "bilipschitz_check: no samples");
  double max_ratio = 0.0;
  for (const complexd& z : samples) {
    const double j = map.jacobian(z);
    if (std::abs(j - 1.0) > 1e-9)
      fail(errc::not_measure_preserving,
           "bilipschitz_check requires J == 1 a.e. (map " + map.id + ")");
    max_ratio =
        std::max(max_ratio, std::abs(map.phi_z(z)) + std::abs(map.phi_zbar(z)));
  }
  return max_ratio;
}

std::vector<complexd> sample_interior(const AnalyticQCMap& map, int n,
                                      unsigned seed, double shrink) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const DomainSpec& dom = map.domain;
  std::vector<complexd> out;
  out.reserve(static_cast<size_t>(n));
  while (static_cast<int>(out.size()) < n) {
    const double theta =
        dom.theta_min() + (dom.theta_max() - dom.theta_min()) * uni(rng);
    const double t = std::sqrt(uni(rng));
    const double r = shrink * t * dom.rho(theta);
    if (r < kOriginGuard) continue;
    out.emplace_back(r * std::cos(theta), r * std::sin(theta));
  }
  return out;
}

std::vector<complexd> sample_boundary(const DomainSpec& domain, int n) {
  std::vector<complexd> out;
  out.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double span = domain.theta_max() - domain.theta_min();
    const double theta =
        domain.theta_min() +
        span * (domain.periodic() ? (double)k / n : (double)k / (n - 1));
    const double r = domain.rho(theta);
    out.emplace_back(r * std::cos(theta), r * std::sin(theta));
  }
  return out;
}

}  // namespace qcn
