#include "qcn/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qcn/quadrature.hpp"
#include "qcn/special.hpp"

namespace qcn {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn10 = 2.302585092994046;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Exponent of the doubling-condition factor exp{K_eff pi^2 (2+pi^2)^2 /
// (2 log 3)} in natural log units.
double doubling_exponent(double k_eff) {
  const double q = 2.0 + kPi * kPi;
  return k_eff * kPi * kPi * q * q / (2.0 * std::log(3.0));
}

// log nu with beta = 1 + e^t, stable down to t ~ -745.
double log_nu_t(double t, double k_eff) {
  const double u = std::exp(t);
  return 8.0 * (1.0 + u) * kLn10 + std::log(2.0) + t - std::log1p(2.0 * u) +
         2.0 * (1.0 + u) * std::log(24.0 * kPi * kPi * k_eff);
}

// log10 of ((2b-1)/(b-1))^{-(2b-1)/b} C_b^{-2} at beta = 1 + e^t.
double quasidisc_objective(double t, double k2) {
  const double u = std::exp(t);
  const double beta = 1.0 + u;
  const double ln_nu = log_nu_t(t, k2);
  if (!(ln_nu < 0.0)) return -kInf;
  const double one_minus_nu = -std::expm1(ln_nu);
  const double two_b1 = 2.0 * beta - 1.0;
  return -(two_b1 / beta) * std::log10(two_b1 / u) - 12.0 +
         std::log10(two_b1 * one_minus_nu) / beta;
}

double root_of_nu(double k2) {
  double lo = -745.0, hi = 0.0;
  if (!(log_nu_t(lo, k2) < 0.0))
    fail(errc::no_feasible_beta, "nu(beta) >= 1 over the whole range");
  while (log_nu_t(hi, k2) < 0.0) hi += 5.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (log_nu_t(mid, k2) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);  // t with nu(1 + e^t) = 1
}

}  // namespace

const char* bound_kind_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::thm51_beta: return "thm51_beta";
    case BoundKind::thm47_inf: return "thm47_inf";
    case BoundKind::payne_weinberger: return "payne_weinberger";
    case BoundKind::classical_elliptic: return "classical_elliptic";
    case BoundKind::quasidisc_MK: return "quasidisc_MK";
  }
  return "unknown";
}

double poincare_constant_upper(double r) {
  if (!(r >= 1.0))
    fail(errc::invalid_params, "poincare_constant_upper: r < 1");
  return std::pow(0.5 * kPi, (2.0 - r) / (2.0 * r)) *
         std::pow(r + 2.0, (r + 2.0) / (2.0 * r));
}

double poincare_constant_disc_l2() { return 1.0 / kJ1PrimeZero1; }

BetaRegularityReport beta_norm(const AnalyticQCMap& map, double beta,
                               int n_quad) {
  if (!(beta >= 1.0)) fail(errc::invalid_params, "beta_norm: beta < 1");
  if (n_quad < 16) fail(errc::invalid_params, "beta_norm: n_quad < 16");
  auto integrand = [&map, beta](complexd w) {
    return std::pow(map.inv_jacobian_abs(w), beta);
  };
  const double coarse = integrate_disc(integrand, n_quad, 4 * n_quad);
  const double fine = integrate_disc(integrand, 2 * n_quad, 8 * n_quad);
  if (fine > 1.1 * coarse) {
    std::ostringstream os;
    os << "refinement grew the integral by "
       << 100.0 * (fine / coarse - 1.0) << "% at beta = " << beta
       << "; beta is past the integrability threshold";
    fail(errc::quadrature_divergence, os.str());
  }
  BetaRegularityReport rep;
  rep.beta = beta;
  rep.integral = fine;
  rep.norm = std::pow(fine, 1.0 / beta);
  rep.quadrature_error_estimate =
      std::abs(fine - coarse) / std::max(std::abs(fine), 1e-300);
  return rep;
}

SpectralBound lower_bound_thm51(const AnalyticQCMap& map, double beta,
                                int n_quad) {
  if (!(beta > 1.0))
    fail(errc::invalid_params, "lower_bound_thm51: beta must exceed 1");
  const BetaRegularityReport rep = beta_norm(map, beta, n_quad);
  const double exponent = (2.0 * beta - 1.0) / beta;
  const double ratio = (2.0 * beta - 1.0) / (beta - 1.0);
  const double factor = 4.0 * std::pow(kPi, -1.0 / beta) *
                        std::pow(ratio, exponent);
  SpectralBound b;
  b.kind = BoundKind::thm51_beta;
  b.value = 1.0 / (factor * rep.norm);
  b.log10_value = -(std::log10(4.0) - std::log10(kPi) / beta +
                    exponent * std::log10(ratio) + std::log10(rep.norm));
  b.inputs = {{"beta", beta},
              {"jacobian_norm", rep.norm},
              {"n_quad", static_cast<double>(n_quad)},
              {"quadrature_error", rep.quadrature_error_estimate}};
  return b;
}

SpectralBound lower_bound_thm47(const AnalyticQCMap& map) {
  const double sup = map.inv_jacobian_sup;
  if (!(sup > 0.0) || !std::isfinite(sup))
    fail(errc::not_inf_regular,
         "ess sup |J(w, phi^{-1})| is unbounded for " + map.id);
  SpectralBound b;
  b.kind = BoundKind::thm47_inf;
  b.value = kJ1PrimeZero1 * kJ1PrimeZero1 / sup;
  b.log10_value = std::log10(b.value);
  b.inputs = {{"jacobian_sup", sup}};
  return b;
}

SpectralBound payne_weinberger(const DomainSpec& domain, double k,
                               bool elliptic_variant) {
  if (!(k >= 1.0)) fail(errc::invalid_params, "payne_weinberger: K < 1");
  const double d = domain.diameter();
  SpectralBound b;
  b.kind = elliptic_variant ? BoundKind::classical_elliptic
                            : BoundKind::payne_weinberger;
  b.value = kPi * kPi / (d * d);
  if (elliptic_variant) b.value /= k;
  b.log10_value = std::log10(b.value);
  b.applicable = domain.convex();
  if (!b.applicable) b.note = "domain is not convex";
  b.inputs = {{"diameter", d}, {"K", k}};
  return b;
}

double embedding_constant_thm43(const AnalyticQCMap& map, double s,
                                double beta, int n_quad) {
  if (!(s >= 1.0)) fail(errc::invalid_params, "embedding constant: s < 1");
  if (!(beta > 1.0)) fail(errc::invalid_params, "embedding constant: beta <= 1");
  const double r = beta * s / (beta - 1.0);
  const BetaRegularityReport rep = beta_norm(map, beta, n_quad);
  return poincare_constant_upper(r) * std::pow(rep.norm, 1.0 / s);
}

double log_nu(double beta, double k_eff) {
  if (!(beta > 1.0)) fail(errc::invalid_params, "log_nu: beta <= 1");
  return 8.0 * beta * kLn10 + std::log(2.0 * (beta - 1.0)) -
         std::log(2.0 * beta - 1.0) +
         2.0 * beta * std::log(24.0 * kPi * kPi * k_eff);
}

double log_nu_shifted(double beta_minus_1, double k_eff) {
  if (!(beta_minus_1 > 0.0))
    fail(errc::invalid_params, "log_nu_shifted: beta <= 1");
  const double u = beta_minus_1;
  return 8.0 * (1.0 + u) * kLn10 + std::log(2.0 * u) - std::log1p(2.0 * u) +
         2.0 * (1.0 + u) * std::log(24.0 * kPi * kPi * k_eff);
}

double inverse_holder_log10(double kappa, double k, bool reflected) {
  if (!(k >= 1.0)) fail(errc::invalid_params, "inverse Hoelder: K < 1");
  const double k_eff = reflected ? k * k : k;
  if (!(kappa > 1.0))
    fail(errc::kappa_out_of_range, "inverse Hoelder: kappa <= 1");
  if (k_eff > 1.0 && kappa >= k_eff / (k_eff - 1.0))
    fail(errc::kappa_out_of_range,
         "inverse Hoelder: kappa >= K_eff/(K_eff - 1)");
  const double ln_nu = log_nu(kappa, k_eff);
  if (!(ln_nu < 0.0))
    fail(errc::nu_exceeds_one, "inverse Hoelder: nu(kappa) >= 1");
  const double one_minus_nu = -std::expm1(ln_nu);
  const double log10_c =
      6.0 - std::log10((2.0 * kappa - 1.0) * one_minus_nu) / (2.0 * kappa);
  return 2.0 * log10_c + std::log10(k_eff) +
         (1.0 / kappa - 1.0) * std::log10(kPi) - std::log10(4.0) +
         doubling_exponent(k_eff) / kLn10;
}

QuasidiscConstant quasidisc_mk(double k) {
  if (!(k >= 1.0)) fail(errc::invalid_params, "quasidisc_mk: K < 1");
  const double k2 = k * k;
  const double t_tilde = root_of_nu(k2);
  const double beta_tilde = 1.0 + std::exp(t_tilde);
  const double beta_cap = k > 1.0 ? k / (k - 1.0) : kInf;
  const double beta_star = std::min(beta_cap, beta_tilde);
  if (!(beta_star > 1.0))
    fail(errc::no_feasible_beta, "empty beta interval");

  const double t_hi = std::log(beta_star - 1.0) - 1e-6;
  const double t_lo = t_hi - 40.0;
  const double t_opt = golden_section_min(
      [k2](double t) { return -quasidisc_objective(t, k2); }, t_lo, t_hi,
      1e-12, 400);

  QuasidiscConstant out;
  out.beta_tilde = beta_tilde;
  out.beta_star = beta_star;
  out.beta_opt = 1.0 + std::exp(t_opt);
  out.beta_tilde_minus_1 = std::exp(t_tilde);
  out.beta_opt_minus_1 = std::exp(t_opt);
  out.log10_M = std::log10(kPi) - 2.0 * std::log10(k) -
                doubling_exponent(k2) / kLn10 + quasidisc_objective(t_opt, k2);
  if (!std::isfinite(out.log10_M))
    fail(errc::no_feasible_beta, "quasidisc constant did not stay finite");
  return out;
}

double quasidisc_mk_grid(double k, int n_points) {
  if (!(k >= 1.0)) fail(errc::invalid_params, "quasidisc_mk_grid: K < 1");
  if (n_points < 2) fail(errc::invalid_params, "quasidisc_mk_grid: n < 2");
  const double k2 = k * k;
  const double t_tilde = root_of_nu(k2);
  const double beta_tilde = 1.0 + std::exp(t_tilde);
  const double beta_cap = k > 1.0 ? k / (k - 1.0) : kInf;
  const double beta_star = std::min(beta_cap, beta_tilde);
  const double t_hi = std::log(beta_star - 1.0) - 1e-6;
  const double t_lo = t_hi - 40.0;
  double best = -kInf;
  for (int i = 0; i <= n_points; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / n_points;
    best = std::max(best, quasidisc_objective(t, k2));
  }
  return std::log10(kPi) - 2.0 * std::log10(k) -
         doubling_exponent(k2) / kLn10 + best;
}

SpectralBound quasidisc_bound(const AnalyticQCMap& map) {
  const QuasidiscConstant mk = quasidisc_mk(map.ellipticity_K);
  SpectralBound b;
  b.kind = BoundKind::quasidisc_MK;
  b.log10_value = mk.log10_M - std::log10(map.domain.area());
  b.value = std::pow(10.0, b.log10_value);  // underflows to 0 by design
  b.applicable = map.quasidisc;
  if (!b.applicable) b.note = "domain is not a quasidisc";
  b.inputs = {{"K", map.ellipticity_K},
              {"area", map.domain.area()},
              {"log10_M", mk.log10_M},
              {"beta_star", mk.beta_star},
              {"beta_opt", mk.beta_opt},
              {"beta_tilde", mk.beta_tilde}};
  return b;
}

std::vector<SpectralBound> estimate_bounds(const AnalyticQCMap& map,
                                           double beta, int n_quad) {
  std::vector<SpectralBound> out;
  out.push_back(lower_bound_thm47(map));
  out.push_back(lower_bound_thm51(map, beta, n_quad));
  out.push_back(payne_weinberger(map.domain, map.ellipticity_K, true));
  if (std::abs(map.ellipticity_K - 1.0) < 1e-12)
    out.push_back(payne_weinberger(map.domain, 1.0, false));
  out.push_back(quasidisc_bound(map));
  return out;
}

}  // namespace qcn
