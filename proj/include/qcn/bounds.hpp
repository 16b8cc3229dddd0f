#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcn/qcmaps.hpp"

namespace qcn {

struct BetaRegularityReport {
  double beta = 0.0;
  double integral = 0.0;  // integral over the disc of |J(w,phi^{-1})|^beta
  double norm = 0.0;      // beta-th root of the integral
  double quadrature_error_estimate = 0.0;  // relative, from 2x refinement
};

enum class BoundKind {
  thm51_beta,
  thm47_inf,
  payne_weinberger,
  classical_elliptic,
  quasidisc_MK,
};

const char* bound_kind_name(BoundKind kind);

// A lower bound for the first nontrivial Neumann eigenvalue. `value` is the
// linear bound (0 when it underflows); log10_value is always finite.
struct SpectralBound {
  BoundKind kind = BoundKind::thm47_inf;
  double value = 0.0;
  double log10_value = 0.0;
  bool applicable = true;
  std::string note;
  std::map<std::string, double> inputs;
};

// Upper estimate (pi/2)^{(2-r)/(2r)} (r+2)^{(r+2)/(2r)} of the (r,2)
// Poincare-Sobolev constant of the unit disc, r >= 1.
double poincare_constant_upper(double r);

// Exact disc constant for r = 2: B_{2,2} = 1/j'_{1,1}.
double poincare_constant_disc_l2();

// L^beta norm of |J(w,phi^{-1})| over the disc by tensor quadrature with a
// 2x Richardson refinement; throws quadrature_divergence when refinement
// grows the integral by more than 10%.
BetaRegularityReport beta_norm(const AnalyticQCMap& map, double beta,
                               int n_quad);

// value = [ 4 pi^{-1/beta} ((2b-1)/(b-1))^{(2b-1)/b} ||J||_beta ]^{-1}.
SpectralBound lower_bound_thm51(const AnalyticQCMap& map, double beta,
                                int n_quad);

// value = j'_{1,1}^2 / ess sup |J(w,phi^{-1})|.
SpectralBound lower_bound_thm47(const AnalyticQCMap& map);

// Pure Payne-Weinberger pi^2/d^2 (elliptic_variant=false) or its uniform
// ellipticity version pi^2/(K d^2). Marked inapplicable on nonconvex domains.
SpectralBound payne_weinberger(const DomainSpec& domain, double k,
                               bool elliptic_variant);

// Embedding constant of the (s,2) Poincare-Sobolev inequality on a
// beta-regular domain: B_{beta s/(beta-1),2} * ||J||_beta^{1/s}.
double embedding_constant_thm43(const AnalyticQCMap& map, double s,
                                double beta, int n_quad);

// log nu(beta) = log[ 10^{8 beta} (2b-2)/(2b-1) (24 pi^2 K_eff)^{2 beta} ].
double log_nu(double beta, double k_eff);

// Same with beta = 1 + u passed as the shift u, stable for u below the
// rounding resolution of doubles near 1.
double log_nu_shifted(double beta_minus_1, double k_eff);

// log10 of C_kappa^2 K_eff pi^{1/kappa-1}/4 * exp(K_eff pi^2(2+pi^2)^2 /
// (2 log 3)), with K_eff = K or K^2 (reflected). All factors in log space.
double inverse_holder_log10(double kappa, double k, bool reflected);

struct QuasidiscConstant {
  double log10_M = 0.0;
  double beta_star = 0.0;
  double beta_opt = 0.0;
  double beta_tilde = 0.0;
  // The roots sit within ~1e-13 of 1, below double resolution when stored as
  // beta itself; the shifts carry the full precision.
  double beta_tilde_minus_1 = 0.0;
  double beta_opt_minus_1 = 0.0;
};

// The quasidisc constant M(K); reported in log10 only (it underflows by
// construction). Also returns the optimizing beta and the root of nu = 1.
QuasidiscConstant quasidisc_mk(double k);

// Dense-grid evaluation of log10 M(K) for cross-checks (n points over the
// same log-transformed bracket the optimizer uses).
double quasidisc_mk_grid(double k, int n_points);

// mu_1 lower bound M(K)/|Omega| for the map's domain.
SpectralBound quasidisc_bound(const AnalyticQCMap& map);

// The bound table the CLI reports: thm47, thm51(beta), classical elliptic
// Payne-Weinberger, pure PW when K = 1, and the quasidisc constant.
std::vector<SpectralBound> estimate_bounds(const AnalyticQCMap& map,
                                           double beta, int n_quad);

}  // namespace qcn
