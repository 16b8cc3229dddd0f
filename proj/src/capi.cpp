#include "qcneumann.h"

#include <cmath>
#include <cstring>
#include <json.hpp>
#include <string>

#include "qcn/bounds.hpp"
#include "qcn/dilatation.hpp"
#include "qcn/fem.hpp"
#include "qcn/mesh.hpp"
#include "qcn/parallel.hpp"
#include "qcn/qcmaps.hpp"
#include "qcn/special.hpp"
#include "qcn/testfns.hpp"

struct qcn_map {
  qcn::AnalyticQCMap map;
};

struct qcn_matrix {
  qcn::MatrixField field;
};

struct qcn_mesh {
  qcn::Mesh mesh;
};

struct qcn_report {
  qcn::SpectralReport report;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

int map_code(qcn::errc code) {
  using qcn::errc;
  switch (code) {
    case errc::ok: return QCN_OK;
    case errc::invalid_params: return QCN_ERR_INVALID_PARAMS;
    case errc::non_elliptic: return QCN_ERR_NON_ELLIPTIC;
    case errc::degenerate_dilatation: return QCN_ERR_DEGENERATE_DILATATION;
    case errc::outside_disc: return QCN_ERR_OUTSIDE_DISC;
    case errc::not_measure_preserving: return QCN_ERR_NOT_MEASURE_PRESERVING;
    case errc::quadrature_divergence: return QCN_ERR_QUADRATURE_DIVERGENCE;
    case errc::not_inf_regular: return QCN_ERR_NOT_INF_REGULAR;
    case errc::nu_exceeds_one: return QCN_ERR_NU_EXCEEDS_ONE;
    case errc::kappa_out_of_range: return QCN_ERR_KAPPA_OUT_OF_RANGE;
    case errc::no_feasible_beta: return QCN_ERR_NO_FEASIBLE_BETA;
    case errc::degenerate_boundary: return QCN_ERR_DEGENERATE_BOUNDARY;
    case errc::invalid_resolution: return QCN_ERR_INVALID_RESOLUTION;
    case errc::solver_no_convergence: return QCN_ERR_SOLVER_NO_CONVERGENCE;
    case errc::indefinite_mass: return QCN_ERR_INDEFINITE_MASS;
    case errc::non_convex_domain: return QCN_ERR_NON_CONVEX_DOMAIN;
    case errc::unknown_map: return QCN_ERR_UNKNOWN_MAP;
    case errc::bad_input: return QCN_ERR_BAD_INPUT;
    case errc::io_error: return QCN_ERR_IO;
  }
  return QCN_ERR_INTERNAL;
}

template <typename Fn>
int guard(Fn&& fn) {
  try {
    fn();
    return QCN_OK;
  } catch (const qcn::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QCN_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return QCN_ERR_INTERNAL;
  }
}

int require(bool ok, const char* what) {
  if (ok) return QCN_OK;
  g_last_error = what;
  return QCN_ERR_INVALID_PARAMS;
}

nlohmann::ordered_json bounds_json(const qcn::AnalyticQCMap& map,
                                   const std::vector<qcn::SpectralBound>& bounds) {
  nlohmann::ordered_json out;
  out["map"] = map.id;
  auto arr = nlohmann::ordered_json::array();
  // The largest applicable linear bound wins the "best" flag.
  int best = -1;
  for (size_t i = 0; i < bounds.size(); ++i) {
    if (!bounds[i].applicable) continue;
    if (best < 0 ||
        bounds[i].log10_value > bounds[static_cast<size_t>(best)].log10_value)
      best = static_cast<int>(i);
  }
  for (size_t i = 0; i < bounds.size(); ++i) {
    const qcn::SpectralBound& b = bounds[i];
    nlohmann::ordered_json j;
    j["kind"] = qcn::bound_kind_name(b.kind);
    j["value"] = b.value;
    j["log10_value"] = b.log10_value;
    j["applicable"] = b.applicable;
    j["best"] = static_cast<int>(i) == best;
    if (!b.note.empty()) j["note"] = b.note;
    nlohmann::ordered_json inputs;
    for (const auto& [key, value] : b.inputs) inputs[key] = value;
    j["inputs"] = inputs;
    arr.push_back(j);
  }
  out["bounds"] = arr;
  return out;
}

}  // namespace

extern "C" {

const char* qcn_status_name(int status) {
  switch (status) {
    case QCN_OK: return "ok";
    case QCN_ERR_INVALID_PARAMS: return "invalid_params";
    case QCN_ERR_NON_ELLIPTIC: return "non_elliptic";
    case QCN_ERR_DEGENERATE_DILATATION: return "degenerate_dilatation";
    case QCN_ERR_OUTSIDE_DISC: return "outside_disc";
    case QCN_ERR_NOT_MEASURE_PRESERVING: return "not_measure_preserving";
    case QCN_ERR_QUADRATURE_DIVERGENCE: return "quadrature_divergence";
    case QCN_ERR_NOT_INF_REGULAR: return "not_inf_regular";
    case QCN_ERR_NU_EXCEEDS_ONE: return "nu_exceeds_one";
    case QCN_ERR_KAPPA_OUT_OF_RANGE: return "kappa_out_of_range";
    case QCN_ERR_NO_FEASIBLE_BETA: return "no_feasible_beta";
    case QCN_ERR_DEGENERATE_BOUNDARY: return "degenerate_boundary";
    case QCN_ERR_INVALID_RESOLUTION: return "invalid_resolution";
    case QCN_ERR_SOLVER_NO_CONVERGENCE: return "solver_no_convergence";
    case QCN_ERR_INDEFINITE_MASS: return "indefinite_mass";
    case QCN_ERR_NON_CONVEX_DOMAIN: return "non_convex_domain";
    case QCN_ERR_UNKNOWN_MAP: return "unknown_map";
    case QCN_ERR_BAD_INPUT: return "bad_input";
    case QCN_ERR_IO: return "io_error";
    default: return "internal_error";
  }
}

const char* qcn_last_error(void) { return g_last_error.c_str(); }

const char* qcn_version(void) { return "0.1.0"; }

int qcn_set_threads(int n) {
  return guard([&] { qcn::set_thread_count(n); });
}

double qcn_j1prime_zero(void) { return qcn::kJ1PrimeZero1; }

/* ---- dilatation algebra ------------------------------------------------ */

int qcn_mu_from_matrix(double a11, double a12, double a22, double* mu_re,
                       double* mu_im) {
  if (int rc = require(mu_re && mu_im, "null output pointer")) return rc;
  return guard([&] {
    const qcn::complexd mu = qcn::mu_from_entries({a11, a12, a22});
    *mu_re = mu.real();
    *mu_im = mu.imag();
  });
}

int qcn_matrix_from_mu(double mu_re, double mu_im, double* a11, double* a12,
                       double* a22) {
  if (int rc = require(a11 && a12 && a22, "null output pointer")) return rc;
  return guard([&] {
    const qcn::MatrixEntries e = qcn::matrix_from_mu({mu_re, mu_im});
    *a11 = e.a11;
    *a12 = e.a12;
    *a22 = e.a22;
  });
}

int qcn_ellipticity_from_mu(double sup_abs, double* k) {
  if (int rc = require(k != nullptr, "null output pointer")) return rc;
  return guard([&] { *k = qcn::ellipticity_from_mu(sup_abs); });
}

int qcn_mu_roundtrip_residual(double mu_re, double mu_im, double* residual) {
  if (int rc = require(residual != nullptr, "null output pointer")) return rc;
  return guard([&] { *residual = qcn::roundtrip_residual({mu_re, mu_im}); });
}

/* ---- maps ---------------------------------------------------------------*/

int qcn_map_create(const char* spec, qcn_map** out) {
  if (int rc = require(spec && out, "null argument")) return rc;
  return guard([&] { *out = new qcn_map{qcn::make_map(spec)}; });
}

void qcn_map_free(qcn_map* map) { delete map; }

const char* qcn_map_id(const qcn_map* map) {
  return map ? map->map.id.c_str() : "";
}

int qcn_map_ellipticity(const qcn_map* map, double* k) {
  if (int rc = require(map && k, "null argument")) return rc;
  *k = map->map.ellipticity_K;
  return QCN_OK;
}

int qcn_map_apply(const qcn_map* map, double zx, double zy, double* wx,
                  double* wy) {
  if (int rc = require(map && wx && wy, "null argument")) return rc;
  return guard([&] {
    const qcn::complexd w = map->map.phi({zx, zy});
    *wx = w.real();
    *wy = w.imag();
  });
}

int qcn_map_wirtinger(const qcn_map* map, double zx, double zy, double* dz_re,
                      double* dz_im, double* dzb_re, double* dzb_im) {
  if (int rc = require(map && dz_re && dz_im && dzb_re && dzb_im,
                       "null argument"))
    return rc;
  return guard([&] {
    const qcn::complexd dz = map->map.phi_z({zx, zy});
    const qcn::complexd dzb = map->map.phi_zbar({zx, zy});
    *dz_re = dz.real();
    *dz_im = dz.imag();
    *dzb_re = dzb.real();
    *dzb_im = dzb.imag();
  });
}

int qcn_map_jacobian(const qcn_map* map, double zx, double zy, double* j) {
  if (int rc = require(map && j, "null argument")) return rc;
  return guard([&] { *j = map->map.jacobian({zx, zy}); });
}

int qcn_map_mu(const qcn_map* map, double zx, double zy, double* mu_re,
               double* mu_im) {
  if (int rc = require(map && mu_re && mu_im, "null argument")) return rc;
  return guard([&] {
    const qcn::complexd mu = map->map.mu({zx, zy});
    *mu_re = mu.real();
    *mu_im = mu.imag();
  });
}

int qcn_map_inverse(const qcn_map* map, double wx, double wy, double* zx,
                    double* zy) {
  if (int rc = require(map && zx && zy, "null argument")) return rc;
  return guard([&] {
    const qcn::complexd z = map->map.inverse({wx, wy});
    *zx = z.real();
    *zy = z.imag();
  });
}

int qcn_map_inverse_dilatation(const qcn_map* map, double wx, double wy,
                               double* mu_re, double* mu_im) {
  if (int rc = require(map && mu_re && mu_im, "null argument")) return rc;
  return guard([&] {
    const qcn::complexd mu = qcn::inverse_dilatation(map->map, {wx, wy});
    *mu_re = mu.real();
    *mu_im = mu.imag();
  });
}

int qcn_map_bilipschitz_max(const qcn_map* map, int n_samples,
                            unsigned int seed, double* max_ratio) {
  if (int rc = require(map && max_ratio, "null argument")) return rc;
  if (int rc = require(n_samples > 0, "n_samples must be positive")) return rc;
  return guard([&] {
    const auto samples = qcn::sample_interior(map->map, n_samples, seed);
    *max_ratio = qcn::bilipschitz_check(map->map, samples);
  });
}

int qcn_map_domain_area(const qcn_map* map, double* area) {
  if (int rc = require(map && area, "null argument")) return rc;
  *area = map->map.domain.area();
  return QCN_OK;
}

int qcn_map_domain_diameter(const qcn_map* map, double* diameter) {
  if (int rc = require(map && diameter, "null argument")) return rc;
  *diameter = map->map.domain.diameter();
  return QCN_OK;
}

int qcn_map_domain_convex(const qcn_map* map, int* convex) {
  if (int rc = require(map && convex, "null argument")) return rc;
  *convex = map->map.domain.convex() ? 1 : 0;
  return QCN_OK;
}

int qcn_map_domain_rho(const qcn_map* map, double theta, double* rho) {
  if (int rc = require(map && rho, "null argument")) return rc;
  return guard([&] { *rho = map->map.domain.rho(theta); });
}

/* ---- matrix fields ------------------------------------------------------*/

int qcn_matrix_create_json(const char* json_text, qcn_matrix** out) {
  if (int rc = require(json_text && out, "null argument")) return rc;
  return guard(
      [&] { *out = new qcn_matrix{qcn::MatrixField::from_json(json_text)}; });
}

int qcn_matrix_create_from_map(const qcn_map* map, qcn_matrix** out) {
  if (int rc = require(map && out, "null argument")) return rc;
  return guard([&] { *out = new qcn_matrix{map->map.matrix()}; });
}

void qcn_matrix_free(qcn_matrix* a) { delete a; }

int qcn_matrix_eval(const qcn_matrix* a, double zx, double zy, double* a11,
                    double* a12, double* a22) {
  if (int rc = require(a && a11 && a12 && a22, "null argument")) return rc;
  return guard([&] {
    const qcn::MatrixEntries e = a->field.at({zx, zy});
    *a11 = e.a11;
    *a12 = e.a12;
    *a22 = e.a22;
  });
}

int qcn_matrix_ellipticity(const qcn_matrix* a, double* k) {
  if (int rc = require(a && k, "null argument")) return rc;
  *k = a->field.ellipticity();
  return QCN_OK;
}

/* ---- bounds --------------------------------------------------------------*/

int qcn_poincare_constant_upper(double r, double* value) {
  if (int rc = require(value != nullptr, "null output pointer")) return rc;
  return guard([&] { *value = qcn::poincare_constant_upper(r); });
}

int qcn_beta_norm(const qcn_map* map, double beta, int n_quad, double* norm,
                  double* quad_err) {
  if (int rc = require(map && norm, "null argument")) return rc;
  return guard([&] {
    const qcn::BetaRegularityReport rep =
        qcn::beta_norm(map->map, beta, n_quad);
    *norm = rep.norm;
    if (quad_err) *quad_err = rep.quadrature_error_estimate;
  });
}

int qcn_bound_thm51(const qcn_map* map, double beta, int n_quad,
                    double* value) {
  if (int rc = require(map && value, "null argument")) return rc;
  return guard(
      [&] { *value = qcn::lower_bound_thm51(map->map, beta, n_quad).value; });
}

int qcn_bound_thm47(const qcn_map* map, double* value) {
  if (int rc = require(map && value, "null argument")) return rc;
  return guard([&] { *value = qcn::lower_bound_thm47(map->map).value; });
}

int qcn_bound_payne_weinberger(const qcn_map* map, int elliptic_variant,
                               double* value, int* applicable) {
  if (int rc = require(map && value, "null argument")) return rc;
  return guard([&] {
    const qcn::SpectralBound b = qcn::payne_weinberger(
        map->map.domain, map->map.ellipticity_K, elliptic_variant != 0);
    *value = b.value;
    if (applicable) *applicable = b.applicable ? 1 : 0;
  });
}

int qcn_inverse_holder_log10(double kappa, double k, int reflected,
                             double* log10_value) {
  if (int rc = require(log10_value != nullptr, "null output pointer")) return rc;
  return guard(
      [&] { *log10_value = qcn::inverse_holder_log10(kappa, k, reflected != 0); });
}

int qcn_quasidisc_mk(double k, double* log10_m, double* beta_star,
                     double* beta_opt, double* beta_tilde) {
  if (int rc = require(log10_m != nullptr, "null output pointer")) return rc;
  return guard([&] {
    const qcn::QuasidiscConstant mk = qcn::quasidisc_mk(k);
    *log10_m = mk.log10_M;
    if (beta_star) *beta_star = mk.beta_star;
    if (beta_opt) *beta_opt = mk.beta_opt;
    if (beta_tilde) *beta_tilde = mk.beta_tilde;
  });
}

int qcn_bound_quasidisc_log10(const qcn_map* map, double* log10_value,
                              int* applicable) {
  if (int rc = require(map && log10_value, "null argument")) return rc;
  return guard([&] {
    const qcn::SpectralBound b = qcn::quasidisc_bound(map->map);
    *log10_value = b.log10_value;
    if (applicable) *applicable = b.applicable ? 1 : 0;
  });
}

int qcn_estimate(const qcn_map* map, double beta, int n_quad,
                 qcn_report** out) {
  if (int rc = require(map && out, "null argument")) return rc;
  return guard([&] {
    auto* rep = new qcn_report;
    rep->report.map_id = map->map.id;
    rep->report.bounds = qcn::estimate_bounds(map->map, beta, n_quad);
    rep->json = bounds_json(map->map, rep->report.bounds).dump(2) + "\n";
    *out = rep;
  });
}

/* ---- finite elements -----------------------------------------------------*/

int qcn_mesh_create(const qcn_map* map, int n_radial, int n_angular,
                    qcn_mesh** out) {
  if (int rc = require(map && out, "null argument")) return rc;
  return guard([&] {
    *out = new qcn_mesh{
        qcn::mesh_star_domain(map->map.domain, n_radial, n_angular)};
  });
}

void qcn_mesh_free(qcn_mesh* mesh) { delete mesh; }

int qcn_mesh_counts(const qcn_mesh* mesh, int* nv, int* nt) {
  if (int rc = require(mesh != nullptr, "null mesh")) return rc;
  if (nv) *nv = mesh->mesh.n_vertices();
  if (nt) *nt = mesh->mesh.n_triangles();
  return QCN_OK;
}

int qcn_mesh_h_max(const qcn_mesh* mesh, double* h) {
  if (int rc = require(mesh && h, "null argument")) return rc;
  *h = mesh->mesh.h_max;
  return QCN_OK;
}

int qcn_mesh_area(const qcn_mesh* mesh, double* area) {
  if (int rc = require(mesh && area, "null argument")) return rc;
  *area = mesh->mesh.area();
  return QCN_OK;
}

int qcn_mesh_save(const qcn_mesh* mesh, const char* path) {
  if (int rc = require(mesh && path, "null argument")) return rc;
  return guard([&] { qcn::write_mesh(mesh->mesh, path); });
}

int qcn_mesh_load(const char* path, qcn_mesh** out) {
  if (int rc = require(path && out, "null argument")) return rc;
  return guard([&] { *out = new qcn_mesh{qcn::read_mesh(path)}; });
}

int qcn_solve(const qcn_map* map, const qcn_mesh* mesh, int m_eigs,
              unsigned int seed, qcn_report** out) {
  if (int rc = require(map && mesh && out, "null argument")) return rc;
  return guard([&] {
    const qcn::AssembledSystem sys =
        qcn::assemble(mesh->mesh, map->map.matrix());
    auto* rep = new qcn_report;
    rep->report = qcn::neumann_mu1(sys, m_eigs, seed);
    rep->report.map_id = map->map.id;
    rep->report.mesh_h = mesh->mesh.h_max;
    rep->json = rep->report.to_json();
    *out = rep;
  });
}

int qcn_verify(const qcn_map* map, int n_radial, int n_angular, int m_eigs,
               unsigned int seed, int refinements, double beta, int n_quad,
               qcn_report** out) {
  if (int rc = require(map && out, "null argument")) return rc;
  return guard([&] {
    qcn::VerifyOptions opt;
    opt.n_radial = n_radial;
    opt.n_angular = n_angular;
    opt.m_eigs = m_eigs;
    opt.seed = seed;
    opt.refinements = refinements;
    opt.beta = beta;
    opt.n_quad = n_quad;
    auto* rep = new qcn_report;
    rep->report = qcn::verify_map(map->map, opt);
    rep->json = rep->report.to_json();
    *out = rep;
  });
}

void qcn_report_free(qcn_report* report) { delete report; }

int qcn_report_mu_count(const qcn_report* report) {
  return report ? static_cast<int>(report->report.mu_sequence.size()) : 0;
}

int qcn_report_mu(const qcn_report* report, int index, double* mu) {
  if (int rc = require(report && mu, "null argument")) return rc;
  if (index < 0 ||
      index >= static_cast<int>(report->report.mu_sequence.size())) {
    g_last_error = "eigenvalue index out of range";
    return QCN_ERR_INVALID_PARAMS;
  }
  *mu = report->report.mu_sequence[static_cast<size_t>(index)];
  return QCN_OK;
}

int qcn_report_mu1(const qcn_report* report, double* mu1) {
  if (int rc = require(report && mu1, "null argument")) return rc;
  *mu1 = report->report.mu1_fem;
  return QCN_OK;
}

int qcn_report_violation_count(const qcn_report* report) {
  return report ? static_cast<int>(report->report.violations.size()) : 0;
}

const char* qcn_report_json(const qcn_report* report) {
  return report ? report->json.c_str() : "";
}

/* ---- quadrature identities ------------------------------------------------*/

int qcn_test_function_count(void) { return qcn::test_function_count(); }

const char* qcn_test_function_name(int id) {
  if (id < 0 || id >= qcn::test_function_count()) return "";
  return qcn::test_function(id).name;
}

int qcn_isometry_check(const qcn_map* map, int test_fn, int n_quad,
                       double* lhs, double* rhs, double* rel_err) {
  if (int rc = require(map && lhs && rhs && rel_err, "null argument"))
    return rc;
  return guard([&] {
    const qcn::IsometryResult res =
        qcn::isometry_check(map->map, test_fn, n_quad);
    *lhs = res.lhs;
    *rhs = res.rhs;
    *rel_err = res.rel_err;
  });
}

int qcn_poincare_check(const qcn_map* map, double r, int test_fn, int n_quad,
                       double* lhs, double* rhs, double* margin) {
  if (int rc = require(map && lhs && rhs && margin, "null argument")) return rc;
  return guard([&] {
    const qcn::PoincareResult res =
        qcn::weighted_poincare_check(map->map, r, test_fn, n_quad);
    *lhs = res.lhs;
    *rhs = res.rhs;
    *margin = res.margin;
  });
}

}  // extern "C"
