/* C interface of the qcneumann library: Neumann eigenvalue lower bounds for
 * planar divergence-form elliptic operators via quasiconformal maps, with a
 * P1 finite-element verification engine.
 *
 * All functions return a qcn_status code (QCN_OK on success) unless noted.
 * Out-parameters are written only on success. Handles are opaque and freed
 * with the matching *_free function. qcn_last_error() returns a thread-local
 * description of the most recent failure.
 */
#ifndef QCNEUMANN_H
#define QCNEUMANN_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qcn_status {
  QCN_OK = 0,
  QCN_ERR_INVALID_PARAMS = 1,
  QCN_ERR_NON_ELLIPTIC = 2,
  QCN_ERR_DEGENERATE_DILATATION = 3,
  QCN_ERR_OUTSIDE_DISC = 4,
  QCN_ERR_NOT_MEASURE_PRESERVING = 5,
  QCN_ERR_QUADRATURE_DIVERGENCE = 6,
  QCN_ERR_NOT_INF_REGULAR = 7,
  QCN_ERR_NU_EXCEEDS_ONE = 8,
  QCN_ERR_KAPPA_OUT_OF_RANGE = 9,
  QCN_ERR_NO_FEASIBLE_BETA = 10,
  QCN_ERR_DEGENERATE_BOUNDARY = 11,
  QCN_ERR_INVALID_RESOLUTION = 12,
  QCN_ERR_SOLVER_NO_CONVERGENCE = 13,
  QCN_ERR_INDEFINITE_MASS = 14,
  QCN_ERR_NON_CONVEX_DOMAIN = 15,
  QCN_ERR_UNKNOWN_MAP = 16,
  QCN_ERR_BAD_INPUT = 17,
  QCN_ERR_IO = 18,
  QCN_ERR_INTERNAL = 99
} qcn_status;

typedef struct qcn_map qcn_map;
typedef struct qcn_matrix qcn_matrix;
typedef struct qcn_mesh qcn_mesh;
typedef struct qcn_report qcn_report;

const char* qcn_status_name(int status);
const char* qcn_last_error(void);
const char* qcn_version(void);
int qcn_set_threads(int n);
double qcn_j1prime_zero(void);

/* ---- dilatation algebra ------------------------------------------------ */
int qcn_mu_from_matrix(double a11, double a12, double a22, double* mu_re,
                       double* mu_im);
int qcn_matrix_from_mu(double mu_re, double mu_im, double* a11, double* a12,
                       double* a22);
int qcn_ellipticity_from_mu(double sup_abs, double* k);
int qcn_mu_roundtrip_residual(double mu_re, double mu_im, double* residual);

/* ---- quasiconformal example maps --------------------------------------- */
/* spec: "ellipse:a=2,b=1" | "rose_petal" | "cusp" | "shear:fprime=const1,a=1"
 * | "disc" */
int qcn_map_create(const char* spec, qcn_map** out);
void qcn_map_free(qcn_map* map);
const char* qcn_map_id(const qcn_map* map);
int qcn_map_ellipticity(const qcn_map* map, double* k);
int qcn_map_apply(const qcn_map* map, double zx, double zy, double* wx,
                  double* wy);
int qcn_map_wirtinger(const qcn_map* map, double zx, double zy, double* dz_re,
                      double* dz_im, double* dzb_re, double* dzb_im);
int qcn_map_jacobian(const qcn_map* map, double zx, double zy, double* j);
int qcn_map_mu(const qcn_map* map, double zx, double zy, double* mu_re,
               double* mu_im);
int qcn_map_inverse(const qcn_map* map, double wx, double wy, double* zx,
                    double* zy);
int qcn_map_inverse_dilatation(const qcn_map* map, double wx, double wy,
                               double* mu_re, double* mu_im);
int qcn_map_bilipschitz_max(const qcn_map* map, int n_samples,
                            unsigned int seed, double* max_ratio);
int qcn_map_domain_area(const qcn_map* map, double* area);
int qcn_map_domain_diameter(const qcn_map* map, double* diameter);
int qcn_map_domain_convex(const qcn_map* map, int* convex);
int qcn_map_domain_rho(const qcn_map* map, double theta, double* rho);

/* ---- matrix fields ------------------------------------------------------ */
/* {"kind":"constant","a11":..,"a12":..,"a22":..} or
 * {"kind":"from_map","map":"<map-id>"} */
int qcn_matrix_create_json(const char* json_text, qcn_matrix** out);
int qcn_matrix_create_from_map(const qcn_map* map, qcn_matrix** out);
void qcn_matrix_free(qcn_matrix* a);
int qcn_matrix_eval(const qcn_matrix* a, double zx, double zy, double* a11,
                    double* a12, double* a22);
int qcn_matrix_ellipticity(const qcn_matrix* a, double* k);

/* ---- eigenvalue lower bounds ------------------------------------------- */
int qcn_poincare_constant_upper(double r, double* value);
int qcn_beta_norm(const qcn_map* map, double beta, int n_quad, double* norm,
                  double* quad_err);
int qcn_bound_thm51(const qcn_map* map, double beta, int n_quad,
                    double* value);
int qcn_bound_thm47(const qcn_map* map, double* value);
int qcn_bound_payne_weinberger(const qcn_map* map, int elliptic_variant,
                               double* value, int* applicable);
int qcn_inverse_holder_log10(double kappa, double k, int reflected,
                             double* log10_value);
int qcn_quasidisc_mk(double k, double* log10_m, double* beta_star,
                     double* beta_opt, double* beta_tilde);
int qcn_bound_quasidisc_log10(const qcn_map* map, double* log10_value,
                              int* applicable);
/* Bound table as a JSON report ({"map":..,"bounds":[..]}). */
int qcn_estimate(const qcn_map* map, double beta, int n_quad,
                 qcn_report** out);

/* ---- finite elements ----------------------------------------------------*/
int qcn_mesh_create(const qcn_map* map, int n_radial, int n_angular,
                    qcn_mesh** out);
void qcn_mesh_free(qcn_mesh* mesh);
int qcn_mesh_counts(const qcn_mesh* mesh, int* nv, int* nt);
int qcn_mesh_h_max(const qcn_mesh* mesh, double* h);
int qcn_mesh_area(const qcn_mesh* mesh, double* area);
int qcn_mesh_save(const qcn_mesh* mesh, const char* path);
int qcn_mesh_load(const char* path, qcn_mesh** out);

/* Eigensolve on an existing mesh; report carries mu_0..mu_{m-1}. */
int qcn_solve(const qcn_map* map, const qcn_mesh* mesh, int m_eigs,
              unsigned int seed, qcn_report** out);
/* Full verification: nested meshes, convergence slope, bound table and
 * dominance check at the 2% budget. */
int qcn_verify(const qcn_map* map, int n_radial, int n_angular, int m_eigs,
               unsigned int seed, int refinements, double beta, int n_quad,
               qcn_report** out);

void qcn_report_free(qcn_report* report);
int qcn_report_mu_count(const qcn_report* report);
int qcn_report_mu(const qcn_report* report, int index, double* mu);
int qcn_report_mu1(const qcn_report* report, double* mu1);
int qcn_report_violation_count(const qcn_report* report);
/* Serialized JSON; the pointer stays valid until the report is freed. */
const char* qcn_report_json(const qcn_report* report);

/* ---- quadrature identities ----------------------------------------------*/
int qcn_test_function_count(void);
const char* qcn_test_function_name(int id);
int qcn_isometry_check(const qcn_map* map, int test_fn, int n_quad,
                       double* lhs, double* rhs, double* rel_err);
int qcn_poincare_check(const qcn_map* map, double r, int test_fn, int n_quad,
                       double* lhs, double* rhs, double* margin);

#ifdef __cplusplus
}
#endif

#endif /* QCNEUMANN_H */
