#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "qcneumann.h"

TEST_CASE("dilatation algebra through the C interface") {
  double re = 0, im = 0;
  REQUIRE(qcn_mu_from_matrix(3.0, 0.0, 1.0 / 3.0, &re, &im) == QCN_OK);
  CHECK(re == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(im == doctest::Approx(0.0));

  double a11 = 0, a12 = 0, a22 = 0;
  REQUIRE(qcn_matrix_from_mu(-0.5, 0.0, &a11, &a12, &a22) == QCN_OK);
  CHECK(a11 == doctest::Approx(3.0).epsilon(1e-14));

  double k = 0;
  REQUIRE(qcn_ellipticity_from_mu(0.5, &k) == QCN_OK);
  CHECK(k == doctest::Approx(3.0));

  double res = 0;
  REQUIRE(qcn_mu_roundtrip_residual(0.3, 0.4, &res) == QCN_OK);
  CHECK(res <= 1e-12);

  CHECK(qcn_matrix_from_mu(1.0, 0.0, &a11, &a12, &a22) ==
        QCN_ERR_DEGENERATE_DILATATION);
  CHECK(std::strlen(qcn_last_error()) > 0);
  CHECK(qcn_mu_from_matrix(2.0, 0.0, 1.0, &re, &im) == QCN_ERR_NON_ELLIPTIC);
  CHECK(std::string(qcn_status_name(QCN_ERR_NON_ELLIPTIC)) == "non_elliptic");
}

TEST_CASE("map lifecycle and pointwise evaluation") {
  qcn_map* map = nullptr;
  REQUIRE(qcn_map_create("ellipse:a=2,b=1", &map) == QCN_OK);
  REQUIRE(map != nullptr);
  CHECK(std::string(qcn_map_id(map)) == "ellipse:a=2,b=1");

  double k = 0;
  CHECK(qcn_map_ellipticity(map, &k) == QCN_OK);
  CHECK(k == doctest::Approx(3.0).epsilon(1e-13));

  double wx = 0, wy = 0;
  CHECK(qcn_map_apply(map, 3.0, 0.0, &wx, &wy) == QCN_OK);
  CHECK(wx == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(wy == doctest::Approx(0.0));

  double dzr = 0, dzi = 0, dzbr = 0, dzbi = 0;
  CHECK(qcn_map_wirtinger(map, 0.5, 0.5, &dzr, &dzi, &dzbr, &dzbi) == QCN_OK);
  CHECK(dzr == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(dzbr == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));

  double j = 0;
  CHECK(qcn_map_jacobian(map, 0.1, 0.2, &j) == QCN_OK);
  CHECK(j == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  double mre = 0, mim = 0;
  CHECK(qcn_map_mu(map, 0.4, -0.1, &mre, &mim) == QCN_OK);
  CHECK(mre == doctest::Approx(-0.5).epsilon(1e-14));

  double zx = 0, zy = 0;
  CHECK(qcn_map_inverse(map, 0.5, 0.25, &zx, &zy) == QCN_OK);
  double wx2 = 0, wy2 = 0;
  CHECK(qcn_map_apply(map, zx, zy, &wx2, &wy2) == QCN_OK);
  CHECK(wx2 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(wy2 == doctest::Approx(0.25).epsilon(1e-12));

  CHECK(qcn_map_inverse_dilatation(map, 0.2, 0.0, &mre, &mim) == QCN_OK);
  CHECK(mre == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(qcn_map_inverse_dilatation(map, 2.0, 0.0, &mre, &mim) ==
        QCN_ERR_OUTSIDE_DISC);

  double area = 0, diameter = 0, rho = 0;
  int convex = 0;
  CHECK(qcn_map_domain_area(map, &area) == QCN_OK);
  CHECK(area == doctest::Approx(3.0 * 3.14159265358979).epsilon(1e-10));
  CHECK(qcn_map_domain_diameter(map, &diameter) == QCN_OK);
  CHECK(diameter == doctest::Approx(6.0));
  CHECK(qcn_map_domain_convex(map, &convex) == QCN_OK);
  CHECK(convex == 1);
  CHECK(qcn_map_domain_rho(map, 0.0, &rho) == QCN_OK);
  CHECK(rho == doctest::Approx(3.0));

  qcn_map_free(map);

  qcn_map* bad = nullptr;
  CHECK(qcn_map_create("heptagon", &bad) == QCN_ERR_UNKNOWN_MAP);
  CHECK(bad == nullptr);
}

TEST_CASE("bilipschitz through the C interface") {
  qcn_map* petal = nullptr;
  REQUIRE(qcn_map_create("rose_petal", &petal) == QCN_OK);
  double ratio = 0;
  REQUIRE(qcn_map_bilipschitz_max(petal, 250, 11u, &ratio) == QCN_OK);
  CHECK(ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  qcn_map_free(petal);

  qcn_map* ell = nullptr;
  REQUIRE(qcn_map_create("ellipse:a=2,b=1", &ell) == QCN_OK);
  CHECK(qcn_map_bilipschitz_max(ell, 10, 11u, &ratio) ==
        QCN_ERR_NOT_MEASURE_PRESERVING);
  qcn_map_free(ell);
}

TEST_CASE("matrix fields from JSON") {
  qcn_matrix* a = nullptr;
  REQUIRE(qcn_matrix_create_json(
              R"({"kind":"constant","a11":3,"a12":0,"a22":0.3333333333333333})",
              &a) == QCN_OK);
  double a11 = 0, a12 = 0, a22 = 0, k = 0;
  CHECK(qcn_matrix_eval(a, 0.0, 0.0, &a11, &a12, &a22) == QCN_OK);
  CHECK(a11 == doctest::Approx(3.0));
  CHECK(qcn_matrix_ellipticity(a, &k) == QCN_OK);
  CHECK(k == doctest::Approx(3.0).epsilon(1e-10));
  qcn_matrix_free(a);

  qcn_matrix* from_map = nullptr;
  REQUIRE(qcn_matrix_create_json(R"({"kind":"from_map","map":"rose_petal"})",
                                 &from_map) == QCN_OK);
  CHECK(qcn_matrix_eval(from_map, 1.0, 1.0, &a11, &a12, &a22) == QCN_OK);
  CHECK(a12 == doctest::Approx(0.75).epsilon(1e-12));
  qcn_matrix_free(from_map);

  qcn_matrix* bad = nullptr;
  CHECK(qcn_matrix_create_json("{", &bad) == QCN_ERR_BAD_INPUT);
}

TEST_CASE("bounds through the C interface") {
  double v = 0;
  REQUIRE(qcn_poincare_constant_upper(2.0, &v) == QCN_OK);
  CHECK(v == doctest::Approx(4.0));
  CHECK(qcn_poincare_constant_upper(0.2, &v) == QCN_ERR_INVALID_PARAMS);

  qcn_map* petal = nullptr;
  REQUIRE(qcn_map_create("rose_petal", &petal) == QCN_OK);

  double norm = 0, err = 0;
  REQUIRE(qcn_beta_norm(petal, 2.0, 32, &norm, &err) == QCN_OK);
  CHECK(norm == doctest::Approx(std::sqrt(3.14159265358979)).epsilon(1e-10));

  double b51 = 0, b47 = 0;
  REQUIRE(qcn_bound_thm51(petal, 2.0, 32, &b51) == QCN_OK);
  CHECK(b51 == doctest::Approx(1.0 / (4.0 * std::pow(3.0, 1.5))).epsilon(1e-10));
  REQUIRE(qcn_bound_thm47(petal, &b47) == QCN_OK);
  const double j = qcn_j1prime_zero();
  CHECK(b47 == doctest::Approx(j * j).epsilon(1e-13));

  double pw = 0;
  int applicable = 0;
  REQUIRE(qcn_bound_payne_weinberger(petal, 1, &pw, &applicable) == QCN_OK);
  CHECK(pw == doctest::Approx(std::pow(3.14159265358979 / 4.0, 2)).epsilon(1e-5));
  CHECK(applicable == 1);

  double log10_m = 0, beta_star = 0, beta_opt = 0, beta_tilde = 0;
  REQUIRE(qcn_quasidisc_mk(2.0, &log10_m, &beta_star, &beta_opt, &beta_tilde) ==
          QCN_OK);
  CHECK(std::isfinite(log10_m));
  CHECK(beta_star <= 2.0);

  double log10_bound = 0;
  REQUIRE(qcn_bound_quasidisc_log10(petal, &log10_bound, &applicable) == QCN_OK);
  CHECK(applicable == 1);
  CHECK(std::isfinite(log10_bound));

  double ih = 0;
  CHECK(qcn_inverse_holder_log10(1.1, 1.0, 0, &ih) == QCN_ERR_NU_EXCEEDS_ONE);
  REQUIRE(qcn_inverse_holder_log10(1.0 + 1e-14, 1.0, 0, &ih) == QCN_OK);
  CHECK(ih > 270.0);

  qcn_report* est = nullptr;
  REQUIRE(qcn_estimate(petal, 2.0, 32, &est) == QCN_OK);
  const std::string json = qcn_report_json(est);
  CHECK(json.find("\"bounds\"") != std::string::npos);
  CHECK(json.find("thm47_inf") != std::string::npos);
  CHECK(json.find("\"best\": true") != std::string::npos);
  qcn_report_free(est);

  qcn_map_free(petal);
}

TEST_CASE("mesh and solve through the C interface") {
  qcn_map* disc = nullptr;
  REQUIRE(qcn_map_create("disc", &disc) == QCN_OK);

  qcn_mesh* mesh = nullptr;
  REQUIRE(qcn_mesh_create(disc, 16, 64, &mesh) == QCN_OK);
  int nv = 0, nt = 0;
  CHECK(qcn_mesh_counts(mesh, &nv, &nt) == QCN_OK);
  CHECK(nv == 1 + 16 * 64);
  double h = 0, area = 0;
  CHECK(qcn_mesh_h_max(mesh, &h) == QCN_OK);
  CHECK(h > 0);
  CHECK(qcn_mesh_area(mesh, &area) == QCN_OK);
  CHECK(area == doctest::Approx(3.14159265358979).epsilon(0.01));

  const char* path = "capi_disc_mesh.txt";
  REQUIRE(qcn_mesh_save(mesh, path) == QCN_OK);
  qcn_mesh* loaded = nullptr;
  REQUIRE(qcn_mesh_load(path, &loaded) == QCN_OK);
  int nv2 = 0;
  CHECK(qcn_mesh_counts(loaded, &nv2, nullptr) == QCN_OK);
  CHECK(nv2 == nv);
  qcn_mesh_free(loaded);
  std::remove(path);

  qcn_report* rep = nullptr;
  REQUIRE(qcn_solve(disc, mesh, 4, 7u, &rep) == QCN_OK);
  double mu1 = 0;
  CHECK(qcn_report_mu_count(rep) == 4);
  CHECK(qcn_report_mu1(rep, &mu1) == QCN_OK);
  const double j = qcn_j1prime_zero();
  CHECK(mu1 == doctest::Approx(j * j).epsilon(0.02));
  double mu0 = 0;
  CHECK(qcn_report_mu(rep, 0, &mu0) == QCN_OK);
  CHECK(std::abs(mu0) <= 1e-8 * mu1);
  CHECK(qcn_report_mu(rep, 99, &mu0) == QCN_ERR_INVALID_PARAMS);
  qcn_report_free(rep);

  CHECK(qcn_mesh_create(disc, 2, 8, &mesh) == QCN_ERR_INVALID_RESOLUTION);
  qcn_mesh_free(mesh);
  qcn_map_free(disc);
}

TEST_CASE("verify and quadrature identities through the C interface") {
  qcn_map* petal = nullptr;
  REQUIRE(qcn_map_create("rose_petal", &petal) == QCN_OK);

  qcn_report* rep = nullptr;
  REQUIRE(qcn_verify(petal, 16, 64, 4, 7u, 2, 2.0, 32, &rep) == QCN_OK);
  double mu1 = 0;
  CHECK(qcn_report_mu1(rep, &mu1) == QCN_OK);
  const double j = qcn_j1prime_zero();
  CHECK(mu1 == doctest::Approx(j * j).epsilon(0.05));
  CHECK(qcn_report_violation_count(rep) == 0);
  const std::string json = qcn_report_json(rep);
  CHECK(json.find("\"violations\"") != std::string::npos);
  qcn_report_free(rep);

  CHECK(qcn_test_function_count() == 5);
  CHECK(std::string(qcn_test_function_name(4)) == "bessel_mode");

  double lhs = 0, rhs = 0, rel = 0;
  REQUIRE(qcn_isometry_check(petal, 1, 32, &lhs, &rhs, &rel) == QCN_OK);
  CHECK(rel <= 1e-3);

  double margin = 0;
  REQUIRE(qcn_poincare_check(petal, 2.0, 1, 32, &lhs, &rhs, &margin) == QCN_OK);
  CHECK(margin >= -1e-6);

  qcn_map_free(petal);

  CHECK(qcn_set_threads(2) == QCN_OK);
  CHECK(qcn_set_threads(1) == QCN_OK);
}
