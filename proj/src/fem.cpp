#include "qcn/fem.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "qcn/parallel.hpp"
#include "qcn/quadrature.hpp"
#include "qcn/special.hpp"
#include "qcn/testfns.hpp"

namespace qcn {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kResidualTol = 1e-9;

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

PolarPatch map_patch(const AnalyticQCMap& map) {
  const DomainSpec& dom = map.domain;
  PolarPatch patch;
  patch.rho = [&dom](double theta) { return dom.rho(theta); };
  patch.theta_min = dom.theta_min();
  patch.theta_max = dom.theta_max();
  patch.grading = map.radial_grading;
  return patch;
}

// <A grad(f o phi), grad(f o phi)> at z by the exact chain rule.
double pullback_energy_density(const AnalyticQCMap& map, const MatrixField& a,
                               const TestFunction& f, complexd z) {
  const complexd pz = map.phi_z(z);
  const complexd pzb = map.phi_zbar(z);
  const complexd phi_x = pz + pzb;
  const complexd phi_y = complexd(0.0, 1.0) * (pz - pzb);
  const auto g = f.grad(map.phi(z));
  const double gx = phi_x.real() * g[0] + phi_x.imag() * g[1];
  const double gy = phi_y.real() * g[0] + phi_y.imag() * g[1];
  const MatrixEntries e = a.at(z);
  return e.a11 * gx * gx + 2.0 * e.a12 * gx * gy + e.a22 * gy * gy;
}

}  // namespace

AssembledSystem assemble(const Mesh& mesh, const MatrixField& a) {
  const int nt = mesh.n_triangles();
  const int nv = mesh.n_vertices();
  const int chunks = std::min(64, std::max(1, nt));
  std::vector<std::vector<Triplet>> buf_s(chunks), buf_m(chunks);

  run_chunks(chunks, [&](int c) {
    const int t0 = static_cast<int>(static_cast<long long>(c) * nt / chunks);
    const int t1 =
        static_cast<int>(static_cast<long long>(c + 1) * nt / chunks);
    auto& ts = buf_s[static_cast<size_t>(c)];
    auto& tm = buf_m[static_cast<size_t>(c)];
    ts.reserve(static_cast<size_t>(t1 - t0) * 9);
    tm.reserve(static_cast<size_t>(t1 - t0) * 9);
    for (int t = t0; t < t1; ++t) {
      const auto& tri = mesh.triangles[static_cast<size_t>(t)];
      const auto& p0 = mesh.vertices[static_cast<size_t>(tri[0])];
      const auto& p1 = mesh.vertices[static_cast<size_t>(tri[1])];
      const auto& p2 = mesh.vertices[static_cast<size_t>(tri[2])];
      const double det =
          (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
      const double area = 0.5 * det;
      // grad lambda_i = (y_j - y_k, x_k - x_j) / (2 area), (i,j,k) cyclic
      const double gx[3] = {(p1[1] - p2[1]) / det, (p2[1] - p0[1]) / det,
                            (p0[1] - p1[1]) / det};
      const double gy[3] = {(p2[0] - p1[0]) / det, (p0[0] - p2[0]) / det,
                            (p1[0] - p0[0]) / det};
      const complexd centroid((p0[0] + p1[0] + p2[0]) / 3.0,
                              (p0[1] + p1[1] + p2[1]) / 3.0);
      const MatrixEntries e = a.at(centroid);
      for (int i = 0; i < 3; ++i) {
        const double agx = e.a11 * gx[i] + e.a12 * gy[i];
        const double agy = e.a12 * gx[i] + e.a22 * gy[i];
        for (int j = 0; j < 3; ++j) {
          ts.emplace_back(tri[i], tri[j],
                          area * (agx * gx[j] + agy * gy[j]));
          tm.emplace_back(tri[i], tri[j], area / 12.0 * (i == j ? 2.0 : 1.0));
        }
      }
    }
  });

  std::vector<Triplet> all_s, all_m;
  all_s.reserve(static_cast<size_t>(nt) * 9);
  all_m.reserve(static_cast<size_t>(nt) * 9);
  for (int c = 0; c < chunks; ++c) {
    all_s.insert(all_s.end(), buf_s[static_cast<size_t>(c)].begin(),
                 buf_s[static_cast<size_t>(c)].end());
    all_m.insert(all_m.end(), buf_m[static_cast<size_t>(c)].begin(),
                 buf_m[static_cast<size_t>(c)].end());
  }

  AssembledSystem sys;
  sys.stiffness.resize(nv, nv);
  sys.mass.resize(nv, nv);
  sys.stiffness.setFromTriplets(all_s.begin(), all_s.end());
  sys.mass.setFromTriplets(all_m.begin(), all_m.end());
  sys.stiffness.makeCompressed();
  sys.mass.makeCompressed();
  return sys;
}

namespace {

std::vector<double> solve_dense(const SpMat& s, const SpMat& m, int n_eigs) {
  Eigen::MatrixXd sd(s), md(m);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(sd, md);
  if (es.info() != Eigen::Success)
    fail(errc::solver_no_convergence, "dense generalized eigensolver failed");
  std::vector<double> out(static_cast<size_t>(n_eigs));
  for (int i = 0; i < n_eigs; ++i) out[static_cast<size_t>(i)] = es.eigenvalues()(i);
  return out;
}

std::vector<double> solve_lanczos(const SpMat& s, const SpMat& m, int n_eigs,
                                  unsigned seed) {
  const int n = static_cast<int>(s.rows());
  const int wanted = n_eigs - 1;  // beyond the deflated constant mode
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const double mass_total = ones.dot(m * ones);
  const double shift = kPi / mass_total;  // ~ 1/R*^2 eigenvalue scale

  SpMat p = s + shift * m;
  Eigen::SimplicialLDLT<SpMat> ldlt(p);
  if (ldlt.info() != Eigen::Success)
    fail(errc::solver_no_convergence, "shifted operator factorization failed");

  Eigen::VectorXd c = ones / std::sqrt(mass_total);
  const Eigen::VectorXd mc = m * c;

  const int k_max = std::min(n - 2, std::max(120, 12 * n_eigs));
  std::vector<Eigen::VectorXd> basis, mbasis;
  basis.reserve(static_cast<size_t>(k_max));
  mbasis.reserve(static_cast<size_t>(k_max));
  std::vector<double> diag, offdiag;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  auto fresh_vector = [&]() {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = uni(rng);
    return v;
  };
  auto m_orthonormalize = [&](Eigen::VectorXd& v) {
    for (int pass = 0; pass < 2; ++pass) {
      v -= (mc.dot(v)) * c;
      for (size_t i = 0; i < basis.size(); ++i)
        v -= (mbasis[i].dot(v)) * basis[i];
    }
    const double norm = std::sqrt(v.dot(m * v));
    if (norm > 1e-13) v /= norm;
    return norm;
  };

  Eigen::VectorXd v = fresh_vector();
  if (m_orthonormalize(v) <= 1e-13)
    fail(errc::solver_no_convergence, "could not seed the Krylov basis");

  double best_residual = std::numeric_limits<double>::infinity();
  for (int j = 0; j < k_max; ++j) {
    basis.push_back(v);
    mbasis.push_back(m * v);
    Eigen::VectorXd w = ldlt.solve(mbasis.back());
    const double a = w.dot(mbasis.back());
    diag.push_back(a);
    w -= a * v;
    if (j > 0) w -= offdiag.back() * basis[static_cast<size_t>(j - 1)];
    const double b = m_orthonormalize(w);
    const int k = j + 1;

    const bool breakdown = b <= 1e-13;
    if (k >= wanted + 2 && (breakdown || k % 5 == 0 || k == k_max)) {
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
      for (int i = 0; i < k; ++i) {
        t(i, i) = diag[static_cast<size_t>(i)];
        if (i + 1 < k) {
          t(i, i + 1) = offdiag[static_cast<size_t>(i)];
          t(i + 1, i) = offdiag[static_cast<size_t>(i)];
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      std::vector<double> lambdas;
      std::vector<Eigen::VectorXd> vectors;
      for (int idx = k - 1; idx >= 0 && static_cast<int>(lambdas.size()) < wanted;
           --idx) {
        const double nu = es.eigenvalues()(idx);
        if (!(nu > 0.0)) break;
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < k; ++i) x += es.eigenvectors()(i, idx) * basis[static_cast<size_t>(i)];
        lambdas.push_back(1.0 / nu - shift);
        vectors.push_back(std::move(x));
      }
      if (static_cast<int>(lambdas.size()) == wanted) {
        double worst = 0.0;
        for (int i = 0; i < wanted; ++i) {
          const Eigen::VectorXd mx = m * vectors[static_cast<size_t>(i)];
          const Eigen::VectorXd r =
              s * vectors[static_cast<size_t>(i)] - lambdas[static_cast<size_t>(i)] * mx;
          worst = std::max(worst, r.norm() / mx.norm());
        }
        best_residual = std::min(best_residual, worst);
        if (worst <= kResidualTol) {
          std::sort(lambdas.begin(), lambdas.end());
          std::vector<double> out;
          out.push_back(c.dot(s * c) / c.dot(m * c));  // deflated mode
          out.insert(out.end(), lambdas.begin(), lambdas.end());
          return out;
        }
      }
    }
    if (breakdown) {
      v = fresh_vector();
      if (m_orthonormalize(v) <= 1e-13)
        fail(errc::solver_no_convergence,
             "Krylov breakdown without enough converged pairs");
      offdiag.push_back(0.0);
    } else {
      offdiag.push_back(b);
      v = w;
    }
  }
  std::ostringstream os;
  os << "Lanczos did not reach residual " << kResidualTol << " in " << k_max
     << " iterations (best " << best_residual << ")";
  fail(errc::solver_no_convergence, os.str());
}

}  // namespace

std::vector<double> neumann_eigenvalues(const SpMat& stiffness,
                                        const SpMat& mass, int m,
                                        unsigned seed, EigenSolver solver) {
  const int n = static_cast<int>(stiffness.rows());
  if (stiffness.cols() != n || mass.rows() != n || mass.cols() != n)
    fail(errc::invalid_params, "eigensolver: matrix shape mismatch");
  if (m < 2) fail(errc::invalid_params, "eigensolver: m < 2");
  if (m > n) fail(errc::invalid_params, "eigensolver: m > matrix size");

  {
    Eigen::SimplicialLDLT<SpMat> mass_check(mass);
    if (mass_check.info() != Eigen::Success ||
        mass_check.vectorD().minCoeff() <= 0.0)
      fail(errc::indefinite_mass, "mass matrix is not positive definite");
  }

  if (solver == EigenSolver::automatic)
    solver = n < 2000 ? EigenSolver::dense : EigenSolver::lanczos;
  return solver == EigenSolver::dense ? solve_dense(stiffness, mass, m)
                                      : solve_lanczos(stiffness, mass, m, seed);
}

SpectralReport neumann_mu1(const AssembledSystem& system, int m,
                           unsigned seed) {
  SpectralReport rep;
  rep.mu_sequence = neumann_eigenvalues(system.stiffness, system.mass, m, seed);
  rep.mu1_fem = rep.mu_sequence.size() > 1 ? rep.mu_sequence[1] : 0.0;
  rep.m_eigs = m;
  rep.seed = seed;
  rep.convergence_slope = std::numeric_limits<double>::quiet_NaN();
  return rep;
}

SpectralReport verify_map(const AnalyticQCMap& map, const VerifyOptions& opt) {
  if (opt.refinements < 1)
    fail(errc::invalid_params, "verify_map: refinements < 1");
  // Coarse-to-fine nested resolutions obtained by halving.
  std::vector<std::pair<int, int>> levels;
  for (int q = opt.refinements - 1; q >= 0; --q) {
    const int nr = opt.n_radial >> q;
    const int na = opt.n_angular >> q;
    if (nr >= 4 && na >= 16) levels.emplace_back(nr, na);
  }
  if (levels.empty())
    fail(errc::invalid_resolution, "verify_map: resolution too coarse");

  const MatrixField a = map.matrix();
  std::vector<double> mu1_by_level;
  SpectralReport rep;
  for (size_t l = 0; l < levels.size(); ++l) {
    const Mesh mesh = mesh_star_domain(map.domain, levels[l].first,
                                       levels[l].second);
    const AssembledSystem sys = assemble(mesh, a);
    SpectralReport level_rep = neumann_mu1(sys, opt.m_eigs, opt.seed);
    mu1_by_level.push_back(level_rep.mu1_fem);
    if (l + 1 == levels.size()) {
      rep = std::move(level_rep);
      rep.mesh_h = mesh.h_max;
      rep.n_radial = levels[l].first;
      rep.n_angular = levels[l].second;
    }
  }
  rep.map_id = map.id;
  rep.dominance_budget = opt.budget;

  rep.convergence_slope = std::numeric_limits<double>::quiet_NaN();
  if (mu1_by_level.size() >= 3) {
    const size_t l = mu1_by_level.size();
    const double d_coarse = std::abs(mu1_by_level[l - 3] - mu1_by_level[l - 2]);
    const double d_fine = std::abs(mu1_by_level[l - 2] - mu1_by_level[l - 1]);
    if (d_fine > 0.0 && d_coarse > 0.0)
      rep.convergence_slope = std::log2(d_coarse / d_fine);
  }

  rep.bounds = estimate_bounds(map, opt.beta, opt.n_quad);
  for (const SpectralBound& b : rep.bounds) {
    if (!b.applicable) continue;
    if (b.value > rep.mu1_fem * (1.0 + opt.budget)) {
      std::ostringstream os;
      os << bound_kind_name(b.kind) << " = " << b.value
         << " exceeds mu1_fem = " << rep.mu1_fem << " beyond the "
         << 100.0 * opt.budget << "% budget";
      rep.violations.push_back(os.str());
    }
  }
  return rep;
}

IsometryResult isometry_check(const AnalyticQCMap& map, int test_fn_id,
                              int n_quad) {
  if (n_quad < 4) fail(errc::invalid_params, "isometry_check: n_quad < 4");
  const TestFunction& f = test_function(test_fn_id);
  const MatrixField a = map.matrix();
  const PolarPatch patch = map_patch(map);

  IsometryResult out;
  out.lhs = integrate_polar(
      patch,
      [&](complexd z) { return pullback_energy_density(map, a, f, z); },
      n_quad, 4 * n_quad);
  out.rhs = integrate_disc(
      [&f](complexd w) {
        const auto g = f.grad(w);
        return g[0] * g[0] + g[1] * g[1];
      },
      n_quad, 4 * n_quad);
  out.rel_err = out.rhs != 0.0 ? std::abs(out.lhs - out.rhs) / std::abs(out.rhs)
                               : std::abs(out.lhs - out.rhs);
  return out;
}

PoincareResult weighted_poincare_check(const AnalyticQCMap& map, double r,
                                       int test_fn_id, int n_quad) {
  if (!(r >= 1.0))
    fail(errc::invalid_params, "weighted_poincare_check: r < 1");
  if (n_quad < 4)
    fail(errc::invalid_params, "weighted_poincare_check: n_quad < 4");
  const TestFunction& f = test_function(test_fn_id);
  const MatrixField a = map.matrix();
  const PolarNodes nodes = polar_nodes(map_patch(map), n_quad, 4 * n_quad);
  const size_t n = nodes.points.size();

  std::vector<double> values(n), weighted(n);
  double f_min = std::numeric_limits<double>::infinity();
  double f_max = -f_min;
  double energy = 0.0;
  for (size_t k = 0; k < n; ++k) {
    const complexd z = nodes.points[k];
    values[k] = f.value(map.phi(z));
    weighted[k] = nodes.weights[k] * std::abs(map.jacobian(z));
    f_min = std::min(f_min, values[k]);
    f_max = std::max(f_max, values[k]);
    energy += nodes.weights[k] * pullback_energy_density(map, a, f, z);
  }

  auto deviation = [&](double c) {
    double s = 0.0;
    for (size_t k = 0; k < n; ++k)
      s += weighted[k] * std::pow(std::abs(values[k] - c), r);
    return s;
  };

  PoincareResult out;
  if (f_max - f_min < 1e-14) {
    out.lhs = 0.0;
  } else {
    const double c =
        golden_section_min(deviation, f_min, f_max, 1e-12 * (1.0 + f_max - f_min));
    out.lhs = std::pow(deviation(c), 1.0 / r);
  }
  out.rhs = poincare_constant_upper(r) * std::sqrt(std::max(energy, 0.0));
  out.margin = out.rhs - out.lhs;
  return out;
}

}  // namespace qcn
