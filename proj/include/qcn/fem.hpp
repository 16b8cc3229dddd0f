#pragma once

#include <Eigen/SparseCore>
#include <string>
#include <vector>

#include "qcn/bounds.hpp"
#include "qcn/dilatation.hpp"
#include "qcn/mesh.hpp"
#include "qcn/qcmaps.hpp"

namespace qcn {

struct AssembledSystem {
  Eigen::SparseMatrix<double> stiffness;
  Eigen::SparseMatrix<double> mass;
};

// P1 elements, coefficient matrix sampled at triangle centroids, mass by the
// exact P1 formula. Natural Neumann condition: no boundary rows touched, the
// stiffness kernel is spanned by the constant vector.
AssembledSystem assemble(const Mesh& mesh, const MatrixField& a);

enum class EigenSolver { automatic, dense, lanczos };

// Smallest m eigenvalues of the pencil (S, M), sorted non-decreasing. The
// first entry is the constant-mode Rayleigh quotient (~0). Dense below 2000
// unknowns, otherwise shift-invert Lanczos with the constant mode deflated,
// relative residual tolerance 1e-9.
std::vector<double> neumann_eigenvalues(
    const Eigen::SparseMatrix<double>& stiffness,
    const Eigen::SparseMatrix<double>& mass, int m, unsigned seed,
    EigenSolver solver = EigenSolver::automatic);

struct SpectralReport {
  std::string map_id;
  double mu1_fem = 0.0;
  std::vector<double> mu_sequence;
  std::vector<SpectralBound> bounds;
  double mesh_h = 0.0;
  double convergence_slope = 0.0;  // NaN when not measured
  int n_radial = 0;
  int n_angular = 0;
  int m_eigs = 0;
  unsigned seed = 0;
  double dominance_budget = 0.02;
  std::vector<std::string> violations;  // applicable bounds above mu1*(1+budget)

  std::string to_json() const;
};

SpectralReport neumann_mu1(const AssembledSystem& system, int m, unsigned seed);

struct VerifyOptions {
  int n_radial = 32;
  int n_angular = 128;
  int m_eigs = 6;
  unsigned seed = 12345;
  int refinements = 3;  // halving levels used for the convergence slope
  double beta = 2.0;
  int n_quad = 64;
  double budget = 0.02;
};

// mesh -> assemble -> eigensolve at `refinements` nested resolutions,
// attaches the bound table and flags dominance violations.
SpectralReport verify_map(const AnalyticQCMap& map, const VerifyOptions& opt);

struct IsometryResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;
};

// lhs = A-energy of f(phi(.)) over the domain (chain-rule gradients), rhs =
// Dirichlet energy of f over the disc; both by tensor quadrature.
IsometryResult isometry_check(const AnalyticQCMap& map, int test_fn_id,
                              int n_quad);

struct PoincareResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

// Weighted Poincare-Sobolev check with weight |J(z,phi)|: lhs the infimum
// over c of the weighted L^r deviation (golden section in c), rhs the disc
// constant times the A-energy seminorm.
PoincareResult weighted_poincare_check(const AnalyticQCMap& map, double r,
                                       int test_fn_id, int n_quad);

}  // namespace qcn
