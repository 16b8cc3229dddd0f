#pragma once

#include <complex>
#include <functional>
#include <string>

#include "qcn/errors.hpp"

namespace qcn {

using complexd = std::complex<double>;

// Tolerances for the det A = 1 band and the degenerate-dilatation cutoff.
inline constexpr double kDetTolerance = 1e-12;
inline constexpr double kMuDegenerate = 1e-9;

struct MatrixEntries {
  double a11 = 1.0;
  double a12 = 0.0;
  double a22 = 1.0;
  double det() const { return a11 * a22 - a12 * a12; }
  double trace() const { return a11 + a22; }
};

// Eigenvalue range of a symmetric 2x2 with the given entries.
void eigen_range(const MatrixEntries& a, double& lo, double& hi);

// mu = (a22 - a11 - 2 i a12) / det(I + A). Throws non_elliptic when
// det A strays from 1 beyond kDetTolerance or det(I + A) <= 0.
complexd mu_from_entries(const MatrixEntries& a);

// Entries of the unique symmetric det-1 matrix with dilatation mu:
//   a11 = |1-mu|^2/(1-|mu|^2), a12 = -2 Im mu/(1-|mu|^2),
//   a22 = |1+mu|^2/(1-|mu|^2).
// Throws degenerate_dilatation when |mu| >= 1 - kMuDegenerate.
MatrixEntries matrix_from_mu(complexd mu);

// K = (1 + s)/(1 - s) for s = sup|mu|.
double ellipticity_from_mu(double sup_abs);

// |mu_from_entries(matrix_from_mu(mu)) - mu|; contract: <= 1e-12.
double roundtrip_residual(complexd mu);

// Pointwise symmetric det-1 matrix field z -> A(z) with a declared
// ellipticity coefficient. Pure evaluation, no grid storage.
class MatrixField {
 public:
  MatrixField() = default;
  static MatrixField constant(double a11, double a12, double a22);
  static MatrixField identity();
  static MatrixField from_mu(std::function<complexd(complexd)> mu,
                             double sup_abs);
  // {"kind":"constant","a11":..,"a12":..,"a22":..} or
  // {"kind":"from_map","map":"<map-id>"}.
  static MatrixField from_json(const std::string& text);

  MatrixEntries at(complexd z) const;
  double ellipticity() const { return k_; }

 private:
  std::function<MatrixEntries(complexd)> entries_;
  double k_ = 1.0;
};

complexd mu_from_matrix(const MatrixField& a, complexd z);

struct DilatationField {
  std::function<complexd(complexd)> value;
  double sup_abs = 0.0;
};

}  // namespace qcn
