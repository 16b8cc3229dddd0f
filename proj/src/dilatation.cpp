#include "qcn/dilatation.hpp"

#include <cmath>
#include <sstream>

namespace qcn {

void eigen_range(const MatrixEntries& a, double& lo, double& hi) {
  const double mid = 0.5 * a.trace();
  const double disc = std::sqrt(std::max(0.0, mid * mid - a.det()));
  lo = mid - disc;
  hi = mid + disc;
}

complexd mu_from_entries(const MatrixEntries& a) {
  const double det = a.det();
  if (std::abs(det - 1.0) > kDetTolerance) {
    std::ostringstream os;
    os << "matrix determinant " << det << " deviates from 1 beyond "
       << kDetTolerance;
    fail(errc::non_elliptic, os.str());
  }
  const double denom = (1.0 + a.a11) * (1.0 + a.a22) - a.a12 * a.a12;
  if (!(denom > 0.0))
    fail(errc::non_elliptic, "det(I + A) <= 0: matrix is not elliptic");
  const complexd mu{(a.a22 - a.a11) / denom, -2.0 * a.a12 / denom};
  if (!(std::abs(mu) < 1.0))
    fail(errc::non_elliptic, "matrix yields |mu| >= 1");
  return mu;
}

MatrixEntries matrix_from_mu(complexd mu) {
  const double m2 = std::norm(mu);
  if (!(m2 < (1.0 - kMuDegenerate) * (1.0 - kMuDegenerate))) {
    std::ostringstream os;
    os << "|mu| = " << std::abs(mu) << " is degenerate (>= 1 - 1e-9)";
    fail(errc::degenerate_dilatation, os.str());
  }
  const double denom = 1.0 - m2;
  MatrixEntries a;
  a.a11 = std::norm(1.0 - mu) / denom;
  a.a12 = -2.0 * mu.imag() / denom;
  a.a22 = std::norm(1.0 + mu) / denom;
  return a;
}

double ellipticity_from_mu(double sup_abs) {
  if (!(sup_abs >= 0.0))
    fail(errc::invalid_params, "ellipticity_from_mu: sup_abs < 0");
  if (!(sup_abs < 1.0))
    fail(errc::degenerate_dilatation, "ellipticity_from_mu: sup_abs >= 1");
  return (1.0 + sup_abs) / (1.0 - sup_abs);
}

double roundtrip_residual(complexd mu) {
  return std::abs(mu_from_entries(matrix_from_mu(mu)) - mu);
}

MatrixField MatrixField::constant(double a11, double a12, double a22) {
  const MatrixEntries e{a11, a12, a22};
  // Validates det = 1 and ellipticity up front.
  const complexd mu = mu_from_entries(e);
  MatrixField f;
  f.entries_ = [e](complexd) { return e; };
  f.k_ = ellipticity_from_mu(std::abs(mu));
  return f;
}

MatrixField MatrixField::identity() { return constant(1.0, 0.0, 1.0); }

MatrixField MatrixField::from_mu(std::function<complexd(complexd)> mu,
                                 double sup_abs) {
  MatrixField f;
  f.k_ = ellipticity_from_mu(sup_abs);
  f.entries_ = [mu = std::move(mu)](complexd z) {
    return matrix_from_mu(mu(z));
  };
  return f;
}

MatrixEntries MatrixField::at(complexd z) const {
  if (!entries_) fail(errc::bad_input, "MatrixField: empty field");
  return entries_(z);
}

complexd mu_from_matrix(const MatrixField& a, complexd z) {
  return mu_from_entries(a.at(z));
}

}  // namespace qcn
