#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qcn/dilatation.hpp"
#include "qcn/domain.hpp"

namespace qcn {

// Closed-form quasiconformal map phi : domain -> unit disc with exact
// Wirtinger derivatives, Jacobian and inverse. Immutable after construction.
struct AnalyticQCMap {
  std::string id;
  std::function<complexd(complexd)> phi;
  std::function<complexd(complexd)> phi_z;
  std::function<complexd(complexd)> phi_zbar;
  std::function<double(complexd)> jacobian;          // J(z, phi)
  std::function<complexd(complexd)> inverse;         // disc -> domain
  std::function<double(complexd)> inv_jacobian_abs;  // |J(w, phi^{-1})|
  double inv_jacobian_sup = 1.0;                     // ess sup over the disc
  DomainSpec domain;
  double ellipticity_K = 1.0;
  // Radial substitution exponent taming Jacobian blow-up at the origin in
  // domain quadrature (1 = none).
  int radial_grading = 1;
  bool quasidisc = true;

  complexd mu(complexd z) const;
  MatrixField matrix() const;
};

//  phi(z) = a/(a^2-b^2) z - b/(a^2-b^2) conj(z), ellipse with semi-axes
//  a+b, a-b onto the disc; mu = -b/a, J = 1/(a^2-b^2).
AnalyticQCMap make_ellipse_map(double a, double b);

//  phi(z) = z^{3/2}/(sqrt2 conj(z)^{1/2}) - 1 on the petal
//  rho = 2 sqrt2 cos(2 theta), |theta| <= pi/4; J = 1, K = 2.
AnalyticQCMap make_rose_petal_map();

//  phi(z) = 2 z^{3/8}/conj(z)^{1/8} - 1 on rho = cos^4(theta/2);
//  J = 1/(2 |z|^{3/2}), K = 2.
AnalyticQCMap make_cusp_map();

//  phi(x,y) = (a x + f(y), y/a) restricted to the preimage of the disc.
AnalyticQCMap make_shear_map(std::function<double(double)> f,
                             std::function<double(double)> f_prime,
                             double f_prime_sup, double a_scale);

// Map ids: "ellipse:a=2,b=1", "rose_petal", "cusp", "shear:fprime=const1,a=1",
// "disc" (= ellipse:a=1,b=0).
AnalyticQCMap make_map(const std::string& spec);

// Largest eigenvalue of D D^T for the shear Jacobi matrix [[a, f'],[0,1/a]].
double shear_lambda_max(double f_prime, double a_scale);

// The map's dilatation as a standalone field with its declared sup |mu|.
DilatationField dilatation_field(const AnalyticQCMap& map);

// Second complex dilatation nu_phi = (phi_z/|phi_z|)^2 mu_phi.
complexd second_dilatation(const AnalyticQCMap& map, complexd z);

// Dilatation of the inverse map at w in the disc: -nu_phi(phi^{-1}(w)).
complexd inverse_dilatation(const AnalyticQCMap& map, complexd w);

// max over samples of |phi_z| + |phi_zbar|; requires J == 1 a.e.
double bilipschitz_check(const AnalyticQCMap& map,
                         std::span<const complexd> samples);

std::vector<complexd> sample_interior(const AnalyticQCMap& map, int n,
                                      unsigned seed, double shrink = 0.999);
std::vector<complexd> sample_boundary(const DomainSpec& domain, int n);

}  // namespace qcn
