#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace qcn {

using complexd = std::complex<double>;

// Gauss-Legendre nodes and weights on (0, 1).
void gauss_legendre_01(int n, std::vector<double>& nodes,
                       std::vector<double>& weights);

// Integrates f over the unit disc with an n_radial-point Gauss-Legendre rule
// in radius and n_angular uniform angles (trapezoid, exact for periodic
// smooth integrands up to spectral accuracy).
double integrate_disc(const std::function<double(complexd)>& f, int n_radial,
                      int n_angular);

// Star-shaped patch 0 <= s <= rho(theta), theta in [theta_min, theta_max].
// The radial variable is substituted s = t^grading so that integrands with an
// algebraic singularity at the origin become smooth; grading = 1 is the plain
// rule. Radial nodes are Gauss-Legendre in t, angular nodes composite
// Gauss-Legendre panels.
struct PolarPatch {
  std::function<double(double)> rho;
  double theta_min = -3.14159265358979323846;
  double theta_max = 3.14159265358979323846;
  int grading = 1;
};

double integrate_polar(const PolarPatch& patch,
                       const std::function<double(complexd)>& f, int n_radial,
                       int n_angular);

// Quadrature nodes z with combined weights (area element included), useful
// when several functionals are evaluated on the same grid.
struct PolarNodes {
  std::vector<complexd> points;
  std::vector<double> weights;
};
PolarNodes polar_nodes(const PolarPatch& patch, int n_radial, int n_angular);

// Golden-section minimizer of a unimodal function on [a, b].
double golden_section_min(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_iter = 200);

}  // namespace qcn
