#pragma once

namespace qcn {

// First positive zero of J1'. Its square is the first nontrivial Neumann
// eigenvalue of the Laplacian on the unit disc.
inline constexpr double kJ1PrimeZero1 = 1.8411837813406593;

double bessel_j0(double x);
double bessel_j1(double x);
double bessel_j1_prime(double x);

// Newton refinement of a zero of J1' starting from x0.
double refine_j1prime_zero(double x0);

}  // namespace qcn
