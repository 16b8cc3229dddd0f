#include "qcn/special.hpp"

#include <cmath>

namespace qcn {

double bessel_j0(double x) { return std::cyl_bessel_j(0.0, x); }

double bessel_j1(double x) { return std::cyl_bessel_j(1.0, x); }

double bessel_j1_prime(double x) { return bessel_j0(x) - bessel_j1(x) / x; }

double refine_j1prime_zero(double x0) {
  double x = x0;
  for (int it = 0; it < 50; ++it) {
    const double j0 = bessel_j0(x);
    const double j1 = bessel_j1(x);
    const double f = j0 - j1 / x;
    // J1'' from the Bessel ODE: J1'' = -J1' / x - (1 - 1/x^2) J1.
    const double fp = -f / x - (1.0 - 1.0 / (x * x)) * j1;
    const double step = f / fp;
    x -= step;
    if (std::abs(step) < 1e-15 * x) break;
  }
  return x;
}

}  // namespace qcn
