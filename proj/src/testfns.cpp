#include "qcn/testfns.hpp"

#include <array>
#include <cmath>

#include "qcn/errors.hpp"
#include "qcn/special.hpp"

namespace qcn {

namespace {

std::array<double, 2> bessel_mode_grad(complexd w) {
  const double k = kJ1PrimeZero1;
  const double r = std::abs(w);
  if (r < 1e-9) return {0.5 * k, 0.0};
  const double c = w.real() / r, s = w.imag() / r;
  const double radial = k * bessel_j1_prime(k * r);
  const double tangential = bessel_j1(k * r) / r;
  return {radial * c * c + tangential * s * s,
          (radial - tangential) * s * c};
}

const std::array<TestFunction, 5>& catalog() {
  static const std::array<TestFunction, 5> cat = {{
      {"const", [](complexd) { return 1.0; },
       [](complexd) { return std::array<double, 2>{0.0, 0.0}; }},
      {"u", [](complexd w) { return w.real(); },
       [](complexd) { return std::array<double, 2>{1.0, 0.0}; }},
      {"u2_minus_v2",
       [](complexd w) { return w.real() * w.real() - w.imag() * w.imag(); },
       [](complexd w) {
         return std::array<double, 2>{2.0 * w.real(), -2.0 * w.imag()};
       }},
      {"exp_u_cos_v",
       [](complexd w) { return std::exp(w.real()) * std::cos(w.imag()); },
       [](complexd w) {
         const double e = std::exp(w.real());
         return std::array<double, 2>{e * std::cos(w.imag()),
                                      -e * std::sin(w.imag())};
       }},
      {"bessel_mode",
       [](complexd w) {
         const double r = std::abs(w);
         if (r < 1e-9) return 0.5 * kJ1PrimeZero1 * w.real();
         return bessel_j1(kJ1PrimeZero1 * r) * w.real() / r;
       },
       bessel_mode_grad},
  }};
  return cat;
}

}  // namespace

int test_function_count() { return static_cast<int>(catalog().size()); }

const TestFunction& test_function(int id) {
  if (id < 0 || id >= test_function_count())
    fail(errc::invalid_params, "test function id out of range");
  return catalog()[static_cast<size_t>(id)];
}

}  // namespace qcn
