#pragma once

#include <array>
#include <complex>
#include <functional>

namespace qcn {

using complexd = std::complex<double>;

// Smooth test functions on the closed unit disc with exact gradients:
// 0 constant, 1 linear, 2 harmonic polynomial, 3 exp(u) cos v,
// 4 Bessel Neumann mode J1(j'_{1,1} r) cos(theta).
struct TestFunction {
  const char* name;
  std::function<double(complexd)> value;
  std::function<std::array<double, 2>(complexd)> grad;
};

int test_function_count();
const TestFunction& test_function(int id);

}  // namespace qcn
