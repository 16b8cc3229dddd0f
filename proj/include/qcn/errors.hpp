#pragma once

#include <stdexcept>
#include <string>

namespace qcn {

enum class errc {
  ok = 0,
  invalid_params,
  non_elliptic,
  degenerate_dilatation,
  outside_disc,
  not_measure_preserving,
  quadrature_divergence,
  not_inf_regular,
  nu_exceeds_one,
  kappa_out_of_range,
  no_feasible_beta,
  degenerate_boundary,
  invalid_resolution,
  solver_no_convergence,
  indefinite_mass,
  non_convex_domain,
  unknown_map,
  bad_input,
  io_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace qcn
