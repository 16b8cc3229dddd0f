#include "qcn/errors.hpp"

namespace qcn {

const char* errc_name(errc code) {
  switch (code) {
    case errc::ok: return "ok";
    case errc::invalid_params: return "invalid_params";
    case errc::non_elliptic: return "non_elliptic";
    case errc::degenerate_dilatation: return "degenerate_dilatation";
    case errc::outside_disc: return "outside_disc";
    case errc::not_measure_preserving: return "not_measure_preserving";
    case errc::quadrature_divergence: return "quadrature_divergence";
    case errc::not_inf_regular: return "not_inf_regular";
    case errc::nu_exceeds_one: return "nu_exceeds_one";
    case errc::kappa_out_of_range: return "kappa_out_of_range";
    case errc::no_feasible_beta: return "no_feasible_beta";
    case errc::degenerate_boundary: return "degenerate_boundary";
    case errc::invalid_resolution: return "invalid_resolution";
    case errc::solver_no_convergence: return "solver_no_convergence";
    case errc::indefinite_mass: return "indefinite_mass";
    case errc::non_convex_domain: return "non_convex_domain";
    case errc::unknown_map: return "unknown_map";
    case errc::bad_input: return "bad_input";
    case errc::io_error: return "io_error";
  }
  return "unknown";
}

}  // namespace qcn
