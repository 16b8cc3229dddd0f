#include <cmath>
#include <json.hpp>

#include "qcn/fem.hpp"

namespace qcn {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json bound_to_json(const SpectralBound& b) {
  ordered_json j;
  j["kind"] = bound_kind_name(b.kind);
  j["value"] = b.value;
  j["log10_value"] = b.log10_value;
  j["applicable"] = b.applicable;
  if (!b.note.empty()) j["note"] = b.note;
  ordered_json inputs;
  for (const auto& [key, value] : b.inputs) inputs[key] = value;
  j["inputs"] = inputs;
  return j;
}

}  // namespace

std::string SpectralReport::to_json() const {
  ordered_json j;
  j["map"] = map_id;
  j["mu1_fem"] = mu1_fem;
  j["mu_sequence"] = mu_sequence;
  j["mesh_h"] = mesh_h;
  if (std::isnan(convergence_slope))
    j["convergence_slope"] = nullptr;
  else
    j["convergence_slope"] = convergence_slope;
  j["resolution"] = {{"n_radial", n_radial}, {"n_angular", n_angular}};
  j["m_eigs"] = m_eigs;
  j["seed"] = seed;
  j["dominance_budget"] = dominance_budget;
  ordered_json bs = ordered_json::array();
  for (const SpectralBound& b : bounds) bs.push_back(bound_to_json(b));
  j["bounds"] = bs;
  j["violations"] = violations;
  return j.dump(2) + "\n";
}

}  // namespace qcn
