#include <json.hpp>

#include "qcn/dilatation.hpp"
#include "qcn/qcmaps.hpp"

namespace qcn {

MatrixField MatrixField::from_json(const std::string& text) {
  nlohmann::json spec;
  try {
    spec = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::bad_input, std::string("matrix spec is not valid JSON: ") +
                              e.what());
  }
  if (!spec.is_object() || !spec.contains("kind"))
    fail(errc::bad_input, "matrix spec needs a \"kind\" field");
  const std::string kind = spec["kind"].get<std::string>();
  if (kind == "constant") {
    for (const char* key : {"a11", "a12", "a22"})
      if (!spec.contains(key) || !spec[key].is_number())
        fail(errc::bad_input, std::string("matrix spec needs numeric ") + key);
    return MatrixField::constant(spec["a11"].get<double>(),
                                 spec["a12"].get<double>(),
                                 spec["a22"].get<double>());
  }
  if (kind == "from_map") {
    if (!spec.contains("map") || !spec["map"].is_string())
      fail(errc::bad_input, "matrix spec needs a \"map\" id");
    return make_map(spec["map"].get<std::string>()).matrix();
  }
  fail(errc::bad_input, "unknown matrix spec kind: " + kind);
}

}  // namespace qcn
