#include "refgame/linops/json.h"

#include "refgame/common.h"

namespace refgame::linops {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& x : m.entries()) entries.push_back({x.real(), x.imag()});
  return {{"dim", m.dim()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw InputError("matrix JSON needs 'dim' and 'entries'");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    throw InputError("matrix 'dim' must be a positive integer");
  }
  const auto dim = j["dim"].get<std::size_t>();
  const auto& e = j["entries"];
  if (!e.is_array() || e.size() != dim * dim) throw InputError("matrix 'entries' must hold dim^2 pairs");
  std::vector<Complex> data;
  data.reserve(dim * dim);
  for (const auto& pair : e) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw InputError("matrix entry must be [re, im]");
    }
    data.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return ComplexMatrix(dim, std::move(data));
}

}  // namespace refgame::linops
