#pragma once

#include <nlohmann/json.hpp>

#include "refgame/linops/matrix.h"

namespace refgame::linops {

// {"dim": n, "entries": [[re, im], ...]} in row-major order.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
// Throws InputError on schema violations.
ComplexMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace refgame::linops
