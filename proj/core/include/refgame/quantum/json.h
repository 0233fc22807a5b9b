#pragma once

#include <nlohmann/json.hpp>

#include "refgame/quantum/game.h"

namespace refgame::quantum {

// {"observable": matrix, "registers": [{"id","qubits","owner","turn"}, ...]}
nlohmann::json game_to_json(const QuantumGame& game);
QuantumGame game_from_json(const nlohmann::json& j);

nlohmann::json layout_to_json(const RegisterLayout& layout);
RegisterLayout layout_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const GameValueReport& r);
GameValueReport report_from_json(const nlohmann::json& j);

}  // namespace refgame::quantum
