#pragma once

#include <nlohmann/json.hpp>

#include "refgame/protocol/protocol.h"

namespace refgame::protocol {

// {"base_game": DistGame, "k": .., "c": .., "s": .., "honest_side": ..}
nlohmann::json instance_to_json(const ProtocolInstance& inst);
ProtocolInstance instance_from_json(const nlohmann::json& j);

// {"turns": [[Distribution, ...], ...]}
nlohmann::json adversary_to_json(const AdversaryStrategy& adv);
AdversaryStrategy adversary_from_json(const nlohmann::json& j);

}  // namespace refgame::protocol
