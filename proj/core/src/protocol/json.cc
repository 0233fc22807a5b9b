#include "refgame/protocol/json.h"

#include <string>

#include "refgame/dist/json.h"

namespace refgame::protocol {
namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const nlohmann::json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) throw InputError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

nlohmann::json instance_to_json(const ProtocolInstance& inst) {
  return {{"base_game", dist::game_to_json(inst.base_game)},
          {"k", inst.copies_k},
          {"c", inst.promise.c},
          {"s", inst.promise.s},
          {"honest_side", std::string(to_string(inst.honest_side))}};
}

ProtocolInstance instance_from_json(const nlohmann::json& j) {
  const auto& k = field(j, "k");
  if (!k.is_number_integer()) throw InputError("field 'k' must be an integer");
  const auto& side = field(j, "honest_side");
  if (!side.is_string()) throw InputError("field 'honest_side' must be a string");
  ProtocolInstance inst{dist::game_from_json(field(j, "base_game")), static_cast<int>(k.get<long long>()),
                        PromiseGap::make(number(j, "c"), number(j, "s")),
                        player_from_string(side.get<std::string>())};
  validate(inst);
  return inst;
}

nlohmann::json adversary_to_json(const AdversaryStrategy& adv) {
  nlohmann::json turns = nlohmann::json::array();
  for (const auto& chunk : adv) {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& d : chunk) c.push_back(dist::distribution_to_json(d));
    turns.push_back(std::move(c));
  }
  return {{"turns", std::move(turns)}};
}

AdversaryStrategy adversary_from_json(const nlohmann::json& j) {
  const auto& turns = field(j, "turns");
  if (!turns.is_array()) throw InputError("field 'turns' must be an array");
  AdversaryStrategy adv;
  for (const auto& chunk : turns) {
    if (!chunk.is_array()) throw InputError("each turn must be an array of distributions");
    std::vector<Distribution> c;
    for (const auto& d : chunk) c.push_back(dist::distribution_from_json(d));
    adv.push_back(std::move(c));
  }
  return adv;
}

}  // namespace refgame::protocol
