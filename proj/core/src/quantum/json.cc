#include "refgame/quantum/json.h"

#include <string>
#include <vector>

#include "refgame/linops/json.h"

namespace refgame::quantum {
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

long long integer(const nlohmann::json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + key + "' must be an integer");
  return v.get<long long>();
}

}  // namespace

nlohmann::json layout_to_json(const RegisterLayout& layout) {
  nlohmann::json regs = nlohmann::json::array();
  for (const auto& r : layout.registers()) {
    regs.push_back({{"id", r.id},
                    {"qubits", r.qubits},
                    {"owner", std::string(to_string(r.owner))},
                    {"turn", r.turn}});
  }
  return regs;
}

RegisterLayout layout_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InputError("'registers' must be an array");
  std::vector<linops::Register> regs;
  for (const auto& e : j) {
    linops::Register r;
    const auto& id = field(e, "id");
    if (!id.is_string()) throw InputError("register 'id' must be a string");
    r.id = id.get<std::string>();
    r.qubits = static_cast<int>(integer(e, "qubits"));
    const auto& owner = field(e, "owner");
    if (!owner.is_string()) throw InputError("register 'owner' must be a string");
    r.owner = player_from_string(owner.get<std::string>());
    r.turn = static_cast<int>(integer(e, "turn"));
    regs.push_back(std::move(r));
  }
  return RegisterLayout(std::move(regs));
}

nlohmann::json game_to_json(const QuantumGame& game) {
  return {{"observable", linops::matrix_to_json(game.observable().mat())},
          {"registers", layout_to_json(game.layout())}};
}

QuantumGame game_from_json(const nlohmann::json& j) {
  return QuantumGame(Observable(linops::matrix_from_json(field(j, "observable"))),
                     layout_from_json(field(j, "registers")));
}

nlohmann::json report_to_json(const GameValueReport& r) {
  return {{"value", r.value},
          {"lower_cert", r.lower_cert},
          {"upper_cert", r.upper_cert},
          {"gap", r.gap},
          {"iterations", r.iterations}};
}

GameValueReport report_from_json(const nlohmann::json& j) {
  GameValueReport r;
  r.value = number(j, "value");
  r.lower_cert = number(j, "lower_cert");
  r.upper_cert = number(j, "upper_cert");
  r.gap = number(j, "gap");
  r.iterations = static_cast<long>(integer(j, "iterations"));
  return r;
}

}  // namespace refgame::quantum
