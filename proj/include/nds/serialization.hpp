#pragma once

#include "json.hpp"
#include "nds/characters.hpp"
#include "nds/stats.hpp"

namespace nds {

void to_json(nlohmann::json& j, const CharacterLabel& label);
void from_json(const nlohmann::json& j, CharacterLabel& label);

void to_json(nlohmann::json& j, const DirichletCharacter& chi);

void to_json(nlohmann::json& j, const ScanRecord& r);
void from_json(const nlohmann::json& j, ScanRecord& r);

}  // namespace nds
