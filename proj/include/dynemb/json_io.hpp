#pragma once

#include <json.hpp>

#include "dynemb/pipeline.hpp"

namespace dynemb {

void to_json(nlohmann::json& j, const EmbedConfig& c);
void from_json(const nlohmann::json& j, EmbedConfig& c);

std::string to_string(TemporalBias bias);
TemporalBias parse_bias(const std::string& text);

}  // namespace dynemb
