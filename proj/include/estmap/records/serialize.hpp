#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "estmap/records/record.hpp"

namespace estmap {

nlohmann::json to_json(const Record& record);
/// Throws InputError on missing or mistyped fields.
Record record_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Corpus& corpus);
Corpus corpus_from_json(const nlohmann::json& j);

}  // namespace estmap
