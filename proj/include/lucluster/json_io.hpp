#pragma once

#include <string>

#include <json.hpp>

#include "lucluster/combine.hpp"
#include "lucluster/gen.hpp"
#include "lucluster/model.hpp"
#include "lucluster/verify.hpp"

namespace luc {

using json = nlohmann::ordered_json;

json instanceToJson(const Instance& inst);
Instance instanceFromJson(const json& j);

json solutionToJson(const Solution& sol);
Solution solutionFromJson(const json& j);

json traceToJson(const CombineTrace& trace);
CombineTrace traceFromJson(const json& j);

json reportToJson(const GuaranteeReport& report);

json genSpecToJson(const GenSpec& spec);
GenSpec genSpecFromJson(const json& j);

json loadJsonFile(const std::string& path);
void writeJsonFile(const std::string& path, const json& j);

}  // namespace luc
