#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fibgirth/construction.hpp"
#include "fibgirth/finite_group.hpp"
#include "fibgirth/girth.hpp"
#include "fibgirth/report.hpp"
#include "fibgirth/unitary.hpp"

namespace fibgirth {

// Key order of every emitted object is fixed, so dump() output is stable.
using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const GirthRecord& record);
GirthRecord girth_record_from_json(const ordered_json& j);

ordered_json to_json(const ConstructionPair& pair);
ordered_json to_json(const DepthResult& depth);
ordered_json to_json(const Report& report);
ordered_json to_json(const LawCertificate& cert);

ordered_json to_json(const ExponentRow& row);
ordered_json to_json(const std::vector<ExponentRow>& rows);
std::string to_csv(const std::vector<ExponentRow>& rows);

ordered_json to_json(const DecayReport& report);
std::string to_csv(const DecayReport& report);

ordered_json to_json(const SeedSearchResult& result);
ordered_json to_json(const ContractionCheck& check);
ordered_json to_json(const ProductFormCounterexample& c);

/// Fixed-point text with `digits` decimals ("0.6114").
std::string fixed(double x, int digits);

}  // namespace fibgirth
