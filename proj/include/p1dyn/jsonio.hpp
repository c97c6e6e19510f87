#pragma once

// JSON serialization for the CLI surface. Every top-level document carries a
// schema_version field; output is byte-stable for fixed inputs.

#include <json.hpp>

#include "p1dyn/census.hpp"
#include "p1dyn/constructions.hpp"

namespace p1dyn {

inline constexpr int kSchemaVersion = 1;

nlohmann::json field_to_json(Field F);
nlohmann::json fe_to_json(const Fe& e);
nlohmann::json mobius_to_json(const Mobius& m);
nlohmann::json group_to_json(const GroupDesc& g);
nlohmann::json ratmap_to_json(const RatMap& f);
nlohmann::json aut_to_json(const AutResult& a);
nlohmann::json record_to_json(const ConstructionRecord& rec, const VerifyOutcome& outcome);
nlohmann::json verdict_to_json(uint64_t p, const ModuliPoint& pt, const LocusVerdict& v);
nlohmann::json census_to_json(const CensusTable& t);

// inverse directions for CLI input
Field field_from_json(const nlohmann::json& j);
Fe fe_from_json(const nlohmann::json& j, Field F);
RatMap ratmap_from_json(const nlohmann::json& j);

}  // namespace p1dyn
