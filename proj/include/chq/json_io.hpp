#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "chq/axioms.hpp"
#include "chq/fit.hpp"
#include "chq/product_space.hpp"

namespace chq {

using Json = nlohmann::json;

// Set functions: {"n": int, "kind": "capacity"|"mobius",
//                 "values": {"": v0, "1": v1, "1,2": v12, ...}}
// with 1-based comma-joined member lists, "" for the empty set. Missing
// subsets default to 0 for a mobius rep and are an error for a capacity.
Json capacity_to_json(const Capacity& c);
Json mobius_to_json(const MobiusRep& m);

struct SetFunctionFile {
  std::string kind;  // "capacity" | "mobius"
  MobiusRep mobius;  // canonical internal form
};
SetFunctionFile set_function_from_json(const Json& j);

// Model file: {"criteria": [{"name", "levels", "values"?}, ...],
//              "capacity": <set function>?}
struct ModelFile {
  ProductModel model;
  std::optional<MobiusRep> mobius;
};
Json model_file_to_json(const ModelFile& mf);
ModelFile model_file_from_json(const Json& j);

// Preference file: {"kind": "ranked"|"pairs", "alternatives": [[...], ...],
//                   "ranks": [...]?, "pairs": [{"better","worse","strict"}]?}
Json prefs_to_json(const PreferenceStructure& p);
PreferenceStructure prefs_from_json(const Json& j);

Json report_to_json(const AxiomReport& r);
Json fit_result_to_json(const FitResult& r);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace chq
