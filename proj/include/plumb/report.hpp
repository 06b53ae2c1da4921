#pragma once

// JSON and DOT renderings shared by the command-line tool.

#include <optional>
#include <string>

#include <json.hpp>

#include "plumb/census.hpp"
#include "plumb/engine.hpp"
#include "plumb/forest.hpp"
#include "plumb/relations.hpp"

namespace plumb {

using Json = nlohmann::json;

/// ["num", "den"] as strings.
Json rational_json(const Rational& r);
Json char_vector_json(const CharVector& k);
Json forest_json(const PlumbingForest& forest);

struct CheckSummary {
  bool negdef = false;
  Int det;
  Int h1;
  std::optional<std::uint64_t> spinc;  // only for negative-definite forests within budget
  bool minimal = false;
};

CheckSummary check_summary(const PlumbingForest& forest, std::uint64_t budget);
Json check_json(const CheckSummary& s);

Json basic_json(const BasicSet& basics);
Json verdict_json(const LSpaceVerdict& v, bool rational);
Json dinv_json(const std::vector<DInvariant>& ds);
Json hf_json(const HfTable& table, bool certified);
Json reduction_json(const Reduction& r);
Json census_record_json(const CensusRecord& r);

/// Vertices labelled with id and weight; when basics are supplied a table
/// node lists the basic vectors per Spin^c class.
std::string forest_dot(const PlumbingForest& forest, const BasicSet* basics = nullptr);

/// One record-shaped node per Spin^c class with its degree/count rows.
std::string hf_table_dot(const HfTable& table);

}  // namespace plumb
