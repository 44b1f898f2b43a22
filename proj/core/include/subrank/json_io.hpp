#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "subrank/bounds.hpp"
#include "subrank/degeneration.hpp"
#include "subrank/hm_witness.hpp"
#include "subrank/loop_group.hpp"

namespace subrank {

using Json = nlohmann::json;

/// Library version string embedded in every certificate.
const char* version();

/// All readers throw InputError on malformed documents.
Json to_json(const Field& field);
Field field_from_json(const Json& j);

Json to_json(const LaurentSeries& s);
/// Accepts a series object or a bare scalar string (an exact constant).
LaurentSeries series_from_json(const Json& j, const Field& field);

/// {"field": ..., "rows": [[series, ...], ...]}
Json to_json(const SeriesMatrix& m);
/// `fallback` is used when the document carries no "field" key.
SeriesMatrix series_matrix_from_json(const Json& j, const Field& fallback);

/// Nested arrays of scalar strings.
Json scalar_rows_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& rows, const Field& field);

Json to_json(const CimDecomposition& dec);
CimDecomposition cim_from_json(const Json& j, const Field& field);

/// {"dims": [...], "entries": [{"idx": [1-based], "value": scalar}, ...], "field": ...}
Json to_json(const Tensor& t);
Tensor tensor_from_json(const Json& j, const Field& fallback);

Json to_json(const OneParamSubgroup& lambda);
OneParamSubgroup subgroup_from_json(const Json& j, const Field& field);

std::string to_string(FactorRep rep);
FactorRep factor_rep_from_string(const std::string& s);

/// Witness input: {"g": [matrix, ...], "p": tensor, "rep": ["std" | "sym3", ...] (optional)}.
struct WitnessInput {
  std::vector<SeriesMatrix> g;
  Tensor p;
  std::vector<FactorRep> reps;
};
Json to_json(const WitnessInput& in);
WitnessInput witness_input_from_json(const Json& j, const Field& fallback);

/// Witness document; embeds the input so that it can be re-verified on its own.
Json witness_to_json(const WitnessInput& in, const HmWitness& w);
HmWitness witness_from_json(const Json& j, WitnessInput& in);

Json to_json(const DegenerationCertificate& cert);
DegenerationCertificate certificate_from_json(const Json& j);

Json to_json(const CrossoverTable& table);

}  // namespace subrank
