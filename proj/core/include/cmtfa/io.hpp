#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cmtfa/certificate.hpp"
#include "cmtfa/dominance.hpp"
#include "cmtfa/model.hpp"
#include "cmtfa/oracle.hpp"
#include "cmtfa/treesim.hpp"

// JSON and CSV encodings of the domain types. Objects keep field order as
// documented so the output is byte-stable.
namespace cmtfa::io {

using Json = nlohmann::ordered_json;

/// {"alpha": [...]}
Json to_json(const EdgeWeightVector& alpha);
EdgeWeightVector edge_weights_from_json(const Json& j);

/// {"branch", "margin", "dominant_index"}; dominant_index is 1-based or null.
Json to_json(const DominanceVerdict& verdict);

/// {"sigma_t": [[...]], "d": [...], "branch", "trace"}
Json to_json(const FactorDecomposition& decomp);
FactorDecomposition decomposition_from_json(const Json& j);

/// {"d_nonneg", "lambda_min_zero", "null_space", "eq13", "pass",
///  "reconstruction", "witness_rank", "zero_index_set", "note", "residuals"}
Json to_json(const VerificationReport& report);

Json to_json(const OracleResult& result);

/// {"sizes": [...], "delta": ...}
Json to_json(const ClusterSpec& spec);
ClusterSpec cluster_spec_from_json(const Json& j);

Json to_json(const TreeFeasibilityReport& report);
Json to_json(const Estimate& estimate);
Json to_json(const DensityCheck& check);

/// Reads and parses a JSON file; throws DomainError on I/O or parse failure.
Json read_json_file(const std::string& path);

/// 17 significant digits, the format used for every CSV number.
std::string format_number(double value);

/// Header X1..Xn, one observation per row, LF line endings.
void write_csv(std::ostream& out, const SampleBatch& batch);

/// Header row,X1..Xn; rows sigma_t_1..sigma_t_n then d.
void write_csv(std::ostream& out, const FactorDecomposition& decomp);

}  // namespace cmtfa::io
