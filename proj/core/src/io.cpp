#include "cmtfa/io.hpp"

#include <fstream>
#include <ostream>

#include <fmt/format.h>

#include "cmtfa/errors.hpp"

namespace cmtfa::io {
namespace {

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) throw DomainError(fmt::format("'{}' must be an array of numbers", what));
  std::vector<double> out;
  for (const auto& item : j) {
    if (!item.is_number()) throw DomainError(fmt::format("'{}' must contain only numbers", what));
    out.push_back(item.get<double>());
  }
  return out;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw DomainError(fmt::format("missing field '{}'", name));
  }
  return j.at(name);
}

void write_row(std::ostream& out, std::string_view label, const auto& values,
               Eigen::Index count) {
  if (!label.empty()) out << label << ',';
  for (Eigen::Index c = 0; c < count; ++c) {
    if (c > 0) out << ',';
    out << format_number(values(c));
  }
  out << '\n';
}

void write_header(std::ostream& out, std::string_view first, Eigen::Index n) {
  if (!first.empty()) out << first << ',';
  for (Eigen::Index c = 0; c < n; ++c) {
    if (c > 0) out << ',';
    out << 'X' << (c + 1);
  }
  out << '\n';
}

}  // namespace

Json to_json(const EdgeWeightVector& alpha) {
  Json entries = Json::array();
  for (double a : alpha.entries()) entries.push_back(a);
  return Json{{"alpha", std::move(entries)}};
}

EdgeWeightVector edge_weights_from_json(const Json& j) {
  return EdgeWeightVector(numbers(field(j, "alpha"), "alpha"));
}

Json to_json(const DominanceVerdict& verdict) {
  Json out;
  out["branch"] = to_string(verdict.branch);
  out["margin"] = verdict.margin;
  out["dominant_index"] =
      verdict.dominant_index ? Json(*verdict.dominant_index + 1) : Json(nullptr);
  return out;
}

Json to_json(const FactorDecomposition& decomp) {
  Json out;
  out["sigma_t"] = matrix_json(decomp.sigma_t);
  out["d"] = vector_json(decomp.d);
  out["branch"] = to_string(decomp.branch);
  out["trace"] = decomp.trace_sigma_t;
  return out;
}

FactorDecomposition decomposition_from_json(const Json& j) {
  FactorDecomposition out;
  const auto d = numbers(field(j, "d"), "d");
  const auto n = static_cast<Eigen::Index>(d.size());
  const Json& rows = field(j, "sigma_t");
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
    throw DomainError("'sigma_t' must be an n x n array matching 'd'");
  }
  out.sigma_t.resize(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto row = numbers(rows[static_cast<std::size_t>(r)], "sigma_t");
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw DomainError("'sigma_t' must be an n x n array matching 'd'");
    }
    for (Eigen::Index c = 0; c < n; ++c) out.sigma_t(r, c) = row[static_cast<std::size_t>(c)];
  }
  out.d = Eigen::Map<const Vector>(d.data(), n);
  const Json& branch = field(j, "branch");
  if (!branch.is_string()) throw DomainError("'branch' must be a string");
  out.branch = branch_from_string(branch.get<std::string>());
  const Json& trace = field(j, "trace");
  if (!trace.is_number()) throw DomainError("'trace' must be a number");
  out.trace_sigma_t = trace.get<double>();
  return out;
}

Json to_json(const VerificationReport& report) {
  Json out;
  out["d_nonneg"] = report.d_nonneg;
  out["lambda_min_zero"] = report.lambda_min_zero;
  out["null_space"] = report.null_space;
  out["eq13"] = report.eq13;
  out["pass"] = report.pass;
  out["reconstruction"] = report.reconstruction;
  out["witness_rank"] = report.witness_rank;
  Json zero = Json::array();
  for (auto i : report.zero_index_set) zero.push_back(i + 1);
  out["zero_index_set"] = std::move(zero);
  out["note"] = report.note;
  const auto& r = report.residuals;
  out["residuals"] = Json{{"min_d", r.min_d},
                          {"lambda_min", r.lambda_min},
                          {"null_space", r.null_space},
                          {"eq13", r.eq13},
                          {"reconstruction", r.reconstruction},
                          {"min_multiplier", r.min_multiplier}};
  return out;
}

Json to_json(const OracleResult& result) {
  Json out;
  out["method"] = to_string(result.method);
  out["best_d"] = vector_json(result.best_d);
  out["best_trace"] = result.best_trace;
  out["iterations"] = result.iterations;
  out["converged"] = result.converged;
  if (result.method == OracleMethod::GridRefine) {
    out["final_resolution"] = result.final_resolution;
    out["round_traces"] = result.round_traces;
  }
  return out;
}

Json to_json(const ClusterSpec& spec) {
  return Json{{"sizes", spec.sizes}, {"delta", spec.delta}};
}

ClusterSpec cluster_spec_from_json(const Json& j) {
  ClusterSpec spec;
  const Json& sizes = field(j, "sizes");
  if (!sizes.is_array()) throw DomainError("'sizes' must be an array of integers");
  for (const auto& s : sizes) {
    if (!s.is_number_integer() || s.get<long long>() < 0) {
      throw DomainError("'sizes' must contain non-negative integers");
    }
    spec.sizes.push_back(s.get<std::size_t>());
  }
  const Json& delta = field(j, "delta");
  if (!delta.is_number()) throw DomainError("'delta' must be a number");
  spec.delta = delta.get<double>();
  validate(spec);
  return spec;
}

Json to_json(const Estimate& estimate) {
  return Json{{"value", estimate.value},
              {"half_width", estimate.half_width},
              {"trials", estimate.trials}};
}

Json to_json(const TreeFeasibilityReport& report) {
  Json out;
  out["necessary_holds"] = report.necessary_holds;
  out["sufficient_holds"] = report.sufficient_holds;
  out["exact_joint_probability"] = report.exact_joint_probability;
  out["symmetric_joint_probability"] = report.symmetric_joint_probability;
  out["threshold"] = report.threshold;
  out["log_threshold"] = report.log_threshold;
  out["log_mean_factorial"] = report.log_mean_factorial;
  out["log_min_factorial"] = report.log_min_factorial;
  out["guard_band"] = report.guard_band;
  out["mc_estimate"] = report.mc_estimate ? to_json(*report.mc_estimate) : Json(nullptr);
  return out;
}

Json to_json(const DensityCheck& check) {
  return Json{{"ks_deviation", check.ks_deviation},
              {"empirical_mass", check.empirical_mass},
              {"expected_mass", check.expected_mass},
              {"accepted", check.accepted}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError(fmt::format("cannot open '{}'", path));
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(fmt::format("invalid JSON in '{}': {}", path, e.what()));
  }
}

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

void write_csv(std::ostream& out, const SampleBatch& batch) {
  const Matrix& x = batch.observations;
  write_header(out, "", x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) write_row(out, "", x.row(r), x.cols());
}

void write_csv(std::ostream& out, const FactorDecomposition& decomp) {
  const Eigen::Index n = decomp.sigma_t.rows();
  write_header(out, "row", n);
  for (Eigen::Index r = 0; r < n; ++r) {
    write_row(out, fmt::format("sigma_t_{}", r + 1), decomp.sigma_t.row(r), n);
  }
  write_row(out, "d", decomp.d, n);
}

}  // namespace cmtfa::io
