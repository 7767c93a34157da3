#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "kreinfock/models.hpp"

namespace kreinfock {

using Json = nlohmann::ordered_json;

enum class CheckGroup { kRelations, kAdjoint, kVacuum, kCyclicity, kDecomposition, kDaggerSwap };

std::string to_string(CheckGroup group);
/// Comma-separated group names; "all" or "" selects everything. Throws
/// kConfigInvalid on an unknown name.
std::set<CheckGroup> parse_check_list(const std::string& list);

inline constexpr std::uint64_t kDefaultSeed = 20090420;

struct RunConfig {
  std::string model;  // registered model name or path to a JSON model file
  ModelParams params;
  std::optional<int> cutoff;
  std::optional<double> tol;  // overrides every check tolerance
  double metric_tol = kDefaultMetricTol;
  std::uint64_t seed = kDefaultSeed;
  std::set<CheckGroup> checks;  // empty = all applicable
  std::optional<std::string> out;
};

enum class Verdict { kPass, kFail, kInfo };

std::string to_string(Verdict verdict);

struct CheckRecord {
  std::string name;
  CheckGroup group = CheckGroup::kRelations;
  std::string anchor;
  double residual = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::kPass;
  std::string domain;
  Json details = Json::object();
};

struct VerificationReport {
  ModelSpec model;
  std::string source;  // "builtin" or the model file path
  std::uint64_t seed = 0;
  Eigen::Index basis_size = 0;
  Eigen::Index full_basis_size = 0;
  double wall_time_s = 0.0;
  std::vector<CheckRecord> records;

  /// True iff every non-informative record passed.
  bool passed() const;
  const CheckRecord* find(const std::string& name) const;
  Json to_json(bool include_wall_time = true) const;
};

/// Fixed table of anchor strings; every record's anchor is looked up here.
const std::string& anchor_for(const std::string& key);
const std::vector<std::pair<std::string, std::string>>& anchor_table();

/// Reads a JSON model description
///   {name, statistics, dim, eta: {rows: [[{re, im}, ...], ...]}, cutoff, probes?}
/// with optional probes [{f: [{re, im}...], g: [...]}]. The metric is checked
/// with validate_metric at metric_tol. Throws kParseError, kSchemaError or
/// kMetricInvalid.
ModelSpec load_model_file(const std::string& path, double metric_tol = kDefaultMetricTol);

/// Registered models with parameter schemas and anchors.
Json list_models();

/// Runs the selected checks. Throws kConfigInvalid, kModelBuildFailed or
/// kSizeOverflow.
VerificationReport run_suite(const RunConfig& config);

/// Fundamental decomposition of eta and of Gamma(eta) on the model's Fock space,
/// sector by sector.
Json describe_decomposition(const ModelSpec& model, double metric_tol = kDefaultMetricTol);

/// Resolves a registered name or a model file; wraps failures in
/// kModelBuildFailed.
ModelSpec resolve_model(const RunConfig& config, std::string* source = nullptr);

/// 0 when the report passes, 1 otherwise.
int exit_code(const VerificationReport& report);
/// 2 for every configuration, build or size failure.
int exit_code(const Error& error);

}  // namespace kreinfock
