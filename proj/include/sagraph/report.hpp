#pragma once

// JSON forms of the result types. Non-finite numbers are written as the
// strings "inf", "-inf" and "nan" since JSON has no literal for them.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sagraph/boundary.hpp"
#include "sagraph/covering.hpp"
#include "sagraph/criteria.hpp"
#include "sagraph/io.hpp"
#include "sagraph/operators.hpp"
#include "sagraph/verification.hpp"

namespace sagraph {

inline constexpr const char* kToolVersion = "sa-graph 0.1.0";

struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  /// Input name (file path or family descriptor) to content digest.
  std::map<std::string, std::string> input_digests;
  std::string tool_version = kToolVersion;
  std::optional<std::uint64_t> seed;
  /// Deterministic placeholder unless the caller supplies a time.
  std::string timestamp = "not-recorded";
};

json number_json(double value);

json to_json(const RunManifest& m);
json to_json(const CriterionReport& r);
/// Arrays longer than `keep` are cut to their first and last keep/2 entries.
json to_json(const GoleniaTrace& t, std::size_t keep = 200);
json to_json(const ProbeReport& r);
json to_json(const SuiteSummary& s);
json to_json(const DistanceBounds& d);
json to_json(const ValidationReport& r);
json to_json(const IntrinsicCheckResult& r, const WeightedGraph& g);
json to_json(const SpectralResult& r);
json to_json(const CompletenessVerdict& v);

/// Serializes with two-space indentation and a trailing newline.
std::string dump(const json& j);

}  // namespace sagraph
