#include "sagraph/report.hpp"

#include <cmath>

namespace sagraph {

json number_json(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

namespace {

json numbers(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(number_json(v));
  return out;
}

template <class T>
json truncated(const std::vector<T>& values, std::size_t keep) {
  json out = json::array();
  auto put = [&](std::size_t i) {
    if constexpr (std::is_same_v<T, double>) {
      out.push_back(number_json(values[i]));
    } else {
      out.push_back(values[i]);
    }
  };
  if (values.size() <= keep) {
    for (std::size_t i = 0; i < values.size(); ++i) put(i);
    return out;
  }
  const std::size_t half = keep / 2;
  for (std::size_t i = 0; i < half; ++i) put(i);
  for (std::size_t i = values.size() - half; i < values.size(); ++i) put(i);
  return out;
}

}  // namespace

json to_json(const RunManifest& m) {
  json out{{"command", m.command},
           {"arguments", m.arguments},
           {"input_digests", m.input_digests},
           {"tool_version", m.tool_version},
           {"timestamp", m.timestamp}};
  out["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  return out;
}

json to_json(const CriterionReport& r) {
  json constants = json::object();
  for (const auto& [name, value] : r.constants) constants[name] = number_json(value);
  json witnesses = json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back({{"vertex", w.vertex}, {"what", w.what}, {"value", number_json(w.value)}});
  }
  json out{{"criterion", to_string(r.criterion)},
           {"verdict", to_string(r.verdict)},
           {"constants", std::move(constants)},
           {"witnesses", std::move(witnesses)},
           {"notes", r.notes},
           {"input_digest", r.input_digest}};
  out["truncation_rows"] = r.truncation_rows ? json(*r.truncation_rows) : json(nullptr);
  out["certificate"] = r.certificate ? json(*r.certificate) : json(nullptr);
  return out;
}

json to_json(const GoleniaTrace& t, std::size_t keep) {
  json out{{"delta", number_json(t.delta)},
           {"lambda", number_json(t.lambda)},
           {"length", t.a.size()},
           {"classification",
            {{"verdict", to_string(t.classification.verdict)},
             {"ratio", number_json(t.classification.ratio)},
             {"raabe", number_json(t.classification.raabe)}}},
           {"path", truncated(t.path, keep)},
           {"a", truncated(t.a, keep)},
           {"log_a", truncated(t.log_a, keep)},
           {"partial_sums", truncated(t.partial_sums, keep)}};
  out["truncated"] = t.a.size() > keep;
  return out;
}

json to_json(const ProbeReport& r) {
  return {{"rows", r.rows},
          {"lambda_min", numbers(r.plain)},
          {"lambda_min_penalized", numbers(r.penalized)},
          {"gap", numbers(r.gap)},
          {"boundary_insensitive", r.boundary_insensitive},
          {"note", r.note}};
}

json to_json(const SuiteSummary& s) {
  return {{"suite", s.suite},
          {"instances", s.instances},
          {"passed", s.passed},
          {"failed", s.failed},
          {"worst_rel_err", number_json(s.worst_rel_err)},
          {"failures", s.failures}};
}

json to_json(const DistanceBounds& d) {
  return {{"lower", number_json(d.lower)},
          {"upper", number_json(d.upper)},
          {"assumptions", d.assumptions}};
}

json to_json(const ValidationReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back({{"kind", v.kind}, {"detail", v.detail}});
  return {{"valid", r.valid()}, {"connected", r.connected}, {"violations", std::move(violations)}};
}

json to_json(const IntrinsicCheckResult& r, const WeightedGraph& g) {
  json out{{"max_ratio", number_json(r.max_ratio)}, {"passes", r.passes}};
  out["worst_vertex"] = g.vertex_count() > 0 ? json(g.id(r.worst_vertex).name()) : json(nullptr);
  return out;
}

json to_json(const SpectralResult& r) {
  return {{"eigenvalues", numbers(r.eigenvalues)},
          {"complete", r.complete},
          {"residual", number_json(r.residual)},
          {"spectral_radius", number_json(r.spectral_radius)},
          {"iterations", r.iterations}};
}

json to_json(const CompletenessVerdict& v) {
  return {{"verdict", to_string(v.verdict)},
          {"evidence", v.evidence},
          {"exponent", number_json(v.exponent)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace sagraph
