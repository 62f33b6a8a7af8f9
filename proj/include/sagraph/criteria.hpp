#pragma once

// Checkers for the four sufficient conditions for essential
// self-adjointness. Infinite families are judged through their certified
// row formulas; finite graphs and truncations get qualified verdicts.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sagraph/covering.hpp"
#include "sagraph/families.hpp"
#include "sagraph/graph.hpp"
#include "sagraph/operators.hpp"

namespace sagraph {

enum class Criterion { Thm1, Thm2, Thm3, Golenia };
enum class Verdict { Pass, Fail, Inconclusive, VerifiedUpToTruncation };

std::string to_string(Criterion c);
std::string to_string(Verdict v);
Criterion criterion_from_string(const std::string& name);
/// 0 Pass, 1 Fail, 2 Inconclusive or qualified.
int exit_code(Verdict v);

struct Witness {
  std::string vertex;
  std::string what;
  double value = 0.0;
};

struct CriterionReport {
  Criterion criterion = Criterion::Thm1;
  Verdict verdict = Verdict::Inconclusive;
  std::map<std::string, double> constants;
  std::vector<Witness> witnesses;
  std::optional<int> truncation_rows;
  std::optional<std::string> certificate;
  std::vector<std::string> notes;
  std::string input_digest;
};

/// What a checker looks at: an infinite family seen through a truncation, or
/// a plain finite graph.
struct CheckSubject {
  std::optional<LayeredFamilySpec> family;
  int rows = 0;
  GraphBundle bundle;
  /// Graph mode only: q table (defaults to 1) and a user covering whose
  /// phases are the bundle's.
  std::optional<std::vector<double>> q;
  std::optional<GoodCovering> cover;

  static CheckSubject of_family(const LayeredFamilySpec& spec, int rows);
  static CheckSubject of_graph(GraphBundle bundle);
};

struct CheckOptions {
  /// Fixed constant in the potential minorant; nullopt searches for the least one.
  std::optional<double> C;
};

CriterionReport theorem1_check(const CheckSubject& subject, const CheckOptions& options = {});
CriterionReport theorem2_check(const CheckSubject& subject, const CheckOptions& options = {});
CriterionReport theorem3_check(const CheckSubject& subject, const CheckOptions& options = {});

enum class SeriesClass { Diverges, Converges, Inconclusive };
std::string to_string(SeriesClass c);

struct SeriesClassification {
  SeriesClass verdict = SeriesClass::Inconclusive;
  double ratio = 0.0;
  double raabe = 0.0;
};

/// Ratio test on the tail window of positive terms given by their logs, with
/// a Raabe-type slope n (t_n / t_{n+1} - 1) when the ratio is near 1.
SeriesClassification classify_series(std::span<const double> log_terms, double margin = 0.05,
                                     double window = 0.25);

struct GoleniaOptions {
  double delta = 1.0;
  /// nullopt: 0, shifted by 1e-6 steps until lambda + Deg + W != 0 on the path.
  std::optional<double> lambda;
  /// Graph mode path; family mode always follows the spine x_{n,1}.
  std::optional<std::vector<VertexIndex>> path;
  int n_max = 10000;
  double margin = 0.05;
  double window = 0.25;
};

struct GoleniaTrace {
  std::vector<std::string> path;
  std::vector<double> a;
  std::vector<double> log_a;
  /// sum_{k <= n} a_k^2 mu(y_k); may overflow to +inf for divergent series.
  std::vector<double> partial_sums;
  SeriesClassification classification;
  double delta = 1.0;
  double lambda = 0.0;
};

GoleniaTrace golenia_trace(const CheckSubject& subject, const GoleniaOptions& options = {});
CriterionReport golenia_check(const CheckSubject& subject, const GoleniaOptions& options = {},
                              GoleniaTrace* trace = nullptr);

struct ProbeReport {
  std::vector<int> rows;
  std::vector<double> plain;
  std::vector<double> penalized;
  std::vector<double> gap;
  bool boundary_insensitive = false;
  std::string note;
};

inline constexpr double kFrontierPenalty = 1e6;

/// Lowest eigenvalue on nested truncations, plain and with a large potential
/// added on the frontier. A heuristic probe only.
ProbeReport spectral_stability_probe(const LayeredFamilySpec& spec, std::span<const int> rows,
                                     const SpectralOptions& options = {});

}  // namespace sagraph
