#include "sagraph/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sagraph/boundary.hpp"
#include "sagraph/digest.hpp"
#include "sagraph/error.hpp"
#include "sagraph/metrics.hpp"

namespace sagraph {

std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::Thm1: return "thm1";
    case Criterion::Thm2: return "thm2";
    case Criterion::Thm3: return "thm3";
    case Criterion::Golenia: return "golenia";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::VerifiedUpToTruncation: return "VerifiedUpToTruncation";
  }
  return "Inconclusive";
}

Criterion criterion_from_string(const std::string& name) {
  if (name == "thm1") return Criterion::Thm1;
  if (name == "thm2") return Criterion::Thm2;
  if (name == "thm3") return Criterion::Thm3;
  if (name == "golenia") return Criterion::Golenia;
  throw InputError("unknown criterion: " + name);
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    default: return 2;
  }
}

std::string to_string(SeriesClass c) {
  switch (c) {
    case SeriesClass::Diverges: return "Diverges";
    case SeriesClass::Converges: return "Converges";
    case SeriesClass::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

CheckSubject CheckSubject::of_family(const LayeredFamilySpec& spec, int rows) {
  CheckSubject s;
  s.family = spec;
  s.rows = rows;
  s.bundle = generate(spec, rows);
  return s;
}

CheckSubject CheckSubject::of_graph(GraphBundle bundle) {
  CheckSubject s;
  s.bundle = std::move(bundle);
  return s;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string subject_digest(const CheckSubject& s, const std::string& extra) {
  Fnv1a h;
  h.add(digest(s.bundle));
  if (s.family) h.add(s.family->describe());
  h.add(static_cast<std::uint64_t>(s.rows));
  if (s.q) {
    for (double v : *s.q) h.add(v);
  }
  h.add(extra);
  return h.hex();
}

std::string options_tag(const CheckOptions& o) {
  std::ostringstream os;
  os.precision(17);
  os << "C=";
  if (o.C) os << *o.C;
  else os << "search";
  return os.str();
}

EdgeLengthAssignment family_lengths(const LayeredFamilySpec& spec, const WeightedGraph& g,
                                    LengthKind kind) {
  EdgeLengthAssignment len;
  len.values.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    len.values.push_back(spec.length(*g.id(e.u).layer(), *g.id(e.v).layer(), kind));
  }
  return len;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// Extra potential entering the minorant next to W: zero for the plain
// criterion, the effective potential for the covering criterion.
struct MinorantTerms {
  std::vector<double> extra;
  RowFormula lower;
  std::optional<RowFormula> upper;
  std::int64_t first_row = 1;
  double row1_lower = 0.0;
  std::string label = "W";
};

void minorant_check(const CheckSubject& subject, const CheckOptions& options,
                    const MinorantTerms& terms, CriterionReport& report) {
  const LayeredFamilySpec& spec = *subject.family;
  const WeightedGraph& g = subject.bundle.graph;
  report.truncation_rows = subject.rows;

  const auto len = family_lengths(spec, g, LengthKind::Sigma);
  const auto intrinsic = check_intrinsic(g, len);
  report.constants["intrinsic_max_ratio"] = intrinsic.max_ratio;
  if (!intrinsic.passes) {
    report.verdict = Verdict::Fail;
    report.witnesses.push_back({g.id(intrinsic.worst_vertex).name(), "intrinsic sum exceeds mu",
                                intrinsic.max_ratio});
    return;
  }

  const auto completeness = completeness_verdict(spec, LengthKind::Sigma);
  report.notes.push_back("completeness: " + to_string(completeness.verdict) + "; " +
                         completeness.evidence);
  if (completeness.verdict != Completeness::Incomplete) {
    report.verdict = Verdict::Inconclusive;
    report.notes.emplace_back("the criterion requires an incomplete metric");
    return;
  }
  const auto cert = *spec.step_certificate(LengthKind::Sigma);
  const double p = cert.exponent;

  // Per-vertex requirement on the truncation. D_lower gives the constant that
  // certainly suffices there, D_upper the constant that is certainly needed.
  const auto dist = distance_to_set(g, len, subject.bundle.frontier);
  const auto tail = family_tail_bounds(spec, LengthKind::Sigma, subject.rows);
  double c_trunc = -kInf;
  double c_floor = -kInf;
  VertexIndex worst_lo = 0;
  VertexIndex worst_up = 0;
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    const double w = subject.bundle.potential[x] + (terms.extra.empty() ? 0.0 : terms.extra[x]);
    const double d_lo = dist[x] + tail.lower;
    const double d_up = dist[x] + tail.upper;
    const double need_lo = 0.5 / (d_lo * d_lo) - w;
    const double need_up = 0.5 / (d_up * d_up) - w;
    if (need_lo > c_trunc) {
      c_trunc = need_lo;
      worst_lo = x;
    }
    if (need_up > c_floor) {
      c_floor = need_up;
      worst_up = x;
    }
  }
  report.constants["C_truncation"] = c_trunc;
  report.constants["C_lower_bound"] = c_floor;
  report.constants["step_exponent"] = p;

  // Row formulas valid on the whole infinite graph.
  const double gap = p - 1.0;
  RowFormula forcing_upper =
      RowFormula::power(gap * gap / (2.0 * cert.escape_coef * cert.escape_coef), 2.0 * gap, 1);
  RowFormula forcing_lower = RowFormula::power(
      gap * gap / (2.0 * cert.spine_coef * cert.spine_coef * p * p), 2.0 * gap, 0);

  RowFormula deficit = forcing_upper;
  deficit += spec.potential.negated();
  deficit += terms.lower.negated();
  const auto sup = certified_supremum(deficit, terms.first_row);
  double c_cert = kInf;
  if (sup) {
    c_cert = sup->bound;
    if (terms.first_row > 1) {
      c_cert = std::max(c_cert, forcing_upper(1) - spec.potential(1) - terms.row1_lower);
    }
  }
  bool unbounded = false;
  if (terms.upper) {
    RowFormula growth = forcing_lower;
    growth += spec.potential.negated();
    growth += terms.upper->negated();
    unbounded = certified_unbounded(growth);
    if (unbounded) report.notes.push_back("deficit on the spine grows like " + growth.describe());
  }

  std::ostringstream cert_text;
  if (sup) {
    cert_text << "1/(2 D^2) <= " << forcing_upper.describe() << " on row n; " << terms.label
              << " + C - 1/(2 D^2) >= 0 for all rows with C = " << fmt(c_cert)
              << " (deficit <= 0 from row " << sup->settle_row << " on)";
  }

  auto fail_at = [&](VertexIndex x, double need) {
    report.verdict = Verdict::Fail;
    report.witnesses.push_back({g.id(x).name(), "required C (from D upper bound)", need});
  };

  if (options.C) {
    const double c = *options.C;
    report.constants["C"] = c;
    if (c < c_floor) {
      fail_at(worst_up, c_floor);
    } else if (sup && c >= c_cert) {
      report.verdict = Verdict::Pass;
      report.certificate = cert_text.str();
    } else if (unbounded) {
      report.verdict = Verdict::Fail;
      report.witnesses.push_back({g.id(worst_up).name(), "required C grows without bound", c_floor});
    } else if (c >= c_trunc) {
      report.verdict = Verdict::VerifiedUpToTruncation;
    } else {
      report.verdict = Verdict::Inconclusive;
      report.witnesses.push_back({g.id(worst_lo).name(), "C below the truncation requirement", c_trunc});
    }
    return;
  }
  if (sup) {
    report.verdict = Verdict::Pass;
    report.constants["C"] = c_cert;
    report.certificate = cert_text.str();
  } else if (unbounded) {
    fail_at(worst_up, c_floor);
    report.witnesses.back().what = "required C grows without bound; value at truncation";
  } else {
    report.verdict = Verdict::VerifiedUpToTruncation;
    report.constants["C"] = c_trunc;
    report.witnesses.push_back({g.id(worst_lo).name(), "largest truncation requirement", c_trunc});
  }
}

void graph_mode_incomplete_note(const CheckSubject& subject, CriterionReport& report) {
  report.verdict = Verdict::Inconclusive;
  if (subject.bundle.frontier.empty()) {
    report.notes.emplace_back(
        "finite metric spaces are complete; the criterion requires an incomplete metric");
  } else {
    report.notes.emplace_back(
        "completeness cannot be decided from a finite prefix without family metadata");
  }
}

}  // namespace

CriterionReport theorem1_check(const CheckSubject& subject, const CheckOptions& options) {
  CriterionReport report;
  report.criterion = Criterion::Thm1;
  report.input_digest = subject_digest(subject, "thm1 " + options_tag(options));
  if (!subject.family) {
    graph_mode_incomplete_note(subject, report);
    return report;
  }
  MinorantTerms terms;
  terms.upper = RowFormula::zero();
  minorant_check(subject, options, terms, report);
  return report;
}

CriterionReport theorem2_check(const CheckSubject& subject, const CheckOptions& options) {
  CriterionReport report;
  report.criterion = Criterion::Thm2;
  report.input_digest = subject_digest(subject, "thm2 " + options_tag(options));
  const WeightedGraph& g = subject.bundle.graph;

  if (!subject.family) {
    if (subject.cover) {
      const auto ep = effective_potential(g, subject.bundle.theta, *subject.cover);
      double lowest = kInf;
      for (double p : ep.cell_p) lowest = std::min(lowest, p);
      report.constants["min_cell_eigenvalue"] = lowest;
      report.constants["m"] = subject.cover->m;
    }
    graph_mode_incomplete_note(subject, report);
    return report;
  }

  const LayeredFamilySpec& spec = *subject.family;
  const auto bounds = spec.effective_potential_bounds();
  if (!bounds) {
    report.verdict = Verdict::Inconclusive;
    report.notes.emplace_back("family has no certified good covering");
    return report;
  }
  const auto tc = triangle_covering(g);
  MinorantTerms terms;
  terms.label = "W_e + W";
  if (!tc.cover.cells.empty()) {
    const auto ep = effective_potential(g, subject.bundle.theta, tc.cover);
    terms.extra = ep.values;
    double lowest = kInf;
    for (double p : ep.cell_p) lowest = std::min(lowest, p);
    report.constants["min_cell_eigenvalue"] = lowest;
    report.constants["W_e_first_row"] = ep.values[0];
    // the certified minorant must hold on every materialized vertex
    for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
      const int row = row_of(g, x);
      const double floor_value = row == 1 ? bounds->first_row_lower : bounds->lower(row);
      if (ep.values[x] < floor_value - 1e-9 * std::max(1.0, floor_value)) {
        report.verdict = Verdict::Inconclusive;
        report.witnesses.push_back({g.id(x).name(), "W_e below certified minorant", ep.values[x]});
        return report;
      }
    }
  } else {
    terms.extra.assign(g.vertex_count(), 0.0);
  }
  report.constants["m"] = tc.cover.m;
  report.notes.push_back(bounds->statement);
  terms.lower = bounds->lower;
  terms.upper = bounds->upper;
  terms.first_row = 2;
  terms.row1_lower = bounds->first_row_lower;
  minorant_check(subject, options, terms, report);
  return report;
}

namespace {

// K bound for f = q^{-1/2}, q = c n^e, against crossing steps >= L (j+1)^{-p}:
// |f(j) - f(j+1)| <= c^{-1/2} (e/2) j^{-e/2-1} and (j+1)^p <= 2^p j^p.
std::optional<double> certified_lipschitz(const LayeredFamilySpec& spec) {
  const auto cert = spec.step_certificate(LengthKind::Sigma);
  if (!cert) return std::nullopt;
  if (!spec.q) return 0.0;
  if (spec.q->terms.size() != 1) return std::nullopt;
  const auto& t = spec.q->terms.front();
  if (t.shift != 0 || t.coef < 1.0 || t.exponent < 0.0) return std::nullopt;
  if (t.exponent == 0.0) return 0.0;
  if (cert->exponent - 0.5 * t.exponent - 1.0 > 0.0) return std::nullopt;
  return 0.5 * t.exponent * std::pow(2.0, cert->exponent) / (std::sqrt(t.coef) * cert->escape_coef);
}

bool q_certified_at_least_one(const LayeredFamilySpec& spec) {
  if (!spec.q) return true;
  if (spec.q->terms.size() != 1) return false;
  const auto& t = spec.q->terms.front();
  return t.shift == 0 && t.coef >= 1.0 && t.exponent >= 0.0;
}

}  // namespace

CriterionReport theorem3_check(const CheckSubject& subject, const CheckOptions& options) {
  CriterionReport report;
  report.criterion = Criterion::Thm3;
  report.input_digest = subject_digest(subject, "thm3 " + options_tag(options));
  const WeightedGraph& g = subject.bundle.graph;
  const std::size_t n = g.vertex_count();

  EdgeLengthAssignment len;
  std::vector<double> q;
  if (subject.family) {
    len = family_lengths(*subject.family, g, LengthKind::Sigma);
    q = q_values(*subject.family, g);
    report.truncation_rows = subject.rows;
  } else {
    len = edge_lengths(subject.bundle);
    q = subject.q ? *subject.q : std::vector<double>(n, 1.0);
    if (q.size() != n) throw InputError("q must be defined on every vertex");
  }

  const auto strong = check_strongly_intrinsic(g, len);
  report.constants["strongly_intrinsic_max_ratio"] = strong.max_ratio;
  if (!strong.passes) {
    report.verdict = Verdict::Fail;
    report.witnesses.push_back(
        {g.id(strong.worst_vertex).name(), "strongly intrinsic sum exceeds mu", strong.max_ratio});
    return report;
  }
  for (VertexIndex x = 0; x < n; ++x) {
    if (!(q[x] >= 1.0)) {
      report.verdict = Verdict::Fail;
      report.witnesses.push_back({g.id(x).name(), "q below one", q[x]});
      return report;
    }
  }
  std::vector<double> f(n);
  for (VertexIndex x = 0; x < n; ++x) f[x] = 1.0 / std::sqrt(q[x]);
  const double k_trunc = lipschitz_constant(g, len, f);
  report.constants["K_truncation"] = k_trunc;
  for (VertexIndex x = 0; x < n; ++x) {
    if (subject.bundle.potential[x] < -q[x]) {
      report.verdict = Verdict::Fail;
      report.witnesses.push_back({g.id(x).name(), "W(x) + q(x) < 0", subject.bundle.potential[x] + q[x]});
      return report;
    }
  }

  if (!subject.family) {
    if (subject.bundle.frontier.empty()) {
      report.verdict = Verdict::Pass;
      report.constants["K"] = k_trunc;
      report.certificate = "exhaustive check on a finite graph (finite metric spaces are complete)";
    } else {
      report.verdict = Verdict::Inconclusive;
      report.notes.emplace_back(
          "completeness of the rescaled metric cannot be decided from a finite prefix");
    }
    return report;
  }

  const LayeredFamilySpec& spec = *subject.family;
  const auto completeness = completeness_verdict(spec, LengthKind::SigmaQ);
  report.notes.push_back("completeness under sigma_q: " + to_string(completeness.verdict) + "; " +
                         completeness.evidence);
  if (completeness.verdict == Completeness::Incomplete) {
    report.verdict = Verdict::Fail;
    report.notes.emplace_back("the rescaled metric is not complete");
    return report;
  }

  const auto k_cert = certified_lipschitz(spec);
  const bool q_ok = q_certified_at_least_one(spec);
  RowFormula slack = spec.q ? spec.q->negated() : RowFormula::power(-1.0, 0.0);
  slack += spec.potential.negated();
  const auto sup = certified_supremum(slack, 1);
  const bool w_ok = sup && sup->bound <= 0.0;

  if (k_cert) report.constants["K"] = *k_cert;
  if (completeness.verdict == Completeness::Complete && k_cert && q_ok && w_ok) {
    report.verdict = Verdict::Pass;
    std::ostringstream os;
    os << "q = " << (spec.q ? spec.q->describe() : std::string("1")) << " >= 1; q^{-1/2} is "
       << fmt(*k_cert) << "-Lipschitz; W + q >= 0 on every row; " << completeness.evidence;
    report.certificate = os.str();
    return report;
  }
  if (!k_cert) report.notes.emplace_back("no Lipschitz certificate for q^{-1/2}");
  if (!q_ok) report.notes.emplace_back("q >= 1 not certified beyond the truncation");
  if (!w_ok) report.notes.emplace_back("W >= -q not certified beyond the truncation");
  report.verdict = Verdict::VerifiedUpToTruncation;
  return report;
}

SeriesClassification classify_series(std::span<const double> log_terms, double margin,
                                     double window) {
  SeriesClassification out;
  const std::size_t n = log_terms.size();
  if (n < 8) return out;
  const std::size_t ratios = n - 1;
  const std::size_t width =
      std::min(ratios, std::max<std::size_t>(4, static_cast<std::size_t>(window * ratios)));
  std::vector<double> ratio;
  std::vector<double> raabe;
  for (std::size_t i = ratios - width; i < ratios; ++i) {
    const double step = log_terms[i + 1] - log_terms[i];
    ratio.push_back(std::exp(step));
    // term index is i + 1 (terms are numbered from 1)
    raabe.push_back(static_cast<double>(i + 1) * std::expm1(-step));
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  };
  out.ratio = median(ratio);
  out.raabe = median(raabe);
  if (out.ratio < 1.0 - margin) out.verdict = SeriesClass::Converges;
  else if (out.ratio > 1.0 + margin) out.verdict = SeriesClass::Diverges;
  else if (out.raabe > 1.0 + margin) out.verdict = SeriesClass::Converges;
  else if (out.raabe < 1.0 - margin) out.verdict = SeriesClass::Diverges;
  return out;
}

namespace {

struct PathSample {
  std::string name;
  double deg = 0.0;
  double w = 0.0;
  double mu = 0.0;
};

std::vector<PathSample> golenia_path(const CheckSubject& subject, const GoleniaOptions& options) {
  std::vector<PathSample> out;
  if (subject.family) {
    const auto& spec = *subject.family;
    for (int j = 1; j <= options.n_max; ++j) {
      const RowIndex x{j, 1};
      out.push_back({VertexId(j, 1).name(), spec.weighted_degree(x), spec.potential_at(j),
                     spec.measure(j)});
    }
    return out;
  }
  const WeightedGraph& g = subject.bundle.graph;
  std::vector<VertexIndex> path;
  if (options.path) {
    path = *options.path;
  } else {
    for (int j = 1;; ++j) {
      const auto v = g.find(VertexId(j, 1));
      if (!v) break;
      path.push_back(*v);
    }
    if (path.empty()) throw InputError("golenia check needs a path or a layered graph with a spine");
  }
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] >= g.vertex_count()) throw InputError("path vertex not in graph");
    if (i > 0 && !g.edge_between(path[i - 1], path[i])) {
      throw InputError("path is not a walk: " + g.id(path[i - 1]).name() + " and " +
                       g.id(path[i]).name() + " are not adjacent");
    }
    out.push_back({g.id(path[i]).name(), weighted_degree(g, path[i]),
                   subject.bundle.potential[path[i]], g.mu(path[i])});
  }
  return out;
}

bool violates(double lambda, const PathSample& s) {
  const double v = lambda + s.deg + s.w;
  return std::abs(v) <= 1e-12 * std::max({1.0, std::abs(s.deg), std::abs(s.w)});
}

}  // namespace

GoleniaTrace golenia_trace(const CheckSubject& subject, const GoleniaOptions& options) {
  if (!(options.delta > 0.0)) throw InputError("delta must be positive");
  const auto samples = golenia_path(subject, options);
  GoleniaTrace trace;
  trace.delta = options.delta;
  if (options.lambda) {
    trace.lambda = *options.lambda;
    for (const auto& s : samples) {
      if (violates(trace.lambda, s)) {
        throw InputError("lambda + Deg + W vanishes at vertex " + s.name);
      }
    }
  } else {
    double lambda = 0.0;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const bool bad = std::any_of(samples.begin(), samples.end(),
                                   [&](const PathSample& s) { return violates(lambda, s); });
      if (!bad) break;
      lambda += 1e-6;
    }
    trace.lambda = lambda;
  }

  std::vector<double> log_terms;
  double log_a = 0.0;
  double log_sum = -kInf;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (i > 0) {
      const auto& prev = samples[i - 1];
      log_a += std::log(options.delta / prev.deg + std::abs(1.0 + (trace.lambda + prev.w) / prev.deg));
    }
    trace.path.push_back(s.name);
    trace.log_a.push_back(log_a);
    trace.a.push_back(std::exp(log_a));
    const double log_t = 2.0 * log_a + std::log(s.mu);
    log_terms.push_back(log_t);
    const double hi = std::max(log_sum, log_t);
    log_sum = hi + std::log(std::exp(log_sum - hi) + std::exp(log_t - hi));
    trace.partial_sums.push_back(std::exp(log_sum));
  }
  trace.classification = classify_series(log_terms, options.margin, options.window);
  return trace;
}

CriterionReport golenia_check(const CheckSubject& subject, const GoleniaOptions& options,
                              GoleniaTrace* trace_out) {
  CriterionReport report;
  report.criterion = Criterion::Golenia;
  std::ostringstream tag;
  tag.precision(17);
  tag << "golenia delta=" << options.delta << " lambda="
      << (options.lambda ? std::to_string(*options.lambda) : std::string("auto"))
      << " n_max=" << options.n_max;
  report.input_digest = subject_digest(subject, tag.str());
  auto trace = golenia_trace(subject, options);
  report.constants["delta"] = trace.delta;
  report.constants["lambda"] = trace.lambda;
  report.constants["ratio"] = trace.classification.ratio;
  report.constants["raabe"] = trace.classification.raabe;
  report.constants["terms"] = static_cast<double>(trace.path.size());
  const std::string path_name = subject.family || !options.path ? "spine" : "given path";
  switch (trace.classification.verdict) {
    case SeriesClass::Converges:
      report.verdict = Verdict::Fail;
      report.witnesses.push_back({trace.path.empty() ? "" : trace.path.front(),
                                  "sum a_n^2 mu(y_n) converges along the " + path_name,
                                  trace.partial_sums.empty() ? 0.0 : trace.partial_sums.back()});
      report.notes.emplace_back(
          "the divergence hypothesis fails on this path, so the criterion does not apply; this "
          "does not show the operator fails to be essentially self-adjoint");
      break;
    case SeriesClass::Diverges:
      report.verdict = Verdict::VerifiedUpToTruncation;
      report.truncation_rows = static_cast<int>(trace.path.size());
      report.notes.emplace_back("divergence checked along the " + path_name +
                                " only; the criterion needs every path");
      break;
    case SeriesClass::Inconclusive:
      report.verdict = Verdict::Inconclusive;
      break;
  }
  if (trace_out) *trace_out = std::move(trace);
  return report;
}

ProbeReport spectral_stability_probe(const LayeredFamilySpec& spec, std::span<const int> rows,
                                     const SpectralOptions& options) {
  ProbeReport report;
  SpectralOptions opts = options;
  opts.eigenvectors = false;
  opts.extremal_count = 1;
  for (int r : rows) {
    GraphBundle bundle = generate(spec, r);
    const double plain = spectrum(assemble(bundle), opts).eigenvalues.front();
    for (VertexIndex f : bundle.frontier) bundle.potential.values[f] += kFrontierPenalty;
    const double penalized = spectrum(assemble(bundle), opts).eigenvalues.front();
    report.rows.push_back(r);
    report.plain.push_back(plain);
    report.penalized.push_back(penalized);
    report.gap.push_back(penalized - plain);
  }
  if (!report.gap.empty()) {
    report.boundary_insensitive =
        std::abs(report.gap.back()) <= 1e-6 * (1.0 + std::abs(report.plain.back()));
  }
  report.note = "heuristic probe on finite truncations; not conclusive about the infinite graph";
  return report;
}

}  // namespace sagraph
