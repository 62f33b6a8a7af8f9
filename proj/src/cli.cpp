#include "sagraph/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "sagraph/boundary.hpp"
#include "sagraph/covering.hpp"
#include "sagraph/criteria.hpp"
#include "sagraph/digest.hpp"
#include "sagraph/error.hpp"
#include "sagraph/families.hpp"
#include "sagraph/io.hpp"
#include "sagraph/metrics.hpp"
#include "sagraph/operators.hpp"
#include "sagraph/report.hpp"
#include "sagraph/verification.hpp"

namespace sagraph {

namespace {

/// Family parameters shared by every subcommand that accepts --family.
struct FamilyFlags {
  std::string family;
  std::optional<std::string> input;
  double alpha = 1.0;
  double beta = 0.5;
  std::optional<double> holonomy;
  int rows = 50;
  std::optional<double> w_coef, w_exp;
  std::optional<double> q_coef, q_exp;
  double b_coef = 1.0, b_exp = 0.0, mu_coef = 1.0, mu_exp = 0.0;

  void attach(CLI::App* cmd, bool positional_input = true) {
    cmd->add_option("--family", family, "ex51, ex52, path, or a graph file");
    if (positional_input) cmd->add_option("input", input, "graph file");
    cmd->add_option("--alpha", alpha, "ex51 edge-weight exponent");
    cmd->add_option("--beta", beta, "ex51 measure exponent");
    cmd->add_option("--holonomy", holonomy, "ex51 flux per triangle");
    cmd->add_option("--rows", rows, "truncation depth")->check(CLI::PositiveNumber);
    cmd->add_option("--w-coef", w_coef, "potential W = c n^e: coefficient");
    cmd->add_option("--w-exp", w_exp, "potential W = c n^e: exponent");
    cmd->add_option("--q-coef", q_coef, "q = c n^e: coefficient");
    cmd->add_option("--q-exp", q_exp, "q = c n^e: exponent");
    cmd->add_option("--b-coef", b_coef, "path family: b = c n^e coefficient");
    cmd->add_option("--b-exp", b_exp, "path family: b exponent");
    cmd->add_option("--mu-coef", mu_coef, "path family: mu = c n^e coefficient");
    cmd->add_option("--mu-exp", mu_exp, "path family: mu exponent");
  }

  bool names_family() const {
    if (family.empty()) return false;
    try {
      family_kind_from_string(family);
      return true;
    } catch (const InputError&) {
      return false;
    }
  }

  LayeredFamilySpec spec() const {
    LayeredFamilySpec s;
    switch (family_kind_from_string(family)) {
      case FamilyKind::Triangular:
        s = LayeredFamilySpec::triangular(alpha, beta);
        if (holonomy) s.holonomy = *holonomy;
        break;
      case FamilyKind::Bipartite: s = LayeredFamilySpec::bipartite(); break;
      case FamilyKind::Path: s = LayeredFamilySpec::path(b_coef, b_exp, mu_coef, mu_exp); break;
    }
    if (w_coef || w_exp) {
      if (!w_coef || !w_exp) throw InputError("--w-coef and --w-exp go together");
      s.potential = RowFormula::power(*w_coef, *w_exp);
    }
    if (q_coef || q_exp) {
      if (!q_coef || !q_exp) throw InputError("--q-coef and --q-exp go together");
      s.q = RowFormula::power(*q_coef, *q_exp);
    }
    s.check();
    return s;
  }
};

/// A family truncation or a graph read from a file.
struct Subject {
  CheckSubject check;
  std::string name;
  std::string digest;
};

Subject load_subject(const FamilyFlags& flags) {
  Subject s;
  if (flags.names_family()) {
    const auto spec = flags.spec();
    s.check = CheckSubject::of_family(spec, flags.rows);
    s.name = spec.describe() + " rows=" + std::to_string(flags.rows);
  } else {
    std::string path = flags.input.value_or("");
    if (!flags.family.empty()) {
      if (!path.empty()) throw InputError("give either --family or an input file, not both");
      path = flags.family;
    }
    if (path.empty()) throw InputError("no input: pass --family or a graph file");
    GraphFile file = graph_from_json(read_json_file(path));
    if (file.family) {
      s.check = CheckSubject::of_family(*file.family, file.rows);
      if (digest(s.check.bundle) != digest(file.bundle)) {
        throw InputError(path + ": graph does not match its embedded family");
      }
    } else {
      s.check = CheckSubject::of_graph(std::move(file.bundle));
    }
    s.name = path;
  }
  s.digest = digest(s.check.bundle);
  return s;
}

VertexIndex parse_vertex(const WeightedGraph& g, const std::string& text) {
  if (g.find(text)) return *g.find(text);
  const auto comma = text.find(',');
  if (comma != std::string::npos) {
    try {
      const int row = std::stoi(text.substr(0, comma));
      const int index = std::stoi(text.substr(comma + 1));
      if (auto v = g.find(VertexId(row, index))) return *v;
    } catch (const std::logic_error&) {
    }
  }
  throw InputError("vertex not found: " + text);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

struct Globals {
  double tolerance = kIntrinsicTolerance;
  std::size_t dense_limit = 4096;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> timestamp;
};

class Runner {
 public:
  Runner(std::vector<std::string> args, std::ostream& out, std::ostream& err)
      : args_(std::move(args)), out_(out), err_(err) {}

  int run();

 private:
  RunManifest manifest(const std::string& command) const {
    RunManifest m;
    m.command = command;
    m.arguments = args_;
    m.seed = globals_.seed;
    if (globals_.timestamp) m.timestamp = *globals_.timestamp;
    return m;
  }

  SpectralOptions spectral_options() const {
    SpectralOptions o;
    o.dense_limit = globals_.dense_limit;
    return o;
  }

  void emit(const json& j) { out_ << dump(j); }

  int do_generate();
  int do_validate();
  int do_metric();
  int do_spectrum();
  int do_boundary();
  int do_covering();
  int do_check();
  int do_golenia();
  int do_verify();
  int do_probe();

  std::vector<std::string> args_;
  std::ostream& out_;
  std::ostream& err_;
  Globals globals_;

  FamilyFlags generate_flags_;
  std::string generate_out_;

  std::string validate_input_;

  FamilyFlags metric_flags_;
  std::string metric_source_;
  bool metric_sigma_q_ = false;

  FamilyFlags spectrum_flags_;
  std::string spectrum_dump_;
  std::size_t spectrum_count_ = 6;

  FamilyFlags boundary_flags_;
  std::string boundary_vertex_;
  bool boundary_sigma_q_ = false;

  FamilyFlags covering_flags_;
  std::string covering_file_;

  FamilyFlags check_flags_;
  std::string check_criterion_;
  std::string check_C_ = "search";
  std::string check_cover_;
  double check_delta_ = 1.0;
  std::optional<double> check_lambda_;
  int check_n_max_ = 10000;
  std::string check_path_;
  bool golenia_mode_ = false;

  std::string verify_suite_ = "all";
  std::uint64_t verify_seed_ = 1;
  int verify_instances_ = 100;

  FamilyFlags probe_flags_;
  std::string probe_rows_ = "5,10,20,40";
};

int Runner::do_generate() {
  if (!generate_flags_.names_family()) throw InputError("generate needs --family ex51|ex52|path");
  const auto spec = generate_flags_.spec();
  const int rows = generate_flags_.rows;
  const GraphBundle bundle = generate(spec, rows);
  const std::string text = dump(graph_to_json(bundle, spec, rows));
  if (generate_out_.empty()) {
    out_ << text;
  } else {
    write_text_file(generate_out_, text);
    auto m = manifest("generate");
    m.input_digests[spec.describe()] = digest(bundle);
    emit({{"manifest", to_json(m)},
          {"out", generate_out_},
          {"vertices", bundle.size()},
          {"edges", bundle.graph.edge_count()},
          {"digest", digest(bundle)}});
  }
  err_ << "generated " << spec.describe() << " with " << rows << " rows: " << bundle.size()
       << " vertices, " << bundle.graph.edge_count() << " edges\n";
  return kExitOk;
}

int Runner::do_validate() {
  GraphFile file = graph_from_json(read_json_file(validate_input_));
  const auto report = validate(file.bundle);
  auto m = manifest("validate");
  m.input_digests[validate_input_] = digest(file.bundle);
  json j{{"manifest", to_json(m)}, {"validation", to_json(report)}};
  if (report.valid()) {
    const auto len = edge_lengths(file.bundle);
    j["intrinsic"] = to_json(check_intrinsic(file.bundle.graph, len, globals_.tolerance), file.bundle.graph);
    j["strongly_intrinsic"] =
        to_json(check_strongly_intrinsic(file.bundle.graph, len, globals_.tolerance), file.bundle.graph);
  }
  emit(j);
  if (report.valid()) {
    err_ << validate_input_ << ": valid\n";
    return kExitOk;
  }
  for (const auto& v : report.violations) err_ << v.kind << ": " << v.detail << "\n";
  return kExitInput;
}

int Runner::do_metric() {
  const Subject s = load_subject(metric_flags_);
  const GraphBundle& b = s.check.bundle;
  EdgeLengthAssignment len = edge_lengths(b);
  if (metric_sigma_q_) {
    std::vector<double> q(b.size(), 1.0);
    if (s.check.family) q = q_values(*s.check.family, b.graph);
    len = sigma_q(b.graph, len, q);
  }
  auto m = manifest("metric");
  m.input_digests[s.name] = s.digest;
  json j{{"manifest", to_json(m)},
         {"lengths", metric_sigma_q_ ? "sigma_q" : "sigma"},
         {"intrinsic", to_json(check_intrinsic(b.graph, len, globals_.tolerance), b.graph)},
         {"strongly_intrinsic", to_json(check_strongly_intrinsic(b.graph, len, globals_.tolerance), b.graph)}};
  if (!metric_source_.empty()) {
    const VertexIndex src = parse_vertex(b.graph, metric_source_);
    const auto d = path_metric(b.graph, len, src);
    json dist = json::object();
    for (VertexIndex x = 0; x < b.size(); ++x) dist[b.graph.id(x).name()] = number_json(d[x]);
    j["source"] = b.graph.id(src).name();
    j["distances"] = std::move(dist);
  }
  emit(j);
  err_ << s.name << ": intrinsic ratio " << format_double(check_intrinsic(b.graph, len).max_ratio) << "\n";
  return kExitOk;
}

int Runner::do_spectrum() {
  const Subject s = load_subject(spectrum_flags_);
  const OperatorMatrix op = assemble(s.check.bundle);
  if (!spectrum_dump_.empty()) {
    std::ofstream dumpf(spectrum_dump_);
    if (!dumpf) throw InputError("cannot write " + spectrum_dump_);
    dumpf.precision(17);
    const auto& S = op.symmetrized();
    for (int r = 0; r < S.outerSize(); ++r) {
      for (OperatorMatrix::Sparse::InnerIterator it(S, r); it; ++it) {
        dumpf << it.row() << " " << it.col() << " " << it.value().real() << " " << it.value().imag() << "\n";
      }
    }
  }
  auto options = spectral_options();
  options.extremal_count = spectrum_count_;
  const SpectralResult r = spectrum(op, options);
  auto m = manifest("spectrum");
  m.input_digests[s.name] = s.digest;
  json j = to_json(r);
  j["manifest"] = to_json(m);
  j["min_mu"] = number_json(op.min_mu());
  emit(j);
  err_ << s.name << ": " << r.eigenvalues.size() << " eigenvalues"
       << (r.complete ? "" : " (lowest only)") << ", lowest "
       << (r.eigenvalues.empty() ? std::string("none") : format_double(r.eigenvalues.front())) << "\n";
  return kExitOk;
}

int Runner::do_boundary() {
  const Subject s = load_subject(boundary_flags_);
  if (boundary_vertex_.empty()) throw InputError("boundary needs --vertex");
  const GraphBundle& b = s.check.bundle;
  const VertexIndex x = parse_vertex(b.graph, boundary_vertex_);
  const LengthKind kind = boundary_sigma_q_ ? LengthKind::SigmaQ : LengthKind::Sigma;
  DistanceBounds bounds;
  if (s.check.family) {
    bounds = family_distance_bounds(*s.check.family, kind, b, x);
  } else {
    EdgeLengthAssignment len = edge_lengths(b);
    if (boundary_sigma_q_) len = sigma_q(b.graph, len, std::vector<double>(b.size(), 1.0));
    bounds = truncation_distance_bounds(b.graph, len, x, b.frontier, 0.0,
                                        std::numeric_limits<double>::infinity());
  }
  auto m = manifest("boundary");
  m.input_digests[s.name] = s.digest;
  json j = to_json(bounds);
  j["vertex"] = b.graph.id(x).name();
  j["manifest"] = to_json(m);
  if (s.check.family) j["completeness"] = to_json(completeness_verdict(*s.check.family, kind));
  emit(j);
  err_ << "D(" << b.graph.id(x).name() << ") in [" << format_double(bounds.lower) << ", "
       << format_double(bounds.upper) << "]\n";
  return kExitOk;
}

int Runner::do_covering() {
  const Subject s = load_subject(covering_flags_);
  const GraphBundle& b = s.check.bundle;
  GoodCovering cover;
  PhaseAssignment theta = b.theta;
  if (!covering_file_.empty()) {
    cover = covering_from_json(read_json_file(covering_file_), b.graph);
  } else {
    TriangleCovering tc = triangle_covering(b.graph);
    cover = std::move(tc.cover);
    if (!s.check.family) theta = std::move(tc.theta);
  }
  const auto report = validate_covering(b.graph, cover);
  auto m = manifest("covering");
  m.input_digests[s.name] = s.digest;
  json j{{"manifest", to_json(m)}, {"m", cover.m}, {"validation", to_json(report)}};
  if (!report.valid()) {
    emit(j);
    for (const auto& v : report.violations) err_ << v.kind << ": " << v.detail << "\n";
    return kExitInput;
  }
  const auto eff = effective_potential(b.graph, theta, cover);
  json cells = json::array();
  for (std::size_t l = 0; l < cover.cells.size(); ++l) {
    json vs = json::array();
    for (VertexIndex v : cover.cells[l].vertices) vs.push_back(b.graph.id(v).name());
    cells.push_back({{"vertices", std::move(vs)},
                     {"p", number_json(eff.cell_p[l])},
                     {"inf_b", number_json(eff.cell_inf_b[l])}});
  }
  json we = json::object();
  for (VertexIndex x = 0; x < b.size(); ++x) we[b.graph.id(x).name()] = number_json(eff.values[x]);
  j["cells"] = std::move(cells);
  j["W_e"] = std::move(we);
  emit(j);
  err_ << cover.cells.size() << " cells, m = " << cover.m << "\n";
  return kExitOk;
}

int Runner::do_check() {
  Subject s = load_subject(check_flags_);
  const Criterion criterion = criterion_from_string(check_criterion_);
  CheckOptions options;
  if (check_C_ != "search") {
    try {
      std::size_t used = 0;
      options.C = std::stod(check_C_, &used);
      if (used != check_C_.size()) throw std::invalid_argument(check_C_);
    } catch (const std::logic_error&) {
      throw InputError("--C takes 'search' or a number, got " + check_C_);
    }
  }
  if (!check_cover_.empty()) {
    s.check.cover = covering_from_json(read_json_file(check_cover_), s.check.bundle.graph);
  }
  CriterionReport report;
  GoleniaTrace trace;
  switch (criterion) {
    case Criterion::Thm1: report = theorem1_check(s.check, options); break;
    case Criterion::Thm2: report = theorem2_check(s.check, options); break;
    case Criterion::Thm3: report = theorem3_check(s.check, options); break;
    case Criterion::Golenia: {
      GoleniaOptions g;
      g.delta = check_delta_;
      g.lambda = check_lambda_;
      g.n_max = check_n_max_;
      if (!check_path_.empty()) {
        std::vector<VertexIndex> path;
        for (const auto& p : split(check_path_, ';')) path.push_back(parse_vertex(s.check.bundle.graph, p));
        g.path = std::move(path);
      }
      report = golenia_check(s.check, g, &trace);
      break;
    }
  }
  auto m = manifest(golenia_mode_ ? "golenia" : "check");
  m.input_digests[s.name] = s.digest;
  json j = to_json(report);
  j["manifest"] = to_json(m);
  if (golenia_mode_) j["trace"] = to_json(trace);
  emit(j);
  err_ << to_string(report.criterion) << " on " << s.name << ": " << to_string(report.verdict) << "\n";
  for (const auto& note : report.notes) err_ << "  " << note << "\n";
  return exit_code(report.verdict);
}

int Runner::do_golenia() {
  check_criterion_ = "golenia";
  golenia_mode_ = true;
  return do_check();
}

int Runner::do_verify() {
  if (globals_.seed) verify_seed_ = *globals_.seed;
  const SuiteSummary summary = run_suite(verify_suite_, verify_seed_, verify_instances_);
  auto m = manifest("verify");
  m.seed = verify_seed_;
  json j = to_json(summary);
  j["manifest"] = to_json(m);
  emit(j);
  err_ << "suite " << summary.suite << ": " << summary.passed << "/" << summary.instances
       << " passed, worst relative error " << format_double(summary.worst_rel_err) << "\n";
  for (const auto& f : summary.failures) err_ << "  " << f << "\n";
  return summary.failed == 0 ? kExitOk : kExitFail;
}

int Runner::do_probe() {
  if (!probe_flags_.names_family()) throw InputError("probe needs --family ex51|ex52|path");
  const auto spec = probe_flags_.spec();
  std::vector<int> rows;
  for (const auto& r : split(probe_rows_, ',')) {
    try {
      rows.push_back(std::stoi(r));
    } catch (const std::logic_error&) {
      throw InputError("--rows-list expects comma-separated integers");
    }
  }
  const ProbeReport report = spectral_stability_probe(spec, rows, spectral_options());
  auto m = manifest("probe");
  m.input_digests[spec.describe()] = digest(generate(spec, rows.empty() ? 1 : rows.back()));
  json j = to_json(report);
  j["manifest"] = to_json(m);
  emit(j);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    err_ << "rows " << report.rows[i] << ": lambda_min " << format_double(report.plain[i])
         << ", penalized " << format_double(report.penalized[i]) << "\n";
  }
  err_ << report.note << "\n";
  return kExitOk;
}

int Runner::run() {
  CLI::App app{"Essential self-adjointness checks for magnetic Schroedinger operators on weighted graphs",
               "sa-graph"};
  app.require_subcommand(1);
  app.add_option("--tolerance", globals_.tolerance, "tolerance of the intrinsic-metric checks");
  app.add_option("--dense-limit", globals_.dense_limit, "largest size solved densely");
  app.add_option("--seed", globals_.seed, "random seed");
  app.add_option("--timestamp", globals_.timestamp, "timestamp recorded in the manifest");

  auto* gen = app.add_subcommand("generate", "write a family truncation as a graph file");
  generate_flags_.attach(gen, false);
  gen->add_option("--out", generate_out_, "output file (stdout if omitted)");

  auto* val = app.add_subcommand("validate", "structural checks of a graph file");
  val->add_option("input", validate_input_, "graph file")->required();

  auto* met = app.add_subcommand("metric", "edge lengths, intrinsic checks and distances");
  metric_flags_.attach(met);
  met->add_option("--source", metric_source_, "vertex id (or row,index) to measure distances from");
  met->add_flag("--sigma-q", metric_sigma_q_, "use the q-rescaled lengths");

  auto* spec = app.add_subcommand("spectrum", "eigenvalues of H");
  spectrum_flags_.attach(spec);
  spec->add_option("--symmetrized-dump", spectrum_dump_, "write S as row col re im triplets");
  spec->add_option("--count", spectrum_count_, "eigenvalues kept on the iterative path");

  auto* bnd = app.add_subcommand("boundary", "bounds on the distance to the Cauchy boundary");
  boundary_flags_.attach(bnd);
  bnd->add_option("--vertex", boundary_vertex_, "vertex id or row,index")->required();
  bnd->add_flag("--sigma-q", boundary_sigma_q_, "use the q-rescaled lengths");

  auto* cov = app.add_subcommand("covering", "cell eigenvalues and effective potential");
  covering_flags_.attach(cov);
  cov->add_option("--cover", covering_file_, "covering file (default: triangle covering)");

  auto* chk = app.add_subcommand("check", "run one criterion");
  check_flags_.attach(chk);
  chk->add_option("--criterion", check_criterion_, "thm1, thm2, thm3 or golenia")->required();
  chk->add_option("--C", check_C_, "'search' or a fixed constant");
  chk->add_option("--cover", check_cover_, "covering file for thm2 on plain graphs");
  chk->add_option("--delta", check_delta_, "golenia: delta > 0");
  chk->add_option("--lambda", check_lambda_, "golenia: spectral parameter");
  chk->add_option("--n-max", check_n_max_, "golenia: terms along the spine")->check(CLI::PositiveNumber);
  chk->add_option("--path", check_path_, "golenia: ';'-separated vertex ids on plain graphs");

  auto* gol = app.add_subcommand("golenia", "Golenia criterion with its full trace");
  check_flags_.attach(gol);
  gol->add_option("--delta", check_delta_, "delta > 0");
  gol->add_option("--lambda", check_lambda_, "spectral parameter");
  gol->add_option("--n-max", check_n_max_, "terms along the spine")->check(CLI::PositiveNumber);
  gol->add_option("--path", check_path_, "';'-separated vertex ids on plain graphs");

  auto* ver = app.add_subcommand("verify", "randomized identity suites");
  ver->add_option("--suite", verify_suite_, "all or one suite name");
  ver->add_option("--seed", verify_seed_, "suite seed");
  ver->add_option("--instances", verify_instances_, "instances per suite")->check(CLI::PositiveNumber);

  auto* prb = app.add_subcommand("probe", "lowest eigenvalue on nested truncations");
  probe_flags_.attach(prb, false);
  prb->add_option("--rows-list", probe_rows_, "comma-separated truncation depths");

  std::vector<std::string> reversed(args_.rbegin(), args_.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out_ << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out_ << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err_ << "error: " << e.what() << "\n\n" << app.help();
    return kExitInput;
  }

  try {
    if (*gen) return do_generate();
    if (*val) return do_validate();
    if (*met) return do_metric();
    if (*spec) return do_spectrum();
    if (*bnd) return do_boundary();
    if (*cov) return do_covering();
    if (*chk) return do_check();
    if (*gol) return do_golenia();
    if (*ver) return do_verify();
    if (*prb) return do_probe();
  } catch (const InputError& e) {
    err_ << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    err_ << "numerical error after " << e.iterations() << " iterations: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    err_ << "input error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Runner(args, out, err).run();
}

}  // namespace sagraph
