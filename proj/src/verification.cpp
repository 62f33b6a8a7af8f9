#include "sagraph/verification.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "sagraph/covering.hpp"
#include "sagraph/error.hpp"

namespace sagraph {

IdentityCheckResult IdentityCheckResult::equality(double lhs, double rhs) {
  IdentityCheckResult r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs - rhs);
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  r.rel_err = scale > 0.0 ? r.abs_err / scale : 0.0;
  r.passes = r.rel_err <= kIdentityRelTol || r.abs_err <= kIdentityAbsTol;
  return r;
}

IdentityCheckResult IdentityCheckResult::at_most(double lhs, double rhs) {
  IdentityCheckResult r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::max(0.0, lhs - rhs);
  r.rel_err = r.abs_err / std::max(1.0, std::abs(rhs));
  r.passes = lhs <= rhs + kInequalitySlack * std::max(1.0, std::abs(rhs));
  return r;
}

IdentityCheckResult IdentityCheckResult::bounded_by(double lhs, double bound) {
  IdentityCheckResult r;
  r.lhs = lhs;
  r.rhs = bound;
  r.abs_err = std::max(0.0, lhs - bound);
  r.rel_err = r.abs_err / std::max(1.0, std::abs(bound));
  r.passes = lhs <= bound;
  return r;
}

IdentityCheckResult verify_lemma21(const GraphBundle& bundle, std::span<const double> f) {
  const WeightedGraph& g = bundle.graph;
  if (f.size() != g.vertex_count()) throw InputError("f must be defined on every vertex");
  const GroundState gs = ground_state(bundle);
  const MuVector& v = gs.vector;

  MuVector fv = MuVector::zero(v.size());
  for (VertexIndex x = 0; x < v.size(); ++x) fv[x] = f[x] * v[x];
  MuVector shifted = apply(bundle, fv);
  for (VertexIndex x = 0; x < v.size(); ++x) shifted[x] -= gs.eigenvalue * fv[x];
  const double lhs = inner(g, fv, shifted).real();

  double rhs = 0.0;
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    for (const auto& inc : g.incident(x)) {
      const double df = f[x] - f[inc.neighbor];
      rhs += inc.b * (std::conj(bundle.phase(inc)) * v[x] * std::conj(v[inc.neighbor])).real() * df * df;
    }
  }
  auto r = IdentityCheckResult::equality(lhs, 0.5 * rhs);
  std::ostringstream os;
  os << "lambda_0 = " << gs.eigenvalue;
  r.note = os.str();
  return r;
}

IdentityCheckResult verify_prop41_identity(const GraphBundle& bundle, const MuVector& u,
                                           std::span<const double> phi) {
  const WeightedGraph& g = bundle.graph;
  const std::size_t n = g.vertex_count();
  if (u.size() != n || phi.size() != n) throw InputError("dimension mismatch in identity check");

  double i2 = 0.0;
  cplx cross{0.0, 0.0};
  for (VertexIndex x = 0; x < n; ++x) {
    for (const auto& inc : g.incident(x)) {
      const VertexIndex y = inc.neighbor;
      const cplx z = bundle.phase(inc);
      const double px = phi[x] * phi[x];
      const double py = phi[y] * phi[y];
      i2 += inc.b * std::norm(u[x] - z * u[y]) * (px + py);
      cross += inc.b * (z * u[y] - u[x]) * (std::conj(z) * std::conj(u[y]) + std::conj(u[x])) * (px - py);
    }
  }
  const MuVector hu = apply(bundle, u);
  cplx h_term{0.0, 0.0};
  cplx w_term{0.0, 0.0};
  for (VertexIndex x = 0; x < n; ++x) {
    const double weight = g.mu(x) * phi[x] * phi[x];
    h_term += weight * hu[x] * std::conj(u[x]);
    w_term += weight * bundle.potential[x] * u[x] * std::conj(u[x]);
  }
  const cplx rhs = 4.0 * h_term - 4.0 * w_term + cross;
  auto r = IdentityCheckResult::equality(i2, rhs.real());
  const double scale = std::max({1.0, std::abs(i2), std::abs(4.0 * h_term), std::abs(cross)});
  if (std::abs(rhs.imag()) > 1e-10 * scale) {
    r.passes = false;
    r.note = "right-hand side has imaginary part " + std::to_string(rhs.imag());
  }
  return r;
}

IdentityCheckResult verify_prop41_bound(const GraphBundle& bundle, const EdgeLengthAssignment& sigma,
                                        std::span<const double> q, const MuVector& u) {
  const WeightedGraph& g = bundle.graph;
  const std::size_t n = g.vertex_count();
  if (q.size() != n || u.size() != n) throw InputError("dimension mismatch in bound check");
  IdentityCheckResult r;
  auto not_applicable = [&](const std::string& why) {
    r.applicable = false;
    r.passes = false;
    r.note = why;
    return r;
  };
  if (!check_strongly_intrinsic(g, sigma).passes) return not_applicable("sigma is not strongly intrinsic");
  std::vector<double> f(n);
  for (VertexIndex x = 0; x < n; ++x) {
    if (!(q[x] >= 1.0)) return not_applicable("q below one");
    if (bundle.potential[x] < -q[x]) return not_applicable("W below -q");
    f[x] = 1.0 / std::sqrt(q[x]);
  }
  const double k = lipschitz_constant(g, sigma, f);
  const double t = graph_energy_q(bundle, q, u);
  const double nu = norm(g, u);
  const double nhu = norm(g, apply(bundle, u));
  r = IdentityCheckResult::at_most(t * t, 4.0 * (nhu * nu + (k * k + 1.0) * nu * nu));
  std::ostringstream os;
  os << "K = " << k << ", slack = " << r.rhs - r.lhs;
  r.note = os.str();
  return r;
}

double cutoff_F(double eps, double rho, double R, double s) {
  if (s <= eps) return 0.0;
  if (s <= rho) return rho * (s - eps) / (rho - eps);
  if (s <= 1.0) return s;
  if (s <= R) return 1.0;
  if (s <= R + 1.0) return R + 1.0 - s;
  return 0.0;
}

IdentityCheckResult verify_cutoff_F(double eps, double rho, double R, int samples,
                                    std::uint64_t seed) {
  if (!(0.0 < eps && eps < rho && rho < 0.5 && R > 1.0)) {
    throw InputError("cutoff parameters must satisfy 0 < eps < rho < 1/2 and R > 1");
  }
  const double beta = rho / (rho - eps);
  bool shape_ok = true;
  std::string shape_note;

  // piece values and continuity at the break points
  const double breaks[] = {eps, rho, 1.0, R, R + 1.0};
  for (double b : breaks) {
    const double left = cutoff_F(eps, rho, R, b - 1e-12);
    const double right = cutoff_F(eps, rho, R, b + 1e-12);
    if (std::abs(left - right) > 1e-9) {
      shape_ok = false;
      shape_note = "jump at " + std::to_string(b);
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pick(-0.5, R + 2.0);
  double worst_slope = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double s = pick(rng);
    const double t = pick(rng);
    const double fs = cutoff_F(eps, rho, R, s);
    const double ft = cutoff_F(eps, rho, R, t);
    if (fs < 0.0 || fs > 1.0) {
      shape_ok = false;
      shape_note = "value outside [0,1]";
    }
    double expected = 0.0;
    if (s > eps && s < rho) expected = rho * (s - eps) / (rho - eps);
    else if (s >= rho && s <= 1.0) expected = s;
    else if (s > 1.0 && s < R) expected = 1.0;
    else if (s >= R && s < R + 1.0) expected = R + 1.0 - s;
    if (std::abs(fs - expected) > 1e-12) {
      shape_ok = false;
      shape_note = "piece mismatch at " + std::to_string(s);
    }
    if (s != t) worst_slope = std::max(worst_slope, std::abs(fs - ft) / std::abs(s - t));
  }
  auto r = IdentityCheckResult::at_most(worst_slope, beta);
  if (!shape_ok) {
    r.passes = false;
    r.note = shape_note;
  }
  return r;
}

double cutoff_chi(double distance, double n) {
  return std::min(std::max((2.0 * n - distance) / n, 0.0), 1.0);
}

IdentityCheckResult verify_chi_n(const GraphBundle& bundle, const EdgeLengthAssignment& len,
                                 VertexIndex x0, double n) {
  if (!(n > 0.0)) throw InputError("n must be positive");
  const WeightedGraph& g = bundle.graph;
  const auto d = path_metric(g, len, x0);
  for (VertexIndex f : bundle.frontier) {
    if (d[f] <= 2.0 * n) throw InputError("enlarge truncation");
  }
  bool ok = true;
  std::string note;
  std::vector<double> chi(g.vertex_count());
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    chi[x] = cutoff_chi(d[x], n);
    if (chi[x] < 0.0 || chi[x] > 1.0) {
      ok = false;
      note = "chi outside [0,1]";
    }
    if (d[x] <= n && chi[x] != 1.0) {
      ok = false;
      note = "chi != 1 inside the ball of radius n";
    }
    if (d[x] > 2.0 * n && chi[x] != 0.0) {
      ok = false;
      note = "chi != 0 outside the ball of radius 2n";
    }
  }
  double worst = 0.0;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    worst = std::max(worst, n * std::abs(chi[edge.u] - chi[edge.v]) / len[e]);
  }
  auto r = IdentityCheckResult::at_most(worst, 1.0);
  if (!ok) {
    r.passes = false;
    r.note = note;
  }
  return r;
}

std::uint64_t instance_seed(std::uint64_t suite_seed, std::uint64_t index) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = suite_seed * 0x9e3779b97f4a7c15ULL + index + 0x632be59bd9b4e019ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

GraphBundle random_bundle(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(2, 20);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.1, 10.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> potential(-5.0, 5.0);
  const int n = size(rng);
  const double p = 0.2 + 0.5 * unit(rng);
  for (;;) {
    BundleBuilder builder;
    for (int i = 0; i < n; ++i) {
      builder.add_vertex(VertexId("v" + std::to_string(i)), weight(rng), potential(rng));
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (unit(rng) < p) {
          builder.add_edge(static_cast<VertexIndex>(i), static_cast<VertexIndex>(j), weight(rng),
                           angle(rng));
        }
      }
    }
    GraphBundle bundle = std::move(builder).build();
    if (bundle.graph.connected()) return bundle;
  }
}

namespace {

MuVector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  MuVector u = MuVector::zero(n);
  for (auto& z : u.values) z = cplx{normal(rng), normal(rng)};
  return u;
}

std::vector<double> random_reals(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(n);
  for (double& v : out) v = dist(rng);
  return out;
}

// Each edge with a common neighbor becomes a triangle cell, other edges stay
// single-edge cells; m is the largest resulting edge multiplicity.
GoodCovering random_triangle_covering(const WeightedGraph& g) {
  GoodCovering cover;
  std::vector<int> hits(g.edge_count(), 0);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    std::optional<VertexIndex> apex;
    for (const auto& inc : g.incident(edge.u)) {
      if (inc.neighbor != edge.v && g.edge_between(inc.neighbor, edge.v)) {
        apex = inc.neighbor;
        break;
      }
    }
    CoveringCell cell;
    if (apex) {
      const EdgeIndex a = *g.edge_between(edge.u, *apex);
      const EdgeIndex b = *g.edge_between(edge.v, *apex);
      cell = {{edge.u, edge.v, *apex}, {e, a, b}};
    } else {
      cell = {{edge.u, edge.v}, {e}};
    }
    for (EdgeIndex k : cell.edges) ++hits[k];
    cover.cells.push_back(std::move(cell));
  }
  cover.m = std::max(1, *std::max_element(hits.begin(), hits.end()));
  return cover;
}

struct InstanceOutcome {
  bool passed = true;
  double worst_rel_err = 0.0;
  std::string failure;
};

void absorb(InstanceOutcome& out, const IdentityCheckResult& r, const std::string& what) {
  out.worst_rel_err = std::max(out.worst_rel_err, r.rel_err);
  if (!r.passes && out.passed) {
    out.passed = false;
    std::ostringstream os;
    os << what << ": lhs=" << r.lhs << " rhs=" << r.rhs << " rel=" << r.rel_err;
    if (!r.note.empty()) os << " (" << r.note << ")";
    out.failure = os.str();
  }
}

InstanceOutcome run_instance(const std::string& suite, std::uint64_t seed) {
  InstanceOutcome out;
  std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dULL);
  if (suite == "cutoffs") {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double rho = 0.05 + 0.44 * unit(rng);
    const double eps = rho * (0.05 + 0.9 * unit(rng));
    const double R = 1.0 + 4.0 * unit(rng) + 1e-3;
    absorb(out, verify_cutoff_F(eps, rho, R, 200, seed), "cutoff F");
    const GraphBundle bundle = random_bundle(seed);
    const auto len = edge_lengths(bundle);
    const auto d = path_metric(bundle.graph, len, 0);
    const double span = *std::max_element(d.begin(), d.end());
    const double n = std::max(1e-3, span * (0.1 + unit(rng)));
    absorb(out, verify_chi_n(bundle, len, 0, n), "chi_n");
    return out;
  }

  GraphBundle bundle = random_bundle(seed);
  const WeightedGraph& g = bundle.graph;
  const std::size_t n = g.vertex_count();
  if (suite == "lemma21") {
    absorb(out, verify_lemma21(bundle, random_reals(rng, n, -1.0, 1.0)), "lemma21");
  } else if (suite == "prop41") {
    const MuVector u = random_vector(rng, n);
    absorb(out, verify_prop41_identity(bundle, u, random_reals(rng, n, -2.0, 2.0)), "prop41 identity");
    const auto q = random_reals(rng, n, 1.0, 10.0);
    for (VertexIndex x = 0; x < n; ++x) bundle.potential.values[x] = -q[x];
    const auto r = verify_prop41_bound(bundle, sigma1_default(g), q, u);
    absorb(out, r, "prop41 bound");
  } else if (suite == "covering-bound") {
    const GoodCovering cover = random_triangle_covering(g);
    const auto ep = effective_potential(g, bundle.theta, cover);
    const MuVector u = random_vector(rng, n);
    double rhs = 0.0;
    for (VertexIndex x = 0; x < n; ++x) {
      rhs += g.mu(x) * (ep.values[x] + bundle.potential[x]) * std::norm(u[x]);
    }
    // lower bound: -(u, Hu) <= -rhs
    absorb(out, IdentityCheckResult::at_most(-quadratic_form(bundle, u), -rhs), "covering bound");
  } else if (suite == "quadratic-form") {
    const MuVector u = random_vector(rng, n);
    const double form = quadratic_form(bundle, u);
    const double direct = inner(g, apply(bundle, u), u).real();
    absorb(out, IdentityCheckResult::equality(form, direct), "quadratic form");
  } else if (suite == "hermiticity") {
    const MuVector u = random_vector(rng, n);
    const MuVector v = random_vector(rng, n);
    const cplx a = inner(g, apply(bundle, u), v);
    const cplx b = inner(g, u, apply(bundle, v));
    absorb(out, IdentityCheckResult::bounded_by(std::abs(a - b), 1e-10 * norm(g, u) * norm(g, v)),
           "hermiticity");
  } else if (suite == "gauge") {
    const auto tau = random_reals(rng, n, -std::numbers::pi, std::numbers::pi);
    const auto before = spectrum(assemble(bundle)).eigenvalues;
    const auto after = spectrum(assemble(gauge_transform(bundle, tau))).eigenvalues;
    double shift = 0.0;
    for (std::size_t i = 0; i < before.size(); ++i) shift = std::max(shift, std::abs(before[i] - after[i]));
    absorb(out, IdentityCheckResult::bounded_by(shift, 1e-8), "gauge invariance");
  } else if (suite == "nonnegativity") {
    for (double& w : bundle.potential.values) w = 0.0;
    const MuVector u = random_vector(rng, n);
    absorb(out, IdentityCheckResult::bounded_by(-quadratic_form(bundle, u), 1e-12), "form");
    const auto spec = spectrum(assemble(bundle));
    absorb(out,
           IdentityCheckResult::bounded_by(-spec.eigenvalues.front(),
                                           1e-10 * (spec.spectral_radius + 1.0)),
           "lowest eigenvalue");
  } else {
    throw InputError("unknown suite: " + suite);
  }
  return out;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"lemma21", "prop41", "cutoffs", "covering-bound", "quadratic-form",
          "hermiticity", "gauge", "nonnegativity"};
}

SuiteSummary run_suite(const std::string& suite, std::uint64_t seed, int instances) {
  if (instances < 0) throw InputError("instance count must be non-negative");
  if (suite == "all") {
    SuiteSummary total;
    total.suite = "all";
    std::uint64_t k = 0;
    for (const auto& name : suite_names()) {
      const auto s = run_suite(name, instance_seed(seed, 1000003 + k++), instances);
      total.instances += s.instances;
      total.passed += s.passed;
      total.failed += s.failed;
      total.worst_rel_err = std::max(total.worst_rel_err, s.worst_rel_err);
      total.failures.insert(total.failures.end(), s.failures.begin(), s.failures.end());
    }
    return total;
  }
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw InputError("unknown suite: " + suite);
  }
  std::vector<InstanceOutcome> outcomes(static_cast<std::size_t>(instances));
  std::vector<std::exception_ptr> errors(outcomes.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < instances; ++i) {
    try {
      outcomes[static_cast<std::size_t>(i)] = run_instance(suite, instance_seed(seed, static_cast<std::uint64_t>(i)));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  SuiteSummary summary;
  summary.suite = suite;
  summary.instances = instances;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    const auto& o = outcomes[i];
    summary.worst_rel_err = std::max(summary.worst_rel_err, o.worst_rel_err);
    if (o.passed) {
      ++summary.passed;
    } else {
      ++summary.failed;
      summary.failures.push_back(suite + " #" + std::to_string(i) + ": " + o.failure);
    }
  }
  return summary;
}

}  // namespace sagraph
