#include "sagraph/families.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sagraph/error.hpp"

namespace sagraph {

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Triangular: return "ex51";
    case FamilyKind::Bipartite: return "ex52";
    case FamilyKind::Path: return "path";
  }
  return "unknown";
}

FamilyKind family_kind_from_string(const std::string& name) {
  if (name == "ex51" || name == "triangular") return FamilyKind::Triangular;
  if (name == "ex52" || name == "bipartite") return FamilyKind::Bipartite;
  if (name == "path") return FamilyKind::Path;
  throw InputError("unknown family: " + name);
}

std::int64_t floor_sqrt(std::int64_t n) {
  if (n < 0) throw InputError("square root of a negative integer");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::int64_t ceil_sqrt(std::int64_t n) {
  const std::int64_t r = floor_sqrt(n);
  return r * r == n ? r : r + 1;
}

LayeredFamilySpec LayeredFamilySpec::triangular(double alpha, double beta) {
  LayeredFamilySpec s;
  s.kind = FamilyKind::Triangular;
  s.alpha = alpha;
  s.beta = beta;
  s.potential = RowFormula::power(-1.0, 2.0 * beta + alpha - 1.5);
  return s;
}

LayeredFamilySpec LayeredFamilySpec::bipartite() {
  LayeredFamilySpec s;
  s.kind = FamilyKind::Bipartite;
  s.potential = RowFormula::power(-2.0, 0.5);
  s.q = RowFormula::power(2.0, 1.0);
  return s;
}

LayeredFamilySpec LayeredFamilySpec::path(double b_coef, double b_exp, double mu_coef,
                                          double mu_exp) {
  LayeredFamilySpec s;
  s.kind = FamilyKind::Path;
  s.b_coef = b_coef;
  s.b_exp = b_exp;
  s.mu_coef = mu_coef;
  s.mu_exp = mu_exp;
  return s;
}

void LayeredFamilySpec::check() const {
  auto finite = [](double v) { return std::isfinite(v); };
  switch (kind) {
    case FamilyKind::Triangular:
      if (!finite(alpha) || alpha <= 0.0) throw InputError("alpha must be positive");
      if (!finite(beta) || beta <= 0.0 || beta >= 0.75) {
        throw InputError("beta must lie in (0, 3/4)");
      }
      if (!finite(holonomy)) throw InputError("holonomy must be finite");
      break;
    case FamilyKind::Bipartite:
      break;
    case FamilyKind::Path:
      if (!finite(b_coef) || b_coef <= 0.0) throw InputError("path weight coefficient must be positive");
      if (!finite(mu_coef) || mu_coef <= 0.0) throw InputError("path measure coefficient must be positive");
      if (!finite(b_exp) || !finite(mu_exp)) throw InputError("path exponents must be finite");
      break;
  }
  for (const auto& t : potential.terms) {
    if (!finite(t.coef) || !finite(t.exponent) || t.shift + 1 < 1) {
      throw InputError("potential formula must be finite on every row");
    }
  }
  if (q) {
    for (const auto& t : q->terms) {
      if (!finite(t.coef) || !finite(t.exponent) || t.shift + 1 < 1) {
        throw InputError("q formula must be finite on every row");
      }
    }
  }
}

bool LayeredFamilySpec::incompleteness_regime() const {
  return kind == FamilyKind::Triangular && alpha + 2.0 * beta > 1.5;
}

bool LayeredFamilySpec::raabe_regime() const {
  return kind == FamilyKind::Triangular && beta > 0.5 && beta < 0.75;
}

std::int64_t LayeredFamilySpec::row_size(std::int64_t row) const {
  switch (kind) {
    case FamilyKind::Triangular: return ceil_sqrt(row);
    case FamilyKind::Bipartite: return row;
    case FamilyKind::Path: return 1;
  }
  return 0;
}

double LayeredFamilySpec::measure(std::int64_t row) const {
  const auto n = static_cast<double>(row);
  switch (kind) {
    case FamilyKind::Triangular: return std::pow(n, -2.0 * beta);
    case FamilyKind::Bipartite: return std::sqrt(n);
    case FamilyKind::Path: return mu_coef * std::pow(n, mu_exp);
  }
  return 0.0;
}

double LayeredFamilySpec::q_at(std::int64_t row) const { return q ? (*q)(row) : 1.0; }

std::vector<LocalNeighbor> LayeredFamilySpec::local_neighbors(RowIndex x) const {
  std::vector<LocalNeighbor> out;
  const std::int64_t j = x.row;
  const std::int64_t k = x.index;
  if (j < 1 || k < 1 || k > row_size(j)) {
    throw InputError("vertex not found: x" + std::to_string(j) + "," + std::to_string(k));
  }
  auto at = [](std::int64_t r, std::int64_t i) {
    return RowIndex{static_cast<int>(r), static_cast<int>(i)};
  };
  switch (kind) {
    case FamilyKind::Triangular: {
      const double below = j >= 2 ? std::pow(static_cast<double>(j - 1), alpha) : 0.0;
      if (j >= 2) out.push_back({at(j - 1, 1), below, 0.0});
      if (k >= 2) out.push_back({at(j, k - 1), below, -holonomy});
      if (k < row_size(j)) out.push_back({at(j, k + 1), below, holonomy});
      if (k == 1) {
        const double across = std::pow(static_cast<double>(j), alpha);
        for (std::int64_t m = 1; m <= row_size(j + 1); ++m) out.push_back({at(j + 1, m), across, 0.0});
      }
      break;
    }
    case FamilyKind::Bipartite:
      for (std::int64_t m = 1; m <= j - 1; ++m) out.push_back({at(j - 1, m), 1.0, 0.0});
      for (std::int64_t m = 1; m <= j + 1; ++m) out.push_back({at(j + 1, m), 1.0, 0.0});
      break;
    case FamilyKind::Path:
      if (j >= 2) {
        out.push_back({at(j - 1, 1), b_coef * std::pow(static_cast<double>(j - 1), b_exp), 0.0});
      }
      out.push_back({at(j + 1, 1), b_coef * std::pow(static_cast<double>(j), b_exp), 0.0});
      break;
  }
  for (auto& n : out) n.theta = wrap_angle(n.theta);
  return out;
}

std::size_t LayeredFamilySpec::degree(RowIndex x) const {
  switch (kind) {
    case FamilyKind::Triangular: {
      // avoid materializing the next row for the closed count
      const std::int64_t j = x.row;
      std::size_t d = (j >= 2 ? 1 : 0) + (x.index >= 2 ? 1 : 0) + (x.index < row_size(j) ? 1 : 0);
      if (x.index == 1) d += static_cast<std::size_t>(row_size(j + 1));
      return d;
    }
    case FamilyKind::Bipartite: return static_cast<std::size_t>(2 * x.row);
    case FamilyKind::Path: return x.row >= 2 ? 2 : 1;
  }
  return 0;
}

double LayeredFamilySpec::weighted_degree(RowIndex x) const {
  if (kind == FamilyKind::Bipartite) return 2.0 * x.row / measure(x.row);
  double total = 0.0;
  for (const auto& n : local_neighbors(x)) total += n.b;
  return total / measure(x.row);
}

double LayeredFamilySpec::sigma1(RowIndex x, RowIndex y) const {
  double b = 0.0;
  if (kind == FamilyKind::Bipartite) {
    if (std::abs(x.row - y.row) != 1) throw InputError("not an edge of the family");
    b = 1.0;
  } else {
    for (const auto& n : local_neighbors(x)) {
      if (n.at == y) b = n.b;
    }
    if (b <= 0.0) throw InputError("not an edge of the family");
  }
  const double rx = measure(x.row) / static_cast<double>(degree(x));
  const double ry = measure(y.row) / static_cast<double>(degree(y));
  return std::sqrt(std::min(rx, ry) / b);
}

double LayeredFamilySpec::length(RowIndex x, RowIndex y, LengthKind kind_) const {
  const double s = sigma1(x, y);
  if (kind_ == LengthKind::Sigma) return s;
  const double qmax = std::max(q_at(x.row), q_at(y.row));
  return s / std::sqrt(qmax);
}

namespace {

// q = c n^e with c >= 1, e >= 0: sigma_q steps pick up c^{-1/2} (j+1)^{-e/2}
// from below and c^{-1/2} j^{-e/2} from above.
std::optional<StepCertificate> rescale_by_q(const StepCertificate& base, const RowFormula& q,
                                            bool keeps_geodesic) {
  if (q.terms.size() != 1) return std::nullopt;
  const auto& t = q.terms.front();
  if (t.shift != 0 || t.coef < 1.0 || t.exponent < 0.0) return std::nullopt;
  StepCertificate out;
  out.exponent = base.exponent + 0.5 * t.exponent;
  out.escape_coef = base.escape_coef / std::sqrt(t.coef);
  out.spine_coef = base.spine_coef / std::sqrt(t.coef);
  out.spine_geodesic = base.spine_geodesic && keeps_geodesic;
  std::ostringstream os;
  os << base.statement << "; rescaled by q = " << q.describe();
  out.statement = os.str();
  return out;
}

}  // namespace

std::optional<StepCertificate> LayeredFamilySpec::step_certificate(LengthKind kind_) const {
  StepCertificate base;
  bool row_uniform = true;
  switch (kind) {
    case FamilyKind::Triangular:
      // floor(sqrt(j+1)) + 3 <= 3 sqrt(j+1) on crossing edges, and the spine
      // step never exceeds j^{-alpha/2 - beta - 1/4}
      base.exponent = beta + 0.5 * alpha + 0.25;
      base.escape_coef = 1.0 / std::sqrt(3.0);
      base.spine_coef = 1.0;
      base.spine_geodesic = true;
      base.statement = "crossing steps >= 3^{-1/2} (j+1)^{-p}, spine steps <= j^{-p}";
      row_uniform = false;
      break;
    case FamilyKind::Bipartite:
      base.exponent = 0.25;
      base.escape_coef = std::sqrt(0.5);
      base.spine_coef = std::sqrt(0.5);
      base.spine_geodesic = true;
      base.statement = "every crossing step equals 2^{-1/2} (j+1)^{-1/4}";
      break;
    case FamilyKind::Path: {
      if (b_exp < 0.0 || mu_exp > 0.0) return std::nullopt;
      base.exponent = 0.5 * (b_exp - mu_exp);
      base.escape_coef = std::sqrt(mu_coef / (2.0 * b_coef));
      base.spine_coef = base.escape_coef;
      base.spine_geodesic = true;
      base.statement = "steps between (mu_c/(2 b_c))^{1/2} (j+1)^{-p} and (mu_c/(2 b_c))^{1/2} j^{-p}";
      break;
    }
  }
  if (kind_ == LengthKind::Sigma) return base;
  if (!q) return base;
  return rescale_by_q(base, *q, row_uniform);
}

std::optional<EffectivePotentialBounds> LayeredFamilySpec::effective_potential_bounds() const {
  if (kind != FamilyKind::Triangular) return std::nullopt;
  // Unit-weight triangle with flux h has spectrum 2 - 2 cos((h + 2 pi k)/3);
  // mu <= 1 on every row only raises the lowest eigenvalue.
  double p = 2.0;
  for (int k = -1; k <= 1; ++k) {
    p = std::min(p, 2.0 - 2.0 * std::cos((wrap_angle(holonomy) + 2.0 * std::numbers::pi * k) / 3.0));
  }
  p = std::max(p, 0.0);
  EffectivePotentialBounds out;
  out.first_row_lower = 0.5 * p;
  out.lower = RowFormula::power(0.5 * p, alpha, -1);
  if (p < 1e-14) out.upper = RowFormula::zero();
  std::ostringstream os;
  os << "W_e >= " << 0.5 * p << " b_{n-1} on rows n >= 2 and >= " << 0.5 * p
     << " b_1 on row 1 (cell eigenvalue >= " << p << ")";
  out.statement = os.str();
  return out;
}

std::string LayeredFamilySpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case FamilyKind::Triangular:
      os << "ex51(alpha=" << alpha << ", beta=" << beta << ", holonomy=" << holonomy << ")";
      break;
    case FamilyKind::Bipartite: os << "ex52"; break;
    case FamilyKind::Path:
      os << "path(b=" << b_coef << "*n^" << b_exp << ", mu=" << mu_coef << "*n^" << mu_exp << ")";
      break;
  }
  os << " W=" << potential.describe();
  if (q) os << " q=" << q->describe();
  return os.str();
}

GraphBundle generate(const LayeredFamilySpec& spec, int rows) {
  spec.check();
  if (rows < 1) throw InputError("rows must be at least 1");
  std::vector<VertexIndex> offset(static_cast<std::size_t>(rows) + 2, 0);
  for (int r = 1; r <= rows; ++r) offset[r + 1] = offset[r] + static_cast<VertexIndex>(spec.row_size(r));

  BundleBuilder builder;
  for (int r = 1; r <= rows; ++r) {
    const double mu = spec.measure(r);
    const double w = spec.potential_at(r);
    for (std::int64_t k = 1; k <= spec.row_size(r); ++k) {
      builder.add_vertex(VertexId(r, static_cast<int>(k)), mu, w);
    }
  }
  auto index = [&](RowIndex x) { return offset[x.row] + static_cast<VertexIndex>(x.index - 1); };
  for (int r = 1; r <= rows; ++r) {
    for (std::int64_t k = 1; k <= spec.row_size(r); ++k) {
      const RowIndex x{r, static_cast<int>(k)};
      bool frontier = false;
      for (const auto& n : spec.local_neighbors(x)) {
        if (n.at.row > rows) {
          frontier = true;
          continue;
        }
        if (!(x < n.at)) continue;
        builder.add_edge(index(x), index(n.at), n.b, n.theta, spec.sigma1(x, n.at));
      }
      if (frontier) builder.mark_frontier(index(x));
    }
  }
  return std::move(builder).build();
}

int row_of(const WeightedGraph& g, VertexIndex x) {
  const auto& layer = g.id(x).layer();
  if (!layer) throw InputError("vertex has no row label: " + g.id(x).name());
  return layer->row;
}

std::vector<double> q_values(const LayeredFamilySpec& spec, const WeightedGraph& g) {
  std::vector<double> q(g.vertex_count());
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) q[x] = spec.q_at(row_of(g, x));
  return q;
}

double closed_form_sigma1_step(const LayeredFamilySpec& spec, std::int64_t j) {
  const auto jj = static_cast<double>(j);
  return std::pow(jj, -0.5 * spec.alpha) * std::pow(jj + 1.0, -spec.beta) /
         std::sqrt(static_cast<double>(floor_sqrt(j + 1) + 3));
}

double closed_form_spine_degree(std::int64_t j) {
  return j == 1 ? 2.0 : static_cast<double>(floor_sqrt(j) + 3);
}

double closed_form_spine_weighted_degree(const LayeredFamilySpec& spec, std::int64_t j) {
  if (j == 1) return 2.0;
  const auto jj = static_cast<double>(j);
  return std::pow(jj, 2.0 * spec.beta) *
         ((static_cast<double>(floor_sqrt(j)) + 1.0) * std::pow(jj, spec.alpha) +
          2.0 * std::pow(jj - 1.0, spec.alpha));
}

double closed_form_D_lower(const LayeredFamilySpec& spec, std::int64_t n) {
  const double gap = spec.beta + 0.5 * spec.alpha - 0.75;
  if (!(gap > 0.0)) throw InputError("D lower bound needs beta + alpha/2 > 3/4");
  return std::pow(static_cast<double>(n + 1), -gap) / (std::sqrt(3.0) * gap);
}

double closed_form_forcing_bound(const LayeredFamilySpec& spec, std::int64_t n) {
  const double c = 4.0 * spec.beta + 2.0 * spec.alpha - 3.0;
  return 3.0 * c * c * std::pow(static_cast<double>(n + 1), 2.0 * spec.beta + spec.alpha - 1.5) / 32.0;
}

double closed_form_bipartite_sigma_step(std::int64_t k) {
  return std::sqrt(0.5) * std::pow(static_cast<double>(k + 1), -0.25);
}

double closed_form_bipartite_sigma_q_step(std::int64_t k) {
  return 0.5 * std::pow(static_cast<double>(k + 1), -0.75);
}

double closed_form_golenia_an2(std::int64_t n, double delta, double lambda) {
  if (n < 1) throw InputError("n must be at least 1");
  if (n == 1) return 1.0;
  const auto m = static_cast<double>(n - 1);
  const double log_value =
      2.0 * m * std::log(delta + std::abs(lambda)) - m * std::log(4.0) - std::lgamma(m + 1.0);
  return std::exp(log_value);
}

}  // namespace sagraph
