#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace oracle {

using sagraph::VertexIndex;

Matrix operator_matrix(const sagraph::GraphBundle& bundle) {
  const auto& g = bundle.graph;
  const std::size_t n = g.vertex_count();
  Matrix h(n, std::vector<cplx>(n, 0.0));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    const double t = bundle.theta.canonical(e);
    // theta(u, v) = t and theta(v, u) = -t.
    h[edge.u][edge.u] += edge.b / g.mu(edge.u);
    h[edge.v][edge.v] += edge.b / g.mu(edge.v);
    h[edge.u][edge.v] -= edge.b / g.mu(edge.u) * std::polar(1.0, t);
    h[edge.v][edge.u] -= edge.b / g.mu(edge.v) * std::polar(1.0, -t);
  }
  for (std::size_t x = 0; x < n; ++x) h[x][x] += bundle.potential[x];
  return h;
}

Matrix symmetrized_matrix(const sagraph::GraphBundle& bundle) {
  Matrix s = operator_matrix(bundle);
  const auto& g = bundle.graph;
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (std::size_t y = 0; y < s.size(); ++y) s[x][y] *= std::sqrt(g.mu(x) / g.mu(y));
  }
  return s;
}

std::vector<double> jacobi_eigenvalues(Matrix a) {
  const std::size_t n = a.size();
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a[i][j]);
    return std::sqrt(s);
  };
  double scale = 0.0;
  for (const auto& row : a)
    for (const auto& v : row) scale += std::norm(v);
  scale = std::sqrt(scale);

  for (int sweep = 0; sweep < 100 && off_norm() > 1e-15 * std::max(scale, 1e-300); ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a[p][q]);
        if (mag == 0.0) continue;
        // Rotate the phase of a_pq away with diag(1, e^{-i phi}), then a
        // real Givens rotation kills the now real off-diagonal entry.
        const cplx ph = a[p][q] / mag;
        const double app = a[p][p].real();
        const double aqq = a[q][q].real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx u00 = c, u01 = s;
        const cplx u10 = -s * std::conj(ph), u11 = c * std::conj(ph);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx kp = a[k][p], kq = a[k][q];
          a[k][p] = kp * u00 + kq * u10;
          a[k][q] = kp * u01 + kq * u11;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx pk = a[p][k], qk = a[q][k];
          a[p][k] = std::conj(u00) * pk + std::conj(u10) * qk;
          a[q][k] = std::conj(u01) * pk + std::conj(u11) * qk;
        }
        a[p][q] = a[q][p] = 0.0;
      }
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i][i].real();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> closed_form_eigenvalues(const Matrix& a) {
  const std::size_t n = a.size();
  if (n == 1) return {a[0][0].real()};
  if (n == 2) {
    const double m = 0.5 * (a[0][0].real() + a[1][1].real());
    const double d = 0.5 * (a[0][0].real() - a[1][1].real());
    const double r = std::sqrt(d * d + std::norm(a[0][1]));
    return {m - r, m + r};
  }
  // Trigonometric roots of the characteristic cubic.
  const double p1 = std::norm(a[0][1]) + std::norm(a[0][2]) + std::norm(a[1][2]);
  const double q = (a[0][0].real() + a[1][1].real() + a[2][2].real()) / 3.0;
  const double d0 = a[0][0].real() - q, d1 = a[1][1].real() - q, d2 = a[2][2].real() - q;
  const double p = std::sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1) / 6.0);
  if (p == 0.0) return {q, q, q};
  Matrix b = a;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) b[i][j] = (a[i][j] - (i == j ? q : 0.0)) / p;
  }
  const cplx det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                   b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                   b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  const double r = std::clamp(0.5 * det.real(), -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double e2 = 3.0 * q - e1 - e3;
  std::vector<double> out{e1, e2, e3};
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void explore(const sagraph::WeightedGraph& g, const std::vector<double>& len, VertexIndex at, double so_far,
             std::vector<bool>& on_path, std::vector<double>& best) {
  best[at] = std::min(best[at], so_far);
  for (const auto& inc : g.incident(at)) {
    if (on_path[inc.neighbor]) continue;
    on_path[inc.neighbor] = true;
    explore(g, len, inc.neighbor, so_far + len[inc.edge], on_path, best);
    on_path[inc.neighbor] = false;
  }
}

}  // namespace

std::vector<double> exhaustive_distances(const sagraph::WeightedGraph& g, const std::vector<double>& len,
                                         VertexIndex source) {
  std::vector<double> best(g.vertex_count(), std::numeric_limits<double>::infinity());
  std::vector<bool> on_path(g.vertex_count(), false);
  on_path[source] = true;
  explore(g, len, source, 0.0, on_path, best);
  return best;
}

double quadratic_form(const sagraph::GraphBundle& bundle, const std::vector<cplx>& u) {
  const Matrix h = operator_matrix(bundle);
  cplx total = 0.0;
  for (std::size_t x = 0; x < u.size(); ++x) {
    cplx hu = 0.0;
    for (std::size_t y = 0; y < u.size(); ++y) hu += h[x][y] * u[y];
    total += bundle.graph.mu(x) * std::conj(u[x]) * hu;
  }
  return total.real();
}

}  // namespace oracle
