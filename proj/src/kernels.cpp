#include "sagraph/kernels.hpp"

#include <cmath>
#include <cstdint>

namespace sagraph::kernels {

namespace {

inline cplx apply_row(const GraphBundle& bundle, std::span<const cplx> u, VertexIndex x) {
  const WeightedGraph& g = bundle.graph;
  cplx acc{0.0, 0.0};
  for (const auto& inc : g.incident(x)) {
    acc += inc.b * (u[x] - bundle.phase(inc) * u[inc.neighbor]);
  }
  return acc / g.mu(x) + bundle.potential[x] * u[x];
}

inline cplx symmetrized_row(const GraphBundle& bundle, std::span<const cplx> w, VertexIndex x) {
  const WeightedGraph& g = bundle.graph;
  const double mx = g.mu(x);
  double degree = 0.0;
  cplx off{0.0, 0.0};
  for (const auto& inc : g.incident(x)) {
    degree += inc.b;
    off += (inc.b / std::sqrt(mx * g.mu(inc.neighbor))) * bundle.phase(inc) * w[inc.neighbor];
  }
  return (degree / mx + bundle.potential[x]) * w[x] - off;
}

inline double edge_energy(const GraphBundle& bundle, std::span<const cplx> u,
                          std::span<const double> weight, EdgeIndex k) {
  const Edge& e = bundle.graph.edge(k);
  const cplx z = std::polar(1.0, bundle.theta.canonical(k));
  const double w = weight.empty() ? 1.0 : weight[k];
  return e.b * w * std::norm(u[e.u] - z * u[e.v]);
}

}  // namespace

void apply_serial(const GraphBundle& bundle, std::span<const cplx> u, std::span<cplx> out) {
  const std::size_t n = bundle.size();
  for (std::size_t x = 0; x < n; ++x) out[x] = apply_row(bundle, u, x);
}

void apply_parallel(const GraphBundle& bundle, std::span<const cplx> u, std::span<cplx> out) {
  const auto n = static_cast<std::int64_t>(bundle.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < n; ++x) {
    out[static_cast<std::size_t>(x)] = apply_row(bundle, u, static_cast<VertexIndex>(x));
  }
}

void apply(const GraphBundle& bundle, std::span<const cplx> u, std::span<cplx> out) {
  if (bundle.size() >= kParallelThreshold) {
    apply_parallel(bundle, u, out);
  } else {
    apply_serial(bundle, u, out);
  }
}

void symmetrized_apply_serial(const GraphBundle& bundle, std::span<const cplx> w,
                              std::span<cplx> out) {
  const std::size_t n = bundle.size();
  for (std::size_t x = 0; x < n; ++x) out[x] = symmetrized_row(bundle, w, x);
}

void symmetrized_apply_parallel(const GraphBundle& bundle, std::span<const cplx> w,
                                std::span<cplx> out) {
  const auto n = static_cast<std::int64_t>(bundle.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < n; ++x) {
    out[static_cast<std::size_t>(x)] = symmetrized_row(bundle, w, static_cast<VertexIndex>(x));
  }
}

void symmetrized_apply(const GraphBundle& bundle, std::span<const cplx> w, std::span<cplx> out) {
  if (bundle.size() >= kParallelThreshold) {
    symmetrized_apply_parallel(bundle, w, out);
  } else {
    symmetrized_apply_serial(bundle, w, out);
  }
}

void edge_energies_serial(const GraphBundle& bundle, std::span<const cplx> u,
                          std::span<const double> weight, std::span<double> out) {
  const std::size_t m = bundle.graph.edge_count();
  for (std::size_t k = 0; k < m; ++k) out[k] = edge_energy(bundle, u, weight, k);
}

void edge_energies_parallel(const GraphBundle& bundle, std::span<const cplx> u,
                            std::span<const double> weight, std::span<double> out) {
  const auto m = static_cast<std::int64_t>(bundle.graph.edge_count());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < m; ++k) {
    out[static_cast<std::size_t>(k)] = edge_energy(bundle, u, weight, static_cast<EdgeIndex>(k));
  }
}

void edge_energies(const GraphBundle& bundle, std::span<const cplx> u,
                   std::span<const double> weight, std::span<double> out) {
  if (bundle.graph.edge_count() >= kParallelThreshold) {
    edge_energies_parallel(bundle, u, weight, out);
  } else {
    edge_energies_serial(bundle, u, weight, out);
  }
}

}  // namespace sagraph::kernels
