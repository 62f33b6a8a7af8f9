#pragma once

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP version; both evaluate each output entry with the same arithmetic in
// the same order, so results are bitwise identical. Reductions are left to
// callers, which sum the per-entry outputs serially.

#include <span>

#include "sagraph/graph.hpp"

namespace sagraph::kernels {

/// Vertex count from which the dispatching wrappers switch to OpenMP.
inline constexpr std::size_t kParallelThreshold = 2048;

/// out(x) = (1/mu(x)) sum_y b(x,y) (u(x) - e^{i theta(x,y)} u(y)) + W(x) u(x)
void apply_serial(const GraphBundle& bundle, std::span<const cplx> u, std::span<cplx> out);
void apply_parallel(const GraphBundle& bundle, std::span<const cplx> u, std::span<cplx> out);
void apply(const GraphBundle& bundle, std::span<const cplx> u, std::span<cplx> out);

/// out(x) = (Deg(x) + W(x)) w(x) - sum_y b e^{i theta(x,y)} w(y) / sqrt(mu(x) mu(y)),
/// the mu-symmetrized operator acting on plain l^2 coordinates.
void symmetrized_apply_serial(const GraphBundle& bundle, std::span<const cplx> w,
                              std::span<cplx> out);
void symmetrized_apply_parallel(const GraphBundle& bundle, std::span<const cplx> w,
                                std::span<cplx> out);
void symmetrized_apply(const GraphBundle& bundle, std::span<const cplx> w, std::span<cplx> out);

/// out[k] = b_k * weight[k] * |u(u_k) - e^{i theta_k} u(v_k)|^2 per stored edge.
/// An empty `weight` means weight 1.
void edge_energies_serial(const GraphBundle& bundle, std::span<const cplx> u,
                          std::span<const double> weight, std::span<double> out);
void edge_energies_parallel(const GraphBundle& bundle, std::span<const cplx> u,
                            std::span<const double> weight, std::span<double> out);
void edge_energies(const GraphBundle& bundle, std::span<const cplx> u,
                   std::span<const double> weight, std::span<double> out);

}  // namespace sagraph::kernels
