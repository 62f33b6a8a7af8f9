#include "sagraph/digest.hpp"

#include <bit>
#include <cstdio>

namespace sagraph {

Fnv1a& Fnv1a::add(std::string_view bytes) {
  for (unsigned char c : bytes) {
    state_ ^= c;
    state_ *= 0x100000001b3ULL;
  }
  return *this;
}

Fnv1a& Fnv1a::add(std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    state_ ^= (value >> (8 * i)) & 0xffU;
    state_ *= 0x100000001b3ULL;
  }
  return *this;
}

Fnv1a& Fnv1a::add(double value) { return add(std::bit_cast<std::uint64_t>(value)); }

std::string Fnv1a::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
  return buf;
}

std::string digest(const GraphBundle& bundle) {
  Fnv1a h;
  const WeightedGraph& g = bundle.graph;
  h.add(static_cast<std::uint64_t>(g.vertex_count()));
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    h.add(g.id(x).name()).add(g.mu(x)).add(bundle.potential[x]);
  }
  h.add(static_cast<std::uint64_t>(g.edge_count()));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    h.add(static_cast<std::uint64_t>(edge.u)).add(static_cast<std::uint64_t>(edge.v)).add(edge.b);
    h.add(bundle.theta.canonical(e));
    if (bundle.sigma) h.add((*bundle.sigma)[e]);
  }
  for (VertexIndex f : bundle.frontier) h.add(static_cast<std::uint64_t>(f));
  return h.hex();
}

}  // namespace sagraph
