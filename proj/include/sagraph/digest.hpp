#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "sagraph/graph.hpp"

namespace sagraph {

/// 64-bit FNV-1a over a byte stream; used to fingerprint report inputs.
class Fnv1a {
 public:
  Fnv1a& add(std::string_view bytes);
  Fnv1a& add(double value);
  Fnv1a& add(std::uint64_t value);
  std::uint64_t value() const noexcept { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

/// Fingerprint of vertices, measures, edges, phases, potential, lengths and
/// frontier, in storage order.
std::string digest(const GraphBundle& bundle);

}  // namespace sagraph
