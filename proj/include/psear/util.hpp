#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace psear {

using VertexId = int;

// Undirected edge, stored with first < second.
using Edge = std::pair<VertexId, VertexId>;

inline Edge make_edge(VertexId u, VertexId v) {
  return u < v ? Edge{u, v} : Edge{v, u};
}

// Reverse-lexicographic edge order: ascending by (max endpoint, min endpoint).
inline bool edge_revlex_less(const Edge& a, const Edge& b) {
  if (a.second != b.second) return a.second < b.second;
  return a.first < b.first;
}

// Revlex order on sorted vertex triples: ascending by (k, j, i).
inline bool triple_revlex_less(const std::array<VertexId, 3>& a,
                               const std::array<VertexId, 3>& b) {
  if (a[2] != b[2]) return a[2] < b[2];
  if (a[1] != b[1]) return a[1] < b[1];
  return a[0] < b[0];
}

// C(n, k) with C(n, k) = 0 whenever n < 0, k < 0, or n < k.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || n < k) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

template <typename Container>
std::string join_ints(const Container& xs, const std::string& sep) {
  std::ostringstream out;
  bool first = true;
  for (auto x : xs) {
    if (!first) out << sep;
    out << x;
    first = false;
  }
  return out.str();
}

}  // namespace psear
