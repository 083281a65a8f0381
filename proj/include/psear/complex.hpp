#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "psear/error.hpp"
#include "psear/graph.hpp"
#include "psear/util.hpp"

namespace psear {

// A face is a strictly increasing sequence of vertex ids; the empty face is
// the empty vector. Dimension is |F| - 1.
using Face = std::vector<VertexId>;

inline Face make_face(std::vector<VertexId> vs) {
  std::sort(vs.begin(), vs.end());
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    if (vs[i] == vs[i + 1]) fail(ErrorKind::InvalidArguments, "repeated vertex in face");
  }
  for (VertexId v : vs) {
    if (v <= 0) fail(ErrorKind::InvalidArguments, "vertex ids must be positive");
  }
  return vs;
}

struct FVector {
  // entries[0] = f_{-1}, entries[i+1] = f_i.
  std::array<std::int64_t, 4> entries{0, 0, 0, 0};

  bool operator==(const FVector& o) const { return entries == o.entries; }
  std::string str() const { return "(" + join_ints(entries, ", ") + ")"; }
};

struct HVector {
  std::array<std::int64_t, 4> entries{0, 0, 0, 0};

  bool operator==(const HVector& o) const { return entries == o.entries; }
  HVector operator+(const HVector& o) const {
    HVector r;
    for (int i = 0; i < 4; ++i) r.entries[i] = entries[i] + o.entries[i];
    return r;
  }
  std::string str() const { return "(" + join_ints(entries, ", ") + ")"; }
};

struct SimplicialComplex {
  std::set<Face> faces;

  bool empty() const { return faces.empty(); }
  bool contains(const Face& f) const { return faces.count(f) > 0; }
  bool has_edge(VertexId u, VertexId v) const {
    return contains(make_face({u, v}));
  }

  int dimension() const {
    int d = -1;
    for (const Face& f : faces) d = std::max<int>(d, static_cast<int>(f.size()) - 1);
    return d;
  }

  std::set<VertexId> vertex_set() const {
    std::set<VertexId> out;
    for (const Face& f : faces) out.insert(f.begin(), f.end());
    return out;
  }

  VertexId max_vertex() const {
    VertexId m = 0;
    for (VertexId v : vertex_set()) m = std::max(m, v);
    return m;
  }

  std::vector<Face> facets() const {
    std::vector<Face> out;
    for (const Face& f : faces) {
      bool maximal = true;
      for (const Face& g : faces) {
        if (g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end())) {
          maximal = false;
          break;
        }
      }
      if (maximal && !f.empty()) out.push_back(f);
    }
    return out;
  }

  bool is_downward_closed() const {
    for (const Face& f : faces) {
      // Drop one vertex at a time; closure of those covers all subsets.
      for (std::size_t i = 0; i < f.size(); ++i) {
        Face sub;
        for (std::size_t k = 0; k < f.size(); ++k) {
          if (k != i) sub.push_back(f[k]);
        }
        if (!contains(sub)) return false;
      }
    }
    return true;
  }
};

// Adds the face together with all of its subsets; idempotent.
inline SimplicialComplex add_face(const SimplicialComplex& c, const Face& face) {
  if (face.size() > 3) {
    fail(ErrorKind::UnsupportedDimension, "faces of dimension > 2 are not supported");
  }
  SimplicialComplex out = c;
  std::size_t n = face.size();
  for (std::size_t mask = 0; mask < (1u << n); ++mask) {
    Face sub;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) sub.push_back(face[i]);
    }
    out.faces.insert(sub);
  }
  return out;
}

inline FVector f_vector(const SimplicialComplex& c) {
  FVector f;
  if (c.empty()) return f;
  for (const Face& face : c.faces) {
    if (face.size() > 3) {
      fail(ErrorKind::UnsupportedDimension, "f_vector: dimension > 2");
    }
    ++f.entries[face.size()];
  }
  return f;
}

// d = 3 transformation: h_0 = 1, h_1 = f_0 - 3, h_2 = f_1 - 2 f_0 + 3,
// h_3 = f_2 - f_1 + f_0 - 1.
inline HVector h_vector(const FVector& f) {
  if (f.entries[0] != 1) {
    fail(ErrorKind::InvalidArguments, "h_vector: empty complex");
  }
  std::int64_t f0 = f.entries[1], f1 = f.entries[2], f2 = f.entries[3];
  HVector h;
  h.entries[0] = 1;
  h.entries[1] = f0 - 3;
  h.entries[2] = f1 - 2 * f0 + 3;
  h.entries[3] = f2 - f1 + f0 - 1;

  // Cross-check against h_j = sum_i (-1)^{j-i} C(3-i, 3-j) f_{i-1}.
  for (int j = 0; j <= 3; ++j) {
    std::int64_t s = 0;
    for (int i = 0; i <= j; ++i) {
      std::int64_t term = binomial(3 - i, 3 - j) * f.entries[i];
      s += ((j - i) % 2 == 0) ? term : -term;
    }
    if (s != h.entries[j]) {
      fail(ErrorKind::IdentityViolation, "h_vector: binomial cross-check failed");
    }
  }
  return h;
}

inline HVector h_vector(const SimplicialComplex& c) { return h_vector(f_vector(c)); }

inline SimpleGraph one_skeleton(const SimplicialComplex& c) {
  SimpleGraph g;
  for (const Face& f : c.faces) {
    if (f.size() == 1) g.add_vertex(f[0]);
    if (f.size() == 2) g.add_edge(f[0], f[1]);
  }
  return g;
}

}  // namespace psear
