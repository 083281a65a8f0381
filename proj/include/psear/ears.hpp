#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "psear/complex.hpp"
#include "psear/error.hpp"
#include "psear/graph.hpp"

namespace psear {

// ---------------------------------------------------------------------------
// Base spheres (canonical labelings)
// ---------------------------------------------------------------------------

enum class BaseKind { Tetrahedron, Bipyramid, Octahedron };

inline const char* base_name(BaseKind k) {
  switch (k) {
    case BaseKind::Tetrahedron: return "tetrahedron";
    case BaseKind::Bipyramid: return "bipyramid";
    case BaseKind::Octahedron: return "octahedron";
  }
  return "?";
}

inline int base_vertex_count(BaseKind k) {
  switch (k) {
    case BaseKind::Tetrahedron: return 4;
    case BaseKind::Bipyramid: return 5;
    case BaseKind::Octahedron: return 6;
  }
  return 0;
}

inline std::vector<Face> base_facets(BaseKind k) {
  switch (k) {
    case BaseKind::Tetrahedron:
      return {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}};
    case BaseKind::Bipyramid:
      // Axis {4, 5}, equator 1-2-3.
      return {{1, 2, 4}, {2, 3, 4}, {1, 3, 4}, {1, 2, 5}, {2, 3, 5}, {1, 3, 5}};
    case BaseKind::Octahedron: {
      // Diagonal pairs {1,4}, {2,5}, {3,6}; faces pick one vertex per pair.
      std::vector<Face> out;
      for (VertexId a : {1, 4}) {
        for (VertexId b : {2, 5}) {
          for (VertexId c : {3, 6}) out.push_back(make_face({a, b, c}));
        }
      }
      return out;
    }
  }
  return {};
}

inline SimplicialComplex base_complex(BaseKind k) {
  SimplicialComplex c;
  for (const Face& f : base_facets(k)) c = add_face(c, f);
  return c;
}

inline HVector base_h(BaseKind k) {
  switch (k) {
    case BaseKind::Tetrahedron: return HVector{{1, 1, 1, 1}};
    case BaseKind::Bipyramid: return HVector{{1, 2, 2, 1}};
    case BaseKind::Octahedron: return HVector{{1, 3, 3, 1}};
  }
  return HVector{};
}

// ---------------------------------------------------------------------------
// Ears
// ---------------------------------------------------------------------------

struct EarA {
  VertexId apex = 0;
  std::array<VertexId, 3> cycle{};
};

struct EarB {
  VertexId apex = 0;
  std::array<VertexId, 4> cycle{};  // cyclic order; diagonals are not glued
};

struct EarE {
  std::array<VertexId, 2> chord{};
  std::array<VertexId, 4> cycle{};  // chord endpoints at positions 0 and 2
};

struct EarF {
  std::array<VertexId, 3> face{};
};

using Ear = std::variant<EarA, EarB, EarE, EarF>;

inline char ear_type(const Ear& e) {
  switch (e.index()) {
    case 0: return 'A';
    case 1: return 'B';
    case 2: return 'E';
    default: return 'F';
  }
}

inline EarA normalized(EarA e) {
  std::sort(e.cycle.begin(), e.cycle.end());
  return e;
}

// Canonical cyclic order: smallest vertex first, then its smaller neighbor.
inline EarB normalized(EarB e) {
  auto& c = e.cycle;
  int mi = 0;
  for (int i = 1; i < 4; ++i) {
    if (c[i] < c[mi]) mi = i;
  }
  std::array<VertexId, 4> fwd{c[mi], c[(mi + 1) % 4], c[(mi + 2) % 4], c[(mi + 3) % 4]};
  std::array<VertexId, 4> rev{c[mi], c[(mi + 3) % 4], c[(mi + 2) % 4], c[(mi + 1) % 4]};
  e.cycle = fwd[1] <= rev[1] ? fwd : rev;
  return e;
}

inline EarE normalized(EarE e) {
  VertexId cmin = std::min(e.chord[0], e.chord[1]);
  VertexId cmax = std::max(e.chord[0], e.chord[1]);
  VertexId tmin = std::min(e.cycle[1], e.cycle[3]);
  VertexId tmax = std::max(e.cycle[1], e.cycle[3]);
  e.chord = {cmin, cmax};
  e.cycle = {cmin, tmin, cmax, tmax};
  return e;
}

inline EarF normalized(EarF e) {
  std::sort(e.face.begin(), e.face.end());
  return e;
}

inline Ear normalized(const Ear& e) {
  return std::visit([](auto x) -> Ear { return normalized(x); }, e);
}

struct EarCounts {
  int a = 0, b = 0, e = 0, f = 0;

  int total() const { return a + b + e + f; }
  bool operator==(const EarCounts& o) const {
    return a == o.a && b == o.b && e == o.e && f == o.f;
  }
  std::string str() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," +
           std::to_string(e) + "," + std::to_string(f) + ")";
  }
};

struct EarDecomposition {
  BaseKind base = BaseKind::Tetrahedron;
  std::vector<Ear> ears;
};

inline EarCounts ear_counts(const EarDecomposition& dec) {
  EarCounts c;
  for (const Ear& e : dec.ears) {
    switch (ear_type(e)) {
      case 'A': ++c.a; break;
      case 'B': ++c.b; break;
      case 'E': ++c.e; break;
      case 'F': ++c.f; break;
    }
  }
  return c;
}

// For d = 3: A contributes (0,1,1,1), B (0,1,2,1), E (0,0,1,1), F (0,0,0,1).
inline HVector h_from_counts(BaseKind base, const EarCounts& c) {
  HVector h = base_h(base);
  h.entries[1] += c.a + c.b;
  h.entries[2] += c.a + 2 * c.b + c.e;
  h.entries[3] += c.a + c.b + c.e + c.f;
  return h;
}

// ---------------------------------------------------------------------------
// Realization with eager per-ear gluing validation
// ---------------------------------------------------------------------------

namespace detail {

[[noreturn]] inline void gluing_fail(std::size_t index, char type,
                                     const std::string& what) {
  fail(ErrorKind::GluingViolation,
       "ears[" + std::to_string(index) + "] (type " + type + "): " + what);
}

inline void require_vertices_exist(const SimplicialComplex& c,
                                   const std::vector<VertexId>& vs,
                                   std::size_t index, char type) {
  for (VertexId v : vs) {
    if (!c.contains({v})) {
      gluing_fail(index, type, "vertex " + std::to_string(v) + " does not exist");
    }
  }
}

}  // namespace detail

// Validates one ear against the complex built so far (boundary present,
// interior absent, fresh apex ids exactly max-id-so-far + 1) and glues it in.
inline void apply_ear(SimplicialComplex& c, VertexId& maxv, const Ear& ear,
                      std::size_t k) {
  if (const EarA* a = std::get_if<EarA>(&ear)) {
    const auto& cy = a->cycle;
    if (cy[0] == cy[1] || cy[1] == cy[2] || cy[0] == cy[2]) {
      detail::gluing_fail(k, 'A', "cycle vertices not distinct");
    }
    detail::require_vertices_exist(c, {cy[0], cy[1], cy[2]}, k, 'A');
    if (a->apex != maxv + 1) {
      detail::gluing_fail(k, 'A', "apex " + std::to_string(a->apex) +
                                      " is not the next fresh id " +
                                      std::to_string(maxv + 1));
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        if (!c.has_edge(cy[i], cy[j])) {
          detail::gluing_fail(k, 'A', "cycle edge {" + std::to_string(cy[i]) + "," +
                                          std::to_string(cy[j]) + "} missing");
        }
      }
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        c = add_face(c, make_face({a->apex, cy[i], cy[j]}));
      }
    }
    maxv = a->apex;
  } else if (const EarB* b = std::get_if<EarB>(&ear)) {
    const auto& cy = b->cycle;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        if (cy[i] == cy[j]) detail::gluing_fail(k, 'B', "cycle vertices not distinct");
      }
    }
    detail::require_vertices_exist(c, {cy[0], cy[1], cy[2], cy[3]}, k, 'B');
    if (b->apex != maxv + 1) {
      detail::gluing_fail(k, 'B', "apex " + std::to_string(b->apex) +
                                      " is not the next fresh id " +
                                      std::to_string(maxv + 1));
    }
    for (int i = 0; i < 4; ++i) {
      VertexId u = cy[i], v = cy[(i + 1) % 4];
      if (!c.has_edge(u, v)) {
        detail::gluing_fail(k, 'B', "cycle edge {" + std::to_string(u) + "," +
                                        std::to_string(v) + "} missing");
      }
    }
    for (int i = 0; i < 4; ++i) {
      c = add_face(c, make_face({b->apex, cy[i], cy[(i + 1) % 4]}));
    }
    maxv = b->apex;
  } else if (const EarE* e = std::get_if<EarE>(&ear)) {
    const auto& cy = e->cycle;
    if (!((e->chord[0] == cy[0] && e->chord[1] == cy[2]) ||
          (e->chord[0] == cy[2] && e->chord[1] == cy[0]))) {
      detail::gluing_fail(k, 'E', "chord endpoints must be cycle entries 1 and 3");
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        if (cy[i] == cy[j]) detail::gluing_fail(k, 'E', "cycle vertices not distinct");
      }
    }
    detail::require_vertices_exist(c, {cy[0], cy[1], cy[2], cy[3]}, k, 'E');
    for (int i = 0; i < 4; ++i) {
      VertexId u = cy[i], v = cy[(i + 1) % 4];
      if (!c.has_edge(u, v)) {
        detail::gluing_fail(k, 'E', "cycle edge {" + std::to_string(u) + "," +
                                        std::to_string(v) + "} missing");
      }
    }
    if (c.has_edge(e->chord[0], e->chord[1])) {
      detail::gluing_fail(k, 'E', "chord {" + std::to_string(e->chord[0]) + "," +
                                      std::to_string(e->chord[1]) + "} already present");
    }
    Face t1 = make_face({e->chord[0], e->chord[1], cy[1]});
    Face t2 = make_face({e->chord[0], e->chord[1], cy[3]});
    if (c.contains(t1) || c.contains(t2)) {
      detail::gluing_fail(k, 'E', "chord triangle already present");
    }
    c = add_face(c, t1);
    c = add_face(c, t2);
  } else {
    const EarF* f = std::get_if<EarF>(&ear);
    const auto& fc = f->face;
    if (fc[0] == fc[1] || fc[1] == fc[2] || fc[0] == fc[2]) {
      detail::gluing_fail(k, 'F', "face vertices not distinct");
    }
    detail::require_vertices_exist(c, {fc[0], fc[1], fc[2]}, k, 'F');
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        if (!c.has_edge(fc[i], fc[j])) {
          detail::gluing_fail(k, 'F', "face edge {" + std::to_string(fc[i]) + "," +
                                          std::to_string(fc[j]) + "} missing");
        }
      }
    }
    Face face = make_face({fc[0], fc[1], fc[2]});
    if (c.contains(face)) {
      detail::gluing_fail(k, 'F', "face already present");
    }
    c = add_face(c, face);
  }
}

// Builds Sigma_0 u ... u Sigma_t with eager per-ear validation.
inline SimplicialComplex realize(const EarDecomposition& dec) {
  SimplicialComplex c = base_complex(dec.base);
  VertexId maxv = base_vertex_count(dec.base);
  for (std::size_t k = 0; k < dec.ears.size(); ++k) {
    apply_ear(c, maxv, dec.ears[k], k);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Labeled graphs of decompositions
// ---------------------------------------------------------------------------

namespace detail {

inline void add_ear_edges(LabeledGraph& g, const Ear& ear) {
  if (const EarA* a = std::get_if<EarA>(&ear)) {
    g.add_vertex(a->apex, 3);
    for (VertexId v : a->cycle) g.add_edge(a->apex, v, a->apex);
  } else if (const EarB* b = std::get_if<EarB>(&ear)) {
    g.add_vertex(b->apex, 4);
    for (VertexId v : b->cycle) g.add_edge(b->apex, v, b->apex);
  } else if (const EarE* e = std::get_if<EarE>(&ear)) {
    g.add_edge(e->chord[0], e->chord[1], std::nullopt);
  }
  // F-ears add no edges.
}

}  // namespace detail

// 1-skeleton with construction labels, for any base. For the octahedron the
// twelve base edges are labeled 0 and the result is not constructible.
inline LabeledGraph labeled_graph_raw(const EarDecomposition& dec) {
  LabeledGraph g;
  int nb = base_vertex_count(dec.base);
  SimplicialComplex base = base_complex(dec.base);
  if (dec.base == BaseKind::Bipyramid) {
    // K5 minus {4,5} decomposes as K4 plus a type-3 creation of vertex 5.
    for (VertexId v = 1; v <= 4; ++v) g.add_vertex(v);
    for (VertexId u = 1; u <= 4; ++u) {
      for (VertexId v = u + 1; v <= 4; ++v) g.add_edge(u, v, 0);
    }
    g.add_vertex(5, 3);
    for (VertexId u = 1; u <= 3; ++u) g.add_edge(u, 5, 5);
  } else {
    for (VertexId v = 1; v <= nb; ++v) g.add_vertex(v);
    for (VertexId u = 1; u <= nb; ++u) {
      for (VertexId v = u + 1; v <= nb; ++v) {
        if (base.has_edge(u, v)) g.add_edge(u, v, 0);
      }
    }
  }
  for (const Ear& ear : dec.ears) detail::add_ear_edges(g, ear);
  return g;
}

// Constructible labeled graph of a tetrahedron- or bipyramid-based
// decomposition. The octahedron graph contains no K4, so it has no
// constructible labeling and is rejected here.
inline LabeledGraph labeled_graph_of(const EarDecomposition& dec) {
  if (dec.base == BaseKind::Octahedron) {
    fail(ErrorKind::InvalidArguments,
         "labeled_graph_of: unsupported base (octahedron graph has no K4)");
  }
  return labeled_graph_raw(dec);
}

}  // namespace psear
