#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "psear/error.hpp"
#include "psear/util.hpp"

namespace psear {

// ---------------------------------------------------------------------------
// Simple graphs
// ---------------------------------------------------------------------------

struct SimpleGraph {
  std::set<VertexId> vertices;
  std::set<Edge> edges;

  void add_vertex(VertexId v) { vertices.insert(v); }

  void add_edge(VertexId u, VertexId v) {
    if (u == v) fail(ErrorKind::InvalidArguments, "loop edge");
    vertices.insert(u);
    vertices.insert(v);
    edges.insert(make_edge(u, v));
  }

  bool has_edge(VertexId u, VertexId v) const {
    return edges.count(make_edge(u, v)) > 0;
  }

  std::set<VertexId> neighbors(VertexId v) const {
    std::set<VertexId> out;
    for (const Edge& e : edges) {
      if (e.first == v) out.insert(e.second);
      if (e.second == v) out.insert(e.first);
    }
    return out;
  }

  int degree(VertexId v) const {
    int d = 0;
    for (const Edge& e : edges) {
      if (e.first == v || e.second == v) ++d;
    }
    return d;
  }

  bool operator==(const SimpleGraph& o) const {
    return vertices == o.vertices && edges == o.edges;
  }
};

// S_{i,j}: every edge e with v_j in e, v_i not in e, and (e \ {v_j}) + {v_i}
// absent from the original edge set is replaced by that target edge.
inline SimpleGraph shift(const SimpleGraph& g, VertexId i, VertexId j) {
  if (i == j) fail(ErrorKind::InvalidArguments, "shift requires i != j");
  if (!g.vertices.count(i) || !g.vertices.count(j)) {
    fail(ErrorKind::InvalidArguments, "shift vertices must belong to the graph");
  }
  SimpleGraph out;
  out.vertices = g.vertices;
  for (const Edge& e : g.edges) {
    VertexId other = e.first == j ? e.second : (e.second == j ? e.first : 0);
    if (other != 0 && other != i && !g.edges.count(make_edge(i, other))) {
      out.edges.insert(make_edge(i, other));
    } else {
      out.edges.insert(e);
    }
  }
  return out;
}

inline std::vector<std::array<VertexId, 3>> triangles(const SimpleGraph& g) {
  std::vector<VertexId> vs(g.vertices.begin(), g.vertices.end());
  std::vector<std::array<VertexId, 3>> out;
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      if (!g.has_edge(vs[a], vs[b])) continue;
      for (std::size_t c = b + 1; c < vs.size(); ++c) {
        if (g.has_edge(vs[a], vs[c]) && g.has_edge(vs[b], vs[c])) {
          out.push_back({vs[a], vs[b], vs[c]});
        }
      }
    }
  }
  return out;
}

inline std::int64_t triangle_count(const SimpleGraph& g) {
  return static_cast<std::int64_t>(triangles(g).size());
}

// ---------------------------------------------------------------------------
// Labeled graphs (constructible-graph machinery)
// ---------------------------------------------------------------------------

// Edge label: 0 for the initial K4, a vertex id for edges created with that
// vertex, or absent for edges inserted as missing edges.
using EdgeLabel = std::optional<int>;

struct LabeledVertex {
  VertexId id = 0;
  std::optional<int> type;  // 3 or 4; absent for the four initial vertices
};

struct LabeledGraph {
  std::vector<LabeledVertex> vertices;  // creation order
  std::map<Edge, EdgeLabel> edges;

  bool has_vertex(VertexId v) const {
    for (const auto& lv : vertices) {
      if (lv.id == v) return true;
    }
    return false;
  }

  const LabeledVertex* find_vertex(VertexId v) const {
    for (const auto& lv : vertices) {
      if (lv.id == v) return &lv;
    }
    return nullptr;
  }

  bool has_edge(VertexId u, VertexId v) const {
    return edges.count(make_edge(u, v)) > 0;
  }

  void add_vertex(VertexId v, std::optional<int> type = std::nullopt) {
    if (has_vertex(v)) fail(ErrorKind::InvalidArguments, "duplicate vertex");
    vertices.push_back({v, type});
  }

  void add_edge(VertexId u, VertexId v, EdgeLabel label) {
    if (u == v) fail(ErrorKind::InvalidArguments, "loop edge");
    if (!has_vertex(u) || !has_vertex(v)) {
      fail(ErrorKind::InvalidArguments, "edge endpoint missing");
    }
    Edge e = make_edge(u, v);
    if (edges.count(e)) fail(ErrorKind::InvalidArguments, "duplicate edge");
    edges.emplace(e, label);
  }

  int degree(VertexId v) const {
    int d = 0;
    for (const auto& [e, lab] : edges) {
      if (e.first == v || e.second == v) ++d;
    }
    return d;
  }

  std::set<VertexId> neighbors(VertexId v) const {
    std::set<VertexId> out;
    for (const auto& [e, lab] : edges) {
      if (e.first == v) out.insert(e.second);
      if (e.second == v) out.insert(e.first);
    }
    return out;
  }

  SimpleGraph simple() const {
    SimpleGraph g;
    for (const auto& lv : vertices) g.add_vertex(lv.id);
    for (const auto& [e, lab] : edges) g.add_edge(e.first, e.second);
    return g;
  }

  int count_type(int t) const {
    int n = 0;
    for (const auto& lv : vertices) {
      if (lv.type && *lv.type == t) ++n;
    }
    return n;
  }

  int count_unlabeled() const {
    int n = 0;
    for (const auto& [e, lab] : edges) {
      if (!lab) ++n;
    }
    return n;
  }
};

// Line-oriented dump: "v <id> [type]" then "e <i> <j> [label]", ascending.
inline std::string dump(const LabeledGraph& g) {
  std::vector<LabeledVertex> vs = g.vertices;
  std::sort(vs.begin(), vs.end(),
            [](const LabeledVertex& a, const LabeledVertex& b) { return a.id < b.id; });
  std::ostringstream out;
  for (const auto& lv : vs) {
    out << "v " << lv.id;
    if (lv.type) out << ' ' << *lv.type;
    out << '\n';
  }
  for (const auto& [e, lab] : g.edges) {
    out << "e " << e.first << ' ' << e.second;
    if (lab) out << ' ' << *lab;
    out << '\n';
  }
  return out.str();
}

// One deconstruction step: deleting an unlabeled edge or deleting a vertex
// all of whose incident edges carry its own label.
struct DeconstructionStep {
  enum Kind { RemoveEdge, RemoveVertex } kind;
  Edge edge{0, 0};
  VertexId vertex = 0;
};

struct ConstructibleResult {
  bool constructible = false;
  std::vector<DeconstructionStep> certificate;
  explicit operator bool() const { return constructible; }
};

// Decides constructibility by greedy deconstruction: delete all unlabeled
// edges, then repeatedly delete eligible vertices. Greedy is complete here:
// removing an unlabeled edge never blocks a vertex deletion (an unlabeled
// edge at v_l already blocks v_l), and deleting an eligible vertex removes
// only its own-labeled edges, so it cannot disable another vertex.
inline ConstructibleResult is_constructible(const LabeledGraph& g) {
  ConstructibleResult res;
  std::map<Edge, EdgeLabel> edges = g.edges;
  std::set<VertexId> present;
  for (const auto& lv : g.vertices) {
    if (present.count(lv.id)) return res;  // malformed: duplicate ids
    present.insert(lv.id);
  }

  for (const auto& [e, lab] : edges) {
    if (!present.count(e.first) || !present.count(e.second)) return res;
  }

  std::vector<DeconstructionStep> steps;
  for (auto it = edges.begin(); it != edges.end();) {
    if (!it->second) {
      steps.push_back({DeconstructionStep::RemoveEdge, it->first, 0});
      it = edges.erase(it);
    } else {
      ++it;
    }
  }

  bool progressed = true;
  while (progressed && present.size() > 4) {
    progressed = false;
    for (VertexId v : present) {
      int deg = 0;
      bool all_own = true;
      for (const auto& [e, lab] : edges) {
        if (e.first != v && e.second != v) continue;
        ++deg;
        if (!lab || *lab != v) all_own = false;
      }
      if ((deg == 3 || deg == 4) && all_own) {
        for (auto it = edges.begin(); it != edges.end();) {
          if (it->first.first == v || it->first.second == v) {
            it = edges.erase(it);
          } else {
            ++it;
          }
        }
        steps.push_back({DeconstructionStep::RemoveVertex, {0, 0}, v});
        present.erase(v);
        progressed = true;
        break;
      }
    }
  }

  if (present.size() != 4 || edges.size() != 6) return res;
  for (const auto& [e, lab] : edges) {
    if (!present.count(e.first) || !present.count(e.second)) return res;
    if (!lab || *lab != 0) return res;
  }
  res.constructible = true;
  res.certificate = std::move(steps);
  return res;
}

// Canonical compression C(G): K4 labeled 0, then the type-4 vertices joined
// to v1..v4, then the type-3 vertices joined to v1..v3, then the unlabeled
// edges at the revlex-smallest missing slots.
inline LabeledGraph compress(const LabeledGraph& g) {
  if (!is_constructible(g)) {
    fail(ErrorKind::NotConstructible, "compress: graph is not constructible");
  }
  int a = g.count_type(3);
  int b = g.count_type(4);
  int e = g.count_unlabeled();

  LabeledGraph c;
  for (VertexId v = 1; v <= 4; ++v) c.add_vertex(v);
  for (VertexId u = 1; u <= 4; ++u) {
    for (VertexId v = u + 1; v <= 4; ++v) c.add_edge(u, v, 0);
  }
  VertexId next = 5;
  for (int k = 0; k < b; ++k, ++next) {
    c.add_vertex(next, 4);
    for (VertexId u = 1; u <= 4; ++u) c.add_edge(u, next, next);
  }
  for (int k = 0; k < a; ++k, ++next) {
    c.add_vertex(next, 3);
    for (VertexId u = 1; u <= 3; ++u) c.add_edge(u, next, next);
  }

  int n = 4 + a + b;
  std::vector<Edge> missing;
  for (VertexId v = 2; v <= n; ++v) {
    for (VertexId u = 1; u < v; ++u) {
      if (!c.has_edge(u, v)) missing.push_back({u, v});
    }
  }
  std::sort(missing.begin(), missing.end(), edge_revlex_less);
  if (e > static_cast<int>(missing.size())) {
    fail(ErrorKind::IdentityViolation, "compress: more unlabeled edges than slots");
  }
  for (int k = 0; k < e; ++k) {
    c.add_edge(missing[k].first, missing[k].second, std::nullopt);
  }
  return c;
}

// Edge count of the induced subgraph on W.
inline int restricted_edge_count(const LabeledGraph& g,
                                 const std::set<VertexId>& w) {
  for (VertexId v : w) {
    if (!g.has_vertex(v)) {
      fail(ErrorKind::InvalidArguments, "restricted_edge_count: W not in V(G)");
    }
  }
  int n = 0;
  for (const auto& [e, lab] : g.edges) {
    if (w.count(e.first) && w.count(e.second)) ++n;
  }
  return n;
}

struct StructureProfile {
  int p = 0;   // maximal initial clique {v_1..v_p} in creation order
  int q = 0;   // degree of v_{p+1}, or 0 if there is no such vertex
  int a1 = 0;  // type-3 vertices among {v_5..v_{p+1}}
  int b1 = 0;  // type-4 vertices among {v_5..v_{p+1}}
  int a2 = 0;  // type-3 vertices among {v_{p+2}..v_n}
  int b2 = 0;  // type-4 vertices among {v_{p+2}..v_n}
};

// Reads p, q and the type counts off a compressed constructible graph,
// checking the structural bullets a compress() output satisfies.
inline StructureProfile structure_profile(const LabeledGraph& g) {
  const auto& vs = g.vertices;
  int n = static_cast<int>(vs.size());
  if (n < 4) fail(ErrorKind::NotCompressed, "fewer than four vertices");
  for (int i = 0; i < 4; ++i) {
    if (vs[i].type) fail(ErrorKind::NotCompressed, "initial vertex has a type");
  }
  for (int i = 4; i < n; ++i) {
    if (!vs[i].type || (*vs[i].type != 3 && *vs[i].type != 4)) {
      fail(ErrorKind::NotCompressed, "created vertex lacks a valid type");
    }
    if (i > 4 && *vs[i - 1].type < *vs[i].type) {
      fail(ErrorKind::NotCompressed, "types not descending");
    }
    // Own-labeled edges must target the first type(v) vertices.
    for (int k = 0; k < *vs[i].type; ++k) {
      Edge e = make_edge(vs[k].id, vs[i].id);
      auto it = g.edges.find(e);
      if (it == g.edges.end() || !it->second || *it->second != vs[i].id) {
        fail(ErrorKind::NotCompressed, "labeled edges not at initial vertices");
      }
    }
  }
  for (VertexId u = 0; u < 4; ++u) {
    for (VertexId v = u + 1; v < 4; ++v) {
      Edge e = make_edge(vs[u].id, vs[v].id);
      auto it = g.edges.find(e);
      if (it == g.edges.end() || !it->second || *it->second != 0) {
        fail(ErrorKind::NotCompressed, "initial K4 not labeled 0");
      }
    }
  }

  StructureProfile prof;
  int p = 4;
  while (p < n) {
    bool clique = true;
    for (int i = 0; i < p && clique; ++i) {
      if (!g.has_edge(vs[i].id, vs[p].id)) clique = false;
    }
    if (!clique) break;
    ++p;
  }
  prof.p = p;
  if (p < n) {
    VertexId vnext = vs[p].id;
    prof.q = g.degree(vnext);
    auto nb = g.neighbors(vnext);
    std::set<VertexId> expect;
    for (int i = 0; i < prof.q; ++i) expect.insert(vs[i].id);
    if (nb != expect) {
      fail(ErrorKind::NotCompressed, "v_{p+1} not adjacent to an initial segment");
    }
    for (int i = p + 1; i < n; ++i) {
      if (g.degree(vs[i].id) != *vs[i].type) {
        fail(ErrorKind::NotCompressed, "vertex beyond v_{p+1} has unlabeled edges");
      }
    }
  }
  int upto = std::min(p + 1, n);  // positions v_5..v_{p+1} (1-based)
  for (int i = 4; i < upto; ++i) {
    if (*vs[i].type == 3) ++prof.a1;
    if (*vs[i].type == 4) ++prof.b1;
  }
  for (int i = upto; i < n; ++i) {
    if (*vs[i].type == 3) ++prof.a2;
    if (*vs[i].type == 4) ++prof.b2;
  }
  // p + 1 = 4 + a' + b' whenever v_{p+1} exists.
  if (p < n && prof.p != prof.a1 + prof.b1 + 3) {
    fail(ErrorKind::IdentityViolation, "structure profile violates p = a'+b'+3");
  }
  return prof;
}

// Moves k = min(deg(u) - type(u), p - deg(v)) unlabeled edges from u onto the
// missing slots of v inside the clique {v_1..v_p}.
inline LabeledGraph rebalance_unlabeled(const LabeledGraph& g, VertexId u,
                                        VertexId v, int p) {
  const auto& vs = g.vertices;
  if (p < 4 || p > static_cast<int>(vs.size())) {
    fail(ErrorKind::PreconditionViolation, "rebalance: bad clique size");
  }
  std::set<VertexId> clique;
  for (int i = 0; i < p; ++i) clique.insert(vs[i].id);
  for (VertexId x : clique) {
    for (VertexId y : clique) {
      if (x < y && !g.has_edge(x, y)) {
        fail(ErrorKind::PreconditionViolation, "rebalance: {v_1..v_p} not a clique");
      }
    }
  }
  if (clique.count(u) || clique.count(v)) {
    fail(ErrorKind::PreconditionViolation, "rebalance: u, v must lie outside the clique");
  }
  const LabeledVertex* lu = g.find_vertex(u);
  if (!lu || !lu->type) {
    fail(ErrorKind::PreconditionViolation, "rebalance: u has no type");
  }
  auto nu = g.neighbors(u);
  auto nv = g.neighbors(v);
  for (VertexId x : nu) {
    if (!clique.count(x)) fail(ErrorKind::PreconditionViolation, "rebalance: N(u) outside clique");
  }
  for (VertexId x : nv) {
    if (!clique.count(x)) fail(ErrorKind::PreconditionViolation, "rebalance: N(v) outside clique");
  }
  if (g.has_edge(u, v)) fail(ErrorKind::PreconditionViolation, "rebalance: u, v adjacent");
  int du = static_cast<int>(nu.size());
  int dv = static_cast<int>(nv.size());
  if (du > dv) fail(ErrorKind::PreconditionViolation, "rebalance: deg(u) > deg(v)");

  int k = std::min(du - *lu->type, p - dv);
  if (k < 0) fail(ErrorKind::PreconditionViolation, "rebalance: negative move count");

  LabeledGraph out = g;
  if (k == 0) return out;

  // Unlabeled edges at u, largest clique neighbor first.
  std::vector<VertexId> removable;
  for (auto it = nu.rbegin(); it != nu.rend(); ++it) {
    auto lab = out.edges.at(make_edge(u, *it));
    if (!lab) removable.push_back(*it);
  }
  if (static_cast<int>(removable.size()) < k) {
    fail(ErrorKind::PreconditionViolation, "rebalance: not enough unlabeled edges at u");
  }
  std::vector<VertexId> slots;  // missing clique slots at v, ascending
  for (int i = 0; i < p; ++i) {
    if (!nv.count(vs[i].id)) slots.push_back(vs[i].id);
  }
  for (int i = 0; i < k; ++i) {
    out.edges.erase(make_edge(u, removable[i]));
    out.add_edge(v, slots[i], std::nullopt);
  }
  return out;
}

}  // namespace psear
