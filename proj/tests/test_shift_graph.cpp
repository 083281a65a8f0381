#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <sstream>
#include <string>

#include "psear/complex.hpp"
#include "psear/ears.hpp"
#include "psear/generate.hpp"
#include "psear/graph.hpp"

using namespace psear;

namespace {

SimpleGraph octahedron_graph() { return one_skeleton(base_complex(BaseKind::Octahedron)); }

SimpleGraph complete(int n) {
  SimpleGraph g;
  for (int v = 1; v <= n; ++v) g.add_vertex(v);
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) g.add_edge(u, v);
  }
  return g;
}

SimpleGraph random_graph(Rng& rng, int max_n) {
  SimpleGraph g;
  int n = 3 + static_cast<int>(rng.below(max_n - 2));
  for (int v = 1; v <= n; ++v) g.add_vertex(v);
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (rng.below(2) == 0) g.add_edge(u, v);
    }
  }
  return g;
}

// Exhaustive backtracking deconstruction, used to cross-check the greedy
// decision procedure.
bool brute_constructible(std::map<Edge, EdgeLabel> edges, std::set<VertexId> present,
                         std::set<std::string>* seen) {
  std::ostringstream key;
  for (VertexId v : present) key << 'v' << v;
  for (const auto& [e, lab] : edges) {
    key << 'e' << e.first << ',' << e.second << ':' << (lab ? std::to_string(*lab) : "u");
  }
  if (!seen->insert(key.str()).second) return false;

  if (present.size() == 4) {
    if (edges.size() != 6) return false;
    for (const auto& [e, lab] : edges) {
      if (!lab || *lab != 0) return false;
    }
    return true;
  }
  for (const auto& [e, lab] : edges) {
    if (!lab) {
      auto next = edges;
      next.erase(e);
      if (brute_constructible(next, present, seen)) return true;
    }
  }
  for (VertexId v : present) {
    int deg = 0;
    bool all_own = true;
    for (const auto& [e, lab] : edges) {
      if (e.first != v && e.second != v) continue;
      ++deg;
      if (!lab || *lab != v) all_own = false;
    }
    if ((deg == 3 || deg == 4) && all_own) {
      auto next = edges;
      for (auto it = next.begin(); it != next.end();) {
        if (it->first.first == v || it->first.second == v) {
          it = next.erase(it);
        } else {
          ++it;
        }
      }
      auto np = present;
      np.erase(v);
      if (brute_constructible(next, np, seen)) return true;
    }
  }
  return false;
}

bool brute_constructible(const LabeledGraph& g) {
  std::set<VertexId> present;
  for (const auto& lv : g.vertices) present.insert(lv.id);
  std::set<std::string> seen;
  return brute_constructible(g.edges, present, &seen);
}

}  // namespace

TEST_CASE("shift fixes complete graphs") {
  SimpleGraph k4 = complete(4);
  CHECK(shift(k4, 1, 2) == k4);
  CHECK_THROWS_AS(shift(k4, 2, 2), Error);
}

TEST_CASE("S_{4,5} on the octahedron graph swaps {1,5} for {1,4}") {
  SimpleGraph g = octahedron_graph();
  SimpleGraph s = shift(g, 4, 5);
  SimpleGraph expect = g;
  expect.edges.erase(make_edge(1, 5));
  expect.edges.insert(make_edge(1, 4));
  CHECK(s == expect);
}

TEST_CASE("shift on the path 1-2-3 follows the operator definition") {
  SimpleGraph p;
  p.add_edge(1, 2);
  p.add_edge(2, 3);

  // Shifting v2's edges toward v1 rewires {2,3} to {1,3}.
  SimpleGraph s12 = shift(p, 1, 2);
  CHECK(s12.edges == std::set<Edge>{{1, 2}, {1, 3}});

  // Shifting v3's edge cannot move: the target {1,2} already exists.
  SimpleGraph s13 = shift(p, 1, 3);
  CHECK(s13.edges == p.edges);
}

TEST_CASE("triangle counts") {
  CHECK(triangle_count(complete(4)) == 4);
  CHECK(triangle_count(octahedron_graph()) == 8);

  // Classical compressed graph with 12 edges: clique on v1..v5 plus v6
  // adjacent to v1, v2. Triangles = C(5,3) + C(2,2).
  SimpleGraph g = complete(5);
  g.add_edge(1, 6);
  g.add_edge(2, 6);
  CHECK(triangle_count(g) == 11);
}

TEST_CASE("shift never loses triangles and is idempotent") {
  Rng rng(2024);
  for (int it = 0; it < 300; ++it) {
    SimpleGraph g = random_graph(rng, 8);
    int n = static_cast<int>(g.vertices.size());
    VertexId i = 1 + static_cast<VertexId>(rng.below(n));
    VertexId j = 1 + static_cast<VertexId>(rng.below(n));
    if (i == j) continue;
    SimpleGraph s = shift(g, i, j);
    CHECK(triangle_count(g) <= triangle_count(s));
    CHECK(shift(s, i, j) == s);
  }
}

TEST_CASE("labeled K4 is constructible with an empty certificate") {
  LabeledGraph g = labeled_graph_of({BaseKind::Tetrahedron, {}});
  auto res = is_constructible(g);
  REQUIRE(res.constructible);
  CHECK(res.certificate.empty());
}

TEST_CASE("K4 plus one own-labeled degree-3 vertex is constructible") {
  LabeledGraph g = labeled_graph_of({BaseKind::Tetrahedron, {}});
  g.add_vertex(5, 3);
  for (VertexId u : {1, 2, 3}) g.add_edge(u, 5, 5);
  auto res = is_constructible(g);
  REQUIRE(res.constructible);
  REQUIRE(res.certificate.size() == 1);
  CHECK(res.certificate[0].kind == DeconstructionStep::RemoveVertex);
  CHECK(res.certificate[0].vertex == 5);
}

TEST_CASE("no labeling makes the octahedron graph constructible") {
  SimpleGraph oct = octahedron_graph();

  // The graph has no 4-clique, so no labeling can end at a K4.
  std::vector<VertexId> vs(oct.vertices.begin(), oct.vertices.end());
  bool has_k4 = false;
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      for (std::size_t c = b + 1; c < vs.size(); ++c)
        for (std::size_t d = c + 1; d < vs.size(); ++d) {
          if (oct.has_edge(vs[a], vs[b]) && oct.has_edge(vs[a], vs[c]) &&
              oct.has_edge(vs[a], vs[d]) && oct.has_edge(vs[b], vs[c]) &&
              oct.has_edge(vs[b], vs[d]) && oct.has_edge(vs[c], vs[d])) {
            has_k4 = true;
          }
        }
  CHECK_FALSE(has_k4);

  auto with_labels = [&](auto labeler) {
    LabeledGraph g;
    for (VertexId v : oct.vertices) g.add_vertex(v);
    for (const Edge& e : oct.edges) g.add_edge(e.first, e.second, labeler(e));
    return g;
  };
  CHECK_FALSE(is_constructible(with_labels([](const Edge&) { return EdgeLabel{0}; })));
  CHECK_FALSE(is_constructible(with_labels([](const Edge&) { return EdgeLabel{}; })));

  Rng rng(7);
  for (int it = 0; it < 40; ++it) {
    LabeledGraph g = with_labels([&](const Edge& e) -> EdgeLabel {
      switch (rng.below(3)) {
        case 0: return std::nullopt;
        case 1: return 0;
        default: return static_cast<int>(rng.below(2) ? e.first : e.second);
      }
    });
    CHECK_FALSE(is_constructible(g));
    CHECK_FALSE(brute_constructible(g));
  }
}

TEST_CASE("greedy deconstruction agrees with exhaustive backtracking") {
  Rng rng(99);
  for (int it = 0; it < 120; ++it) {
    LabeledGraph g;
    int n = 4 + static_cast<int>(rng.below(4));
    for (int v = 1; v <= n; ++v) {
      g.add_vertex(v, v <= 4 ? std::optional<int>{} : std::optional<int>{3});
    }
    for (int u = 1; u <= n; ++u) {
      for (int v = u + 1; v <= n; ++v) {
        if (rng.below(3) == 0) continue;
        EdgeLabel lab;
        switch (rng.below(3)) {
          case 0: lab = std::nullopt; break;
          case 1: lab = 0; break;
          default: lab = static_cast<int>(rng.below(2) ? u : v); break;
        }
        g.add_edge(u, v, lab);
      }
    }
    CHECK(is_constructible(g).constructible == brute_constructible(g));
  }

  // And on genuinely constructible graphs both say yes.
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.eta = EarCounts{2, 1, 2, 0};
    LabeledGraph g = gen_constructible_graph(spec);
    CHECK(is_constructible(g).constructible);
    CHECK(brute_constructible(g));
  }
}

TEST_CASE("compression of the labeled K4 is itself") {
  LabeledGraph k4 = labeled_graph_of({BaseKind::Tetrahedron, {}});
  LabeledGraph c = compress(k4);
  CHECK(c.edges == k4.edges);
  CHECK(c.vertices.size() == 4);
}

TEST_CASE("compression moves the unlabeled edge to the revlex-smallest slot") {
  // K4 + A-vertices 5, 6 + unlabeled {5,6}.
  LabeledGraph g = labeled_graph_of({BaseKind::Tetrahedron, {}});
  g.add_vertex(5, 3);
  for (VertexId u : {1, 2, 3}) g.add_edge(u, 5, 5);
  g.add_vertex(6, 3);
  for (VertexId u : {1, 2, 3}) g.add_edge(u, 6, 6);
  g.add_edge(5, 6, std::nullopt);

  LabeledGraph c = compress(g);
  CHECK_FALSE(c.has_edge(5, 6));
  REQUIRE(c.has_edge(4, 5));
  CHECK_FALSE(c.edges.at(make_edge(4, 5)).has_value());
  CHECK(triangle_count(g.simple()) == 13);
  CHECK(triangle_count(c.simple()) == 13);

  LabeledGraph cc = compress(c);
  CHECK(cc.edges == c.edges);
}

TEST_CASE("compress rejects non-constructible graphs") {
  SimpleGraph oct = octahedron_graph();
  LabeledGraph g;
  for (VertexId v : oct.vertices) g.add_vertex(v);
  for (const Edge& e : oct.edges) g.add_edge(e.first, e.second, 0);
  CHECK_THROWS_AS(compress(g), Error);
}

TEST_CASE("compression and the neighborhood bound on random constructible graphs") {
  Rng rng(5150);
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    int a = static_cast<int>(seed % 4), b = static_cast<int>(seed / 3 % 3);
    int cap = static_cast<int>(binomial(a + b, 2)) + a;
    spec.eta = EarCounts{a, b, cap == 0 ? 0 : static_cast<int>(seed % (cap + 1)), 0};
    LabeledGraph g = gen_constructible_graph(spec);
    LabeledGraph c = compress(g);
    CHECK(triangle_count(g.simple()) <= triangle_count(c.simple()));

    std::vector<VertexId> vs;
    for (const auto& lv : g.vertices) vs.push_back(lv.id);
    for (int trial = 0; trial < 8; ++trial) {
      std::set<VertexId> w;
      for (VertexId v : vs) {
        if (rng.below(2)) w.insert(v);
      }
      std::set<VertexId> first_w;
      for (std::size_t i = 0; i < w.size(); ++i) first_w.insert(c.vertices[i].id);
      CHECK(restricted_edge_count(g, w) <= restricted_edge_count(c, first_w));
    }
  }
}

TEST_CASE("restricted edge counts") {
  LabeledGraph g = labeled_graph_of({BaseKind::Bipyramid, {}});
  CHECK(restricted_edge_count(g, {3}) == 0);
  CHECK(restricted_edge_count(g, {1, 2, 3, 4}) == 6);
  CHECK_THROWS_AS(restricted_edge_count(g, {42}), Error);
}

TEST_CASE("structure profile of the labeled K4") {
  StructureProfile prof = structure_profile(labeled_graph_of({BaseKind::Tetrahedron, {}}));
  CHECK(prof.p == 4);
  CHECK(prof.q == 0);
  CHECK(prof.a1 == 0);
  CHECK(prof.b1 == 0);
  CHECK(prof.a2 == 0);
  CHECK(prof.b2 == 0);
}

TEST_CASE("structure profile of K4 + B5 + A6 + unlabeled {4,6}") {
  LabeledGraph g = labeled_graph_of({BaseKind::Tetrahedron, {}});
  g.add_vertex(5, 4);
  for (VertexId u : {1, 2, 3, 4}) g.add_edge(u, 5, 5);
  g.add_vertex(6, 3);
  for (VertexId u : {1, 2, 3}) g.add_edge(u, 6, 6);
  g.add_edge(4, 6, std::nullopt);

  StructureProfile prof = structure_profile(g);
  CHECK(prof.p == 5);
  CHECK(prof.q == 4);
  CHECK(prof.a1 == 1);
  CHECK(prof.b1 == 1);
  CHECK(prof.a2 == 0);
  CHECK(prof.b2 == 0);
  CHECK(triangle_count(g.simple()) ==
        binomial(prof.p, 3) + binomial(prof.q, 2) + 6 * prof.b2 + 3 * prof.a2);
}

TEST_CASE("structure profile of K4 + three B-vertices") {
  LabeledGraph g = labeled_graph_of({BaseKind::Tetrahedron, {}});
  for (VertexId v : {5, 6, 7}) {
    g.add_vertex(v, 4);
    for (VertexId u : {1, 2, 3, 4}) g.add_edge(u, v, v);
  }
  StructureProfile prof = structure_profile(g);
  CHECK(prof.p == 5);
  CHECK(prof.q == 4);
  CHECK(prof.a1 == 0);
  CHECK(prof.b1 == 2);
  CHECK(prof.a2 == 0);
  CHECK(prof.b2 == 1);
  // b' = 2, b'' = 1 is forced by p = a' + b' + 3 and by the triangle count.
  CHECK(triangle_count(g.simple()) == 22);
  CHECK(binomial(prof.p, 3) + binomial(prof.q, 2) + 6 * prof.b2 + 3 * prof.a2 == 22);
}

TEST_CASE("structure profile rejects non-compressed graphs") {
  // Unlabeled edge in a slot compress would not choose.
  LabeledGraph g = labeled_graph_of({BaseKind::Tetrahedron, {}});
  g.add_vertex(5, 3);
  for (VertexId u : {1, 2, 3}) g.add_edge(u, 5, 5);
  g.add_vertex(6, 3);
  for (VertexId u : {1, 2, 3}) g.add_edge(u, 6, 6);
  g.add_edge(5, 6, std::nullopt);
  CHECK_THROWS_AS(structure_profile(g), Error);
}

TEST_CASE("triangle count of compress outputs matches the closed form") {
  for (std::uint64_t seed = 500; seed < 560; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    int a = static_cast<int>(seed % 5), b = static_cast<int>(seed % 3);
    int cap = static_cast<int>(binomial(a + b, 2)) + a;
    spec.eta = EarCounts{a, b, cap == 0 ? 0 : static_cast<int>(seed % (cap + 1)), 0};
    LabeledGraph c = compress(gen_constructible_graph(spec));
    StructureProfile prof = structure_profile(c);
    CHECK(triangle_count(c.simple()) ==
          binomial(prof.p, 3) + binomial(prof.q, 2) + 6 * prof.b2 + 3 * prof.a2);
  }
}

TEST_CASE("rebalance_unlabeled leaves the graph alone when k = 0") {
  // u = A-vertex with no unlabeled edges.
  LabeledGraph g = labeled_graph_of({BaseKind::Tetrahedron, {}});
  g.add_vertex(5, 4);
  for (VertexId u : {1, 2, 3, 4}) g.add_edge(u, 5, 5);  // clique {1..5}
  g.add_vertex(6, 3);
  for (VertexId u : {1, 2, 3}) g.add_edge(u, 6, 6);
  g.add_vertex(7, 3);
  for (VertexId u : {1, 2, 3}) g.add_edge(u, 7, 7);
  LabeledGraph out = rebalance_unlabeled(g, 6, 7, 5);
  CHECK(out.edges == g.edges);
}

TEST_CASE("rebalance_unlabeled moves one edge and gains one triangle") {
  // Clique {1..5}; v = B-vertex 6 with deg 4; u = A-vertex 7 with one
  // unlabeled edge, deg 4. k = min(4-3, 5-4) = 1, gain = 0*1 + 1.
  LabeledGraph g = labeled_graph_of({BaseKind::Tetrahedron, {}});
  g.add_vertex(5, 4);
  for (VertexId u : {1, 2, 3, 4}) g.add_edge(u, 5, 5);
  g.add_vertex(6, 4);
  for (VertexId u : {1, 2, 3, 4}) g.add_edge(u, 6, 6);
  g.add_vertex(7, 3);
  for (VertexId u : {1, 2, 3}) g.add_edge(u, 7, 7);
  g.add_edge(4, 7, std::nullopt);

  std::int64_t before = triangle_count(g.simple());
  CHECK(before == 22);
  LabeledGraph out = rebalance_unlabeled(g, 7, 6, 5);
  CHECK(triangle_count(out.simple()) == before + 1);
  CHECK_FALSE(out.has_edge(4, 7));
  CHECK(out.has_edge(5, 6));
  CHECK(is_constructible(out).constructible);
}

TEST_CASE("rebalance_unlabeled with equal degrees and k = 2 gains four triangles") {
  // Clique {1..7} via three B-vertices and their mutual missing edges.
  LabeledGraph g = labeled_graph_of({BaseKind::Tetrahedron, {}});
  for (VertexId v : {5, 6, 7}) {
    g.add_vertex(v, 4);
    for (VertexId u : {1, 2, 3, 4}) g.add_edge(u, v, v);
  }
  g.add_edge(5, 6, std::nullopt);
  g.add_edge(5, 7, std::nullopt);
  g.add_edge(6, 7, std::nullopt);
  // u = A-vertex 8 with two unlabeled edges; v = B-vertex 9 with one.
  g.add_vertex(8, 3);
  for (VertexId u : {1, 2, 3}) g.add_edge(u, 8, 8);
  g.add_edge(4, 8, std::nullopt);
  g.add_edge(5, 8, std::nullopt);
  g.add_vertex(9, 4);
  for (VertexId u : {1, 2, 3, 4}) g.add_edge(u, 9, 9);
  g.add_edge(5, 9, std::nullopt);

  std::int64_t before = triangle_count(g.simple());
  LabeledGraph out = rebalance_unlabeled(g, 8, 9, 7);
  CHECK(triangle_count(out.simple()) == before + 4);
  CHECK(is_constructible(out).constructible);
}

TEST_CASE("rebalance_unlabeled rejects bad preconditions") {
  LabeledGraph g = labeled_graph_of({BaseKind::Tetrahedron, {}});
  g.add_vertex(5, 3);
  for (VertexId u : {1, 2, 3}) g.add_edge(u, 5, 5);
  g.add_vertex(6, 3);
  for (VertexId u : {1, 2, 4}) g.add_edge(u, 6, 6);  // N(6) inside {1..4}
  g.add_vertex(7, 3);
  for (VertexId u : {1, 2, 3}) g.add_edge(u, 7, 7);
  // u adjacent to v.
  LabeledGraph h = g;
  h.add_edge(6, 7, std::nullopt);
  CHECK_THROWS_AS(rebalance_unlabeled(h, 6, 7, 4), Error);
  // deg(u) > deg(v).
  LabeledGraph h2 = g;
  h2.add_edge(4, 7, std::nullopt);
  CHECK_THROWS_AS(rebalance_unlabeled(h2, 7, 6, 4), Error);
}

TEST_CASE("graph dump format") {
  LabeledGraph g = labeled_graph_of({BaseKind::Tetrahedron, {}});
  g.add_vertex(5, 3);
  for (VertexId u : {1, 2, 3}) g.add_edge(u, 5, 5);
  g.add_vertex(6, 3);
  for (VertexId u : {1, 2, 3}) g.add_edge(u, 6, 6);
  g.add_edge(5, 6, std::nullopt);
  std::string expect =
      "v 1\nv 2\nv 3\nv 4\nv 5 3\nv 6 3\n"
      "e 1 2 0\ne 1 3 0\ne 1 4 0\ne 1 5 5\ne 1 6 6\n"
      "e 2 3 0\ne 2 4 0\ne 2 5 5\ne 2 6 6\n"
      "e 3 4 0\ne 3 5 5\ne 3 6 6\ne 5 6\n";
  CHECK(dump(g) == expect);
}
