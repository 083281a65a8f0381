#include <catch2/catch_amalgamated.hpp>

#include "psear/ears.hpp"
#include "psear/generate.hpp"
#include "psear/graph.hpp"

using namespace psear;

namespace {

EarDecomposition tetra_a_e() {
  // Tetrahedron + A(apex 5, cycle 1-2-3) + E(chord {4,5}, cycle 1-4-2-5).
  EarDecomposition dec{BaseKind::Tetrahedron, {}};
  dec.ears.push_back(normalized(Ear{EarA{5, {1, 2, 3}}}));
  dec.ears.push_back(normalized(Ear{EarE{{4, 5}, {4, 1, 5, 2}}}));
  return dec;
}

}  // namespace

TEST_CASE("realize the bare base spheres") {
  CHECK(f_vector(realize({BaseKind::Tetrahedron, {}})) == FVector{{1, 4, 6, 4}});
  CHECK(f_vector(realize({BaseKind::Bipyramid, {}})) == FVector{{1, 5, 9, 6}});
  CHECK(f_vector(realize({BaseKind::Octahedron, {}})) == FVector{{1, 6, 12, 8}});
}

TEST_CASE("realize tetra + A + E") {
  SimplicialComplex c = realize(tetra_a_e());
  CHECK(f_vector(c) == FVector{{1, 5, 10, 9}});
  CHECK(h_vector(c) == HVector{{1, 2, 3, 3}});
}

TEST_CASE("gluing violations are reported with the ear index") {
  EarDecomposition dec{BaseKind::Tetrahedron, {}};
  dec.ears.push_back(normalized(Ear{EarE{{1, 2}, {1, 3, 2, 4}}}));
  try {
    realize(dec);
    FAIL("expected a gluing violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GluingViolation);
    CHECK(std::string(e.what()).find("ears[0]") != std::string::npos);
    CHECK(std::string(e.what()).find("chord") != std::string::npos);
  }

  // Apex ids must be consecutive.
  EarDecomposition skip{BaseKind::Tetrahedron, {}};
  skip.ears.push_back(normalized(Ear{EarA{7, {1, 2, 3}}}));
  CHECK_THROWS_AS(realize(skip), Error);

  // B-ear whose cycle edge is missing.
  EarDecomposition bad_b{BaseKind::Octahedron, {}};
  bad_b.ears.push_back(normalized(Ear{EarB{7, {1, 2, 3, 4}}}));  // {1,4} diagonal
  CHECK_THROWS_AS(realize(bad_b), Error);

  // F-ear on an already present face.
  EarDecomposition bad_f{BaseKind::Tetrahedron, {}};
  bad_f.ears.push_back(normalized(Ear{EarF{{1, 2, 3}}}));
  CHECK_THROWS_AS(realize(bad_f), Error);
}

TEST_CASE("ear_counts tallies types") {
  CHECK(ear_counts({BaseKind::Tetrahedron, {}}) == EarCounts{0, 0, 0, 0});

  EarDecomposition dec{BaseKind::Tetrahedron, {}};
  dec.ears.push_back(normalized(Ear{EarA{5, {1, 2, 3}}}));
  dec.ears.push_back(normalized(Ear{EarA{6, {1, 2, 3}}}));
  dec.ears.push_back(normalized(Ear{EarB{7, {1, 2, 3, 4}}}));
  dec.ears.push_back(normalized(Ear{EarE{{5, 6}, {5, 1, 6, 2}}}));
  dec.ears.push_back(normalized(Ear{EarF{{1, 3, 5}}}));
  dec.ears.push_back(normalized(Ear{EarF{{2, 3, 5}}}));
  CHECK(ear_counts(dec) == EarCounts{2, 1, 1, 2});
}

TEST_CASE("h_from_counts matches the contribution vectors") {
  CHECK(h_from_counts(BaseKind::Tetrahedron, {0, 0, 0, 0}) == HVector{{1, 1, 1, 1}});
  CHECK(h_from_counts(BaseKind::Tetrahedron, {1, 1, 1, 1}) == HVector{{1, 3, 5, 5}});
  CHECK(h_from_counts(BaseKind::Octahedron, {0, 0, 1, 1}) == HVector{{1, 3, 4, 3}});
}

TEST_CASE("h computed from the realized complex equals h from ear counts") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.total_ears = static_cast<int>(seed % 7);
    EarDecomposition dec = gen_decomposition(spec);
    CHECK(h_vector(realize(dec)) == h_from_counts(dec.base, ear_counts(dec)));
  }
}

TEST_CASE("realize is prefix-monotone and produces pure 2-complexes") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.total_ears = 5;
    EarDecomposition dec = gen_decomposition(spec);

    SimplicialComplex prev = realize({dec.base, {}});
    for (std::size_t k = 1; k <= dec.ears.size(); ++k) {
      EarDecomposition prefix{dec.base, {dec.ears.begin(), dec.ears.begin() + k}};
      SimplicialComplex cur = realize(prefix);
      for (const Face& f : prev.faces) CHECK(cur.contains(f));
      prev = cur;
    }
    for (const Face& f : prev.facets()) CHECK(f.size() == 3);
  }
}

TEST_CASE("labeled graph of the tetrahedron is the 0-labeled K4") {
  LabeledGraph g = labeled_graph_of({BaseKind::Tetrahedron, {}});
  CHECK(g.vertices.size() == 4);
  CHECK(g.edges.size() == 6);
  for (const auto& [e, lab] : g.edges) {
    REQUIRE(lab.has_value());
    CHECK(*lab == 0);
  }
  CHECK(is_constructible(g).constructible);
  CHECK(is_constructible(g).certificate.empty());
}

TEST_CASE("labeled graph of tetra + B is K5 with an own-labeled star") {
  EarDecomposition dec{BaseKind::Tetrahedron, {}};
  dec.ears.push_back(normalized(Ear{EarB{5, {1, 2, 3, 4}}}));
  LabeledGraph g = labeled_graph_of(dec);
  CHECK(g.edges.size() == 10);
  CHECK(g.find_vertex(5)->type == 4);
  for (VertexId u = 1; u <= 4; ++u) {
    REQUIRE(g.has_edge(u, 5));
    CHECK(*g.edges.at(make_edge(u, 5)) == 5);
  }
  CHECK(is_constructible(g).constructible);
}

TEST_CASE("labeled graph of tetra + A + A + E(chord {5,6})") {
  EarDecomposition dec{BaseKind::Tetrahedron, {}};
  dec.ears.push_back(normalized(Ear{EarA{5, {1, 2, 3}}}));
  dec.ears.push_back(normalized(Ear{EarA{6, {1, 2, 3}}}));
  dec.ears.push_back(normalized(Ear{EarE{{5, 6}, {5, 1, 6, 2}}}));
  LabeledGraph g = labeled_graph_of(dec);
  for (VertexId u : {1, 2, 3}) {
    CHECK(*g.edges.at(make_edge(u, 5)) == 5);
    CHECK(*g.edges.at(make_edge(u, 6)) == 6);
  }
  CHECK_FALSE(g.edges.at(make_edge(5, 6)).has_value());
  CHECK(g.find_vertex(5)->type == 3);
  CHECK(is_constructible(g).constructible);
}

TEST_CASE("bipyramid labeled graph reuses the K4 + A-vertex split") {
  LabeledGraph g = labeled_graph_of({BaseKind::Bipyramid, {}});
  CHECK(g.edges.size() == 9);
  CHECK(g.find_vertex(5)->type == 3);
  for (VertexId u : {1, 2, 3}) CHECK(*g.edges.at(make_edge(u, 5)) == 5);
  CHECK_FALSE(g.has_edge(4, 5));
  CHECK(is_constructible(g).constructible);
}

TEST_CASE("labeled_graph_of rejects the octahedron") {
  CHECK_THROWS_AS(labeled_graph_of({BaseKind::Octahedron, {}}), Error);
}

TEST_CASE("labeled graphs of random tetra/bipyramid decompositions are constructible") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    GenSpec spec;
    spec.base = seed % 2 ? BaseKind::Tetrahedron : BaseKind::Bipyramid;
    spec.seed = seed;
    spec.total_ears = 4;
    EarDecomposition dec = gen_decomposition(spec);
    CHECK(is_constructible(labeled_graph_of(dec)).constructible);
  }
}
