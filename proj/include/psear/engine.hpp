#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "psear/complex.hpp"
#include "psear/ears.hpp"
#include "psear/error.hpp"
#include "psear/graph.hpp"
#include "psear/multicomplex.hpp"

namespace psear {

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

namespace detail {

inline std::optional<Edge> revlex_smallest_missing_edge(const SimplicialComplex& c) {
  VertexId n = c.max_vertex();
  std::optional<Edge> best;
  for (VertexId v = 2; v <= n; ++v) {
    for (VertexId u = 1; u < v; ++u) {
      if (c.has_edge(u, v)) continue;
      Edge e{u, v};
      if (!best || edge_revlex_less(e, *best)) best = e;
    }
  }
  return best;
}

inline std::optional<std::array<VertexId, 3>> revlex_smallest_missing_face(
    const SimplicialComplex& c) {
  std::optional<std::array<VertexId, 3>> best;
  for (const auto& t : triangles(one_skeleton(c))) {
    if (c.contains(make_face({t[0], t[1], t[2]}))) continue;
    if (!best || triple_revlex_less(t, *best)) best = t;
  }
  return best;
}

// Degree-d monomials on variables x_4..x_n in revlex order.
inline std::vector<Monomial> monomials_on_suffix_vars(int n, int d) {
  std::vector<Monomial> out;
  std::vector<int> seq;
  auto rec = [&](auto&& self, int remaining, int maxvar) -> void {
    if (remaining == 0) {
      Monomial m;
      for (int i : seq) m.exps[i] += 1;
      out.push_back(m);
      return;
    }
    for (int v = 4; v <= maxvar; ++v) {
      seq.push_back(v);
      self(self, remaining - 1, v);
      seq.pop_back();
    }
  };
  rec(rec, d, n);
  return out;
}

inline bool addable(const Multicomplex& m, const Monomial& mu) {
  if (m.contains(mu)) return false;
  for (const Monomial& d : mu.lower_divisors()) {
    if (!m.contains(d)) return false;
  }
  return true;
}

inline std::optional<Monomial> revlex_smallest_addable_deg3(const Multicomplex& m,
                                                            int maxvar) {
  for (const Monomial& mu : monomials_on_suffix_vars(maxvar, 3)) {
    if (addable(m, mu)) return mu;
  }
  return std::nullopt;
}

inline void add_new_monomials(Multicomplex& m, const std::vector<Monomial>& xs,
                              const char* where) {
  for (const Monomial& x : xs) {
    if (m.contains(x)) {
      fail(ErrorKind::IdentityViolation,
           std::string(where) + ": monomial " + x.str() + " already present");
    }
    for (const Monomial& d : x.lower_divisors()) {
      if (!m.contains(d) &&
          std::find(xs.begin(), xs.end(), d) == xs.end()) {
        fail(ErrorKind::IdentityViolation,
             std::string(where) + ": adding " + x.str() + " breaks divisor closure");
      }
    }
    m.monomials.insert(x);
  }
}

inline void append_ear(EarDecomposition& dec, SimplicialComplex& c, VertexId& maxv,
                       const Ear& ear) {
  Ear e = normalized(ear);
  apply_ear(c, maxv, e, dec.ears.size());
  dec.ears.push_back(e);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Capacity accounting for the tetrahedron algorithm
// ---------------------------------------------------------------------------

struct CapacityRecord {
  std::int64_t face_capacity = 0;      // missing triangles of the graph
  std::int64_t monomial_capacity = 0;  // addable degree-3 monomials
  std::int64_t formula = 0;            // C(p-2,3) + C(q-2,2) + b' + 2b''
  StructureProfile profile;
  int eta_f = 0;
};

// Counts, on the Step-0..2 prefix of the tetrahedron compression, the missing
// triangles and the addable degree-3 monomials, and checks both against the
// closed form obtained from the structure profile.
inline CapacityRecord capacity_tetra(const EarDecomposition& cdec) {
  if (cdec.base != BaseKind::Tetrahedron) {
    fail(ErrorKind::PreconditionViolation, "capacity_tetra: tetrahedron base required");
  }
  EarCounts counts = ear_counts(cdec);
  if (counts.f != 0) {
    fail(ErrorKind::PreconditionViolation, "capacity_tetra: prefix must carry no F-ears");
  }

  SimplicialComplex c = realize(cdec);
  SimpleGraph g = one_skeleton(c);
  std::int64_t faces_present = f_vector(c).entries[3];
  CapacityRecord rec;
  rec.face_capacity = triangle_count(g) - faces_present;

  // Rebuild the Step-0..2 monomial set from the ear list.
  Multicomplex m;
  detail::add_new_monomials(
      m, {Monomial::unit(), Monomial::var(4), Monomial::var(4, 2), Monomial::var(4, 3)},
      "capacity step 0");
  for (const Ear& ear : cdec.ears) {
    if (const EarB* b = std::get_if<EarB>(&ear)) {
      int i = b->apex;
      detail::add_new_monomials(m,
                                {Monomial::var(i), Monomial::var(4).times(i),
                                 Monomial::var(i, 2), Monomial::var(4).times(i, 2)},
                                "capacity B");
    } else if (const EarA* a = std::get_if<EarA>(&ear)) {
      int i = a->apex;
      detail::add_new_monomials(
          m, {Monomial::var(i), Monomial::var(i, 2), Monomial::var(i, 3)}, "capacity A");
    } else if (const EarE* e = std::get_if<EarE>(&ear)) {
      int i = e->chord[0], j = e->chord[1];
      detail::add_new_monomials(
          m, {Monomial::var(i).times(j), Monomial::var(i, 2).times(j)}, "capacity E");
    }
  }
  int maxvar = 4 + counts.a + counts.b;
  for (const Monomial& mu : detail::monomials_on_suffix_vars(maxvar, 3)) {
    if (detail::addable(m, mu)) ++rec.monomial_capacity;
  }

  StructureProfile prof = structure_profile(labeled_graph_of(cdec));
  rec.profile = prof;
  rec.formula = binomial(prof.p - 2, 3) + binomial(prof.q - 2, 2) + prof.b1 + 2 * prof.b2;

  std::int64_t tcount =
      binomial(prof.p, 3) + binomial(prof.q, 2) + 6 * prof.b2 + 3 * prof.a2;
  if (tcount != triangle_count(g)) {
    fail(ErrorKind::IdentityViolation, "capacity_tetra: triangle-count identity failed");
  }
  std::int64_t eta_e_formula =
      binomial(prof.p, 2) + prof.q - 3 * prof.a1 - 4 * prof.b1 - 6;
  if (eta_e_formula != counts.e) {
    fail(ErrorKind::IdentityViolation, "capacity_tetra: eta_E identity failed");
  }
  std::int64_t mcount = binomial(prof.p - 1, 3) + binomial(prof.q - 1, 2) + prof.a2 +
                        3 * prof.b2;
  if (rec.monomial_capacity != mcount - counts.a - counts.b - counts.e - 1) {
    fail(ErrorKind::IdentityViolation, "capacity_tetra: monomial-count identity failed");
  }
  if (rec.face_capacity != rec.formula || rec.monomial_capacity != rec.formula) {
    fail(ErrorKind::IdentityViolation,
         "capacity_tetra: capacities disagree with the closed form");
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Tetrahedron-base compression
// ---------------------------------------------------------------------------

struct TetraCompression {
  EarDecomposition compressed;
  Multicomplex multicomplex;
  CapacityRecord capacity;
};

inline TetraCompression compress_tetra(const EarDecomposition& dec) {
  if (dec.base != BaseKind::Tetrahedron) {
    fail(ErrorKind::PreconditionViolation, "compress_tetra: tetrahedron base required");
  }
  EarCounts counts = ear_counts(dec);

  EarDecomposition cdec{BaseKind::Tetrahedron, {}};
  SimplicialComplex c = base_complex(BaseKind::Tetrahedron);
  VertexId maxv = 4;
  Multicomplex m;
  detail::add_new_monomials(
      m, {Monomial::unit(), Monomial::var(4), Monomial::var(4, 2), Monomial::var(4, 3)},
      "step 0");

  for (int i = 5; i <= counts.b + 4; ++i) {
    detail::append_ear(cdec, c, maxv, EarB{i, {1, 2, 3, 4}});
    detail::add_new_monomials(m,
                              {Monomial::var(i), Monomial::var(4).times(i),
                               Monomial::var(i, 2), Monomial::var(4).times(i, 2)},
                              "step 1 (B)");
  }
  for (int i = counts.b + 5; i <= counts.a + counts.b + 4; ++i) {
    detail::append_ear(cdec, c, maxv, EarA{i, {1, 2, 3}});
    detail::add_new_monomials(
        m, {Monomial::var(i), Monomial::var(i, 2), Monomial::var(i, 3)}, "step 1 (A)");
  }
  for (int l = 0; l < counts.e; ++l) {
    auto edge = detail::revlex_smallest_missing_edge(c);
    if (!edge) fail(ErrorKind::CapacityExhausted, "compress_tetra: no missing edge left");
    VertexId i = edge->first, j = edge->second;
    detail::append_ear(cdec, c, maxv, EarE{{i, j}, {i, 1, j, 2}});
    detail::add_new_monomials(
        m, {Monomial::var(i).times(j), Monomial::var(i, 2).times(j)}, "step 2");
  }

  CapacityRecord cap = capacity_tetra(cdec);
  cap.eta_f = counts.f;
  if (counts.f > cap.face_capacity) {
    fail(ErrorKind::CapacityExhausted,
         "compress_tetra: eta_F exceeds the compression capacity");
  }

  int maxvar = 4 + counts.a + counts.b;
  for (int l = 0; l < counts.f; ++l) {
    auto face = detail::revlex_smallest_missing_face(c);
    if (!face) fail(ErrorKind::CapacityExhausted, "compress_tetra: no missing 2-face left");
    detail::append_ear(cdec, c, maxv, EarF{*face});
    auto mu = detail::revlex_smallest_addable_deg3(m, maxvar);
    if (!mu) fail(ErrorKind::CapacityExhausted, "compress_tetra: no addable monomial left");
    detail::add_new_monomials(m, {*mu}, "step 3");
  }

  if (!equals_h(f_vec(m), h_from_counts(BaseKind::Tetrahedron, counts))) {
    fail(ErrorKind::IdentityViolation, "compress_tetra: F(M) differs from h");
  }
  return {cdec, m, cap};
}

// ---------------------------------------------------------------------------
// Bipyramid base
// ---------------------------------------------------------------------------

// eta_F > 0: re-express with a tetrahedron base by turning vertex 5 into an
// A-ear; one F-ear is absorbed into the new base (the one filling {1,2,3} if
// present, otherwise the first F-ear, whose face is traded for {1,2,3}).
inline EarDecomposition reduce_bipyramid_Fpos(const EarDecomposition& dec) {
  if (dec.base != BaseKind::Bipyramid) {
    fail(ErrorKind::PreconditionViolation, "reduce_bipyramid_Fpos: bipyramid base required");
  }
  EarCounts counts = ear_counts(dec);
  if (counts.f == 0) {
    fail(ErrorKind::PreconditionViolation, "reduce_bipyramid_Fpos: eta_F must be positive");
  }
  std::size_t drop = dec.ears.size();
  Face equator = make_face({1, 2, 3});
  for (std::size_t k = 0; k < dec.ears.size(); ++k) {
    if (const EarF* f = std::get_if<EarF>(&dec.ears[k])) {
      if (make_face({f->face[0], f->face[1], f->face[2]}) == equator) {
        drop = k;
        break;
      }
      if (drop == dec.ears.size()) drop = k;
    }
  }
  EarDecomposition out{BaseKind::Tetrahedron, {}};
  out.ears.push_back(normalized(Ear{EarA{5, {1, 2, 3}}}));
  for (std::size_t k = 0; k < dec.ears.size(); ++k) {
    if (k != drop) out.ears.push_back(dec.ears[k]);
  }
  return out;
}

// Bipyramid compression for eta_F = 0. The first missing edge is always {v4,v5}, which
// contributes {x5^2, x5^3} instead of the generic pair.
inline std::pair<EarDecomposition, Multicomplex> compress_bipyramid_F0(
    const EarDecomposition& dec) {
  if (dec.base != BaseKind::Bipyramid) {
    fail(ErrorKind::PreconditionViolation, "compress_bipyramid_F0: bipyramid base required");
  }
  EarCounts counts = ear_counts(dec);
  if (counts.f != 0) {
    fail(ErrorKind::PreconditionViolation, "compress_bipyramid_F0: eta_F must be zero");
  }

  EarDecomposition cdec{BaseKind::Bipyramid, {}};
  SimplicialComplex c = base_complex(BaseKind::Bipyramid);
  VertexId maxv = 5;
  Multicomplex m;
  detail::add_new_monomials(m,
                            {Monomial::unit(), Monomial::var(4), Monomial::var(5),
                             Monomial::var(4, 2), Monomial::var(4).times(5),
                             Monomial::var(4, 2).times(5)},
                            "step 0");

  for (int i = 6; i <= counts.b + 5; ++i) {
    detail::append_ear(cdec, c, maxv, EarB{i, {1, 2, 3, 4}});
    detail::add_new_monomials(m,
                              {Monomial::var(i), Monomial::var(4).times(i),
                               Monomial::var(i, 2), Monomial::var(4).times(i, 2)},
                              "step 1 (B)");
  }
  for (int i = counts.b + 6; i <= counts.a + counts.b + 5; ++i) {
    detail::append_ear(cdec, c, maxv, EarA{i, {1, 2, 3}});
    detail::add_new_monomials(
        m, {Monomial::var(i), Monomial::var(i, 2), Monomial::var(i, 3)}, "step 1 (A)");
  }
  for (int l = 0; l < counts.e; ++l) {
    auto edge = detail::revlex_smallest_missing_edge(c);
    if (!edge) fail(ErrorKind::CapacityExhausted, "compress_bipyramid_F0: no missing edge");
    VertexId i = edge->first, j = edge->second;
    detail::append_ear(cdec, c, maxv, EarE{{i, j}, {i, 1, j, 2}});
    if (i == 4 && j == 5) {
      detail::add_new_monomials(m, {Monomial::var(5, 2), Monomial::var(5, 3)}, "step 2");
    } else {
      detail::add_new_monomials(
          m, {Monomial::var(i).times(j), Monomial::var(i, 2).times(j)}, "step 2");
    }
  }

  if (!equals_h(f_vec(m), h_from_counts(BaseKind::Bipyramid, counts))) {
    fail(ErrorKind::IdentityViolation, "compress_bipyramid_F0: F(M) differs from h");
  }
  return {cdec, m};
}

// ---------------------------------------------------------------------------
// Octahedron base
// ---------------------------------------------------------------------------

// Octahedron compression for eta_F = 0, with the three diagonal special cases.
inline std::pair<EarDecomposition, Multicomplex> compress_octahedron_F0(
    const EarDecomposition& dec) {
  if (dec.base != BaseKind::Octahedron) {
    fail(ErrorKind::PreconditionViolation, "compress_octahedron_F0: octahedron base required");
  }
  EarCounts counts = ear_counts(dec);
  if (counts.f != 0) {
    fail(ErrorKind::PreconditionViolation, "compress_octahedron_F0: eta_F must be zero");
  }

  EarDecomposition cdec{BaseKind::Octahedron, {}};
  SimplicialComplex c = base_complex(BaseKind::Octahedron);
  VertexId maxv = 6;
  Multicomplex m;
  detail::add_new_monomials(
      m,
      {Monomial::unit(), Monomial::var(4), Monomial::var(5), Monomial::var(6),
       Monomial::var(4).times(5), Monomial::var(4).times(6), Monomial::var(5).times(6),
       Monomial::var(4).times(5).times(6)},
      "step 0");

  for (int i = 7; i <= counts.b + 6; ++i) {
    detail::append_ear(cdec, c, maxv, EarB{i, {1, 2, 4, 3}});
    detail::add_new_monomials(m,
                              {Monomial::var(i), Monomial::var(4).times(i),
                               Monomial::var(i, 2), Monomial::var(4).times(i, 2)},
                              "step 1 (B)");
  }
  for (int i = counts.b + 7; i <= counts.a + counts.b + 6; ++i) {
    detail::append_ear(cdec, c, maxv, EarA{i, {1, 2, 3}});
    detail::add_new_monomials(
        m, {Monomial::var(i), Monomial::var(i, 2), Monomial::var(i, 3)}, "step 1 (A)");
  }
  for (int l = 0; l < counts.e; ++l) {
    auto edge = detail::revlex_smallest_missing_edge(c);
    if (!edge) fail(ErrorKind::CapacityExhausted, "compress_octahedron_F0: no missing edge");
    VertexId i = edge->first, j = edge->second;
    if (i == 1 && j == 4) {
      detail::append_ear(cdec, c, maxv, EarE{{1, 4}, {1, 2, 4, 5}});
      detail::add_new_monomials(m, {Monomial::var(4, 2), Monomial::var(4, 3)}, "step 2");
    } else if (i == 2 && j == 5) {
      detail::append_ear(cdec, c, maxv, EarE{{2, 5}, {2, 1, 5, 4}});
      detail::add_new_monomials(m, {Monomial::var(5, 2), Monomial::var(5, 3)}, "step 2");
    } else if (i == 3 && j == 6) {
      detail::append_ear(cdec, c, maxv, EarE{{3, 6}, {3, 1, 6, 4}});
      detail::add_new_monomials(m, {Monomial::var(6, 2), Monomial::var(6, 3)}, "step 2");
    } else {
      detail::append_ear(cdec, c, maxv, EarE{{i, j}, {i, 1, j, 2}});
      detail::add_new_monomials(
          m, {Monomial::var(i).times(j), Monomial::var(i, 2).times(j)}, "step 2");
    }
  }

  if (!equals_h(f_vec(m), h_from_counts(BaseKind::Octahedron, counts))) {
    fail(ErrorKind::IdentityViolation, "compress_octahedron_F0: F(M) differs from h");
  }
  return {cdec, m};
}

// Bound on eta_F when eta_E = 0 over the octahedron.
inline int eta_F_max_E0(int eta_a, int eta_b) {
  if (eta_b == 0) return 0;
  return eta_a == 0 ? 2 * eta_b - 1 : 2 * eta_b;
}

// Octahedron compression for eta_E = 0. When eta_A = 0 the first B-vertex sits on the
// cycle v1v2v4v3 and later ones on v1v2v3v7; its diagonal triangle there is
// {v2,v3,v7}, the only one whose edges all exist (the octahedron graph has no
// K4, so {v1,v4} is never an edge here).
inline std::pair<EarDecomposition, Multicomplex> compress_octahedron_E0(
    const EarDecomposition& dec) {
  if (dec.base != BaseKind::Octahedron) {
    fail(ErrorKind::PreconditionViolation, "compress_octahedron_E0: octahedron base required");
  }
  EarCounts counts = ear_counts(dec);
  if (counts.e != 0) {
    fail(ErrorKind::PreconditionViolation, "compress_octahedron_E0: eta_E must be zero");
  }
  if (counts.f > eta_F_max_E0(counts.a, counts.b)) {
    fail(ErrorKind::EtaFBoundViolation,
         "compress_octahedron_E0: eta_F exceeds the eta_E = 0 bound");
  }

  EarDecomposition cdec{BaseKind::Octahedron, {}};
  SimplicialComplex c = base_complex(BaseKind::Octahedron);
  VertexId maxv = 6;
  Multicomplex m;
  detail::add_new_monomials(
      m,
      {Monomial::unit(), Monomial::var(4), Monomial::var(5), Monomial::var(6),
       Monomial::var(4).times(5), Monomial::var(4).times(6), Monomial::var(5).times(6),
       Monomial::var(4).times(5).times(6)},
      "step 0");

  std::vector<Monomial> s_list;
  std::vector<std::array<VertexId, 3>> f_list;
  if (counts.a == 0 && counts.b > 0) {
    detail::append_ear(cdec, c, maxv, EarB{7, {1, 2, 4, 3}});
    detail::add_new_monomials(m,
                              {Monomial::var(7), Monomial::var(4).times(7),
                               Monomial::var(7, 2), Monomial::var(4).times(7, 2)},
                              "step 1 (B)");
    s_list.push_back(Monomial::var(7, 3));
    f_list.push_back({2, 3, 7});
    for (int i = 8; i <= 6 + counts.b; ++i) {
      detail::append_ear(cdec, c, maxv, EarB{i, {1, 2, 3, 7}});
      detail::add_new_monomials(m,
                                {Monomial::var(i), Monomial::var(i, 2),
                                 Monomial::var(7).times(i), Monomial::var(7).times(i, 2)},
                                "step 1 (B)");
      s_list.push_back(Monomial::var(7, 2).times(i));
      s_list.push_back(Monomial::var(i, 3));
      f_list.push_back({1, 3, i});
      f_list.push_back({2, 7, i});
    }
  } else if (counts.a > 0) {
    for (int i = 7; i <= counts.a + 6; ++i) {
      detail::append_ear(cdec, c, maxv, EarA{i, {1, 2, 3}});
      detail::add_new_monomials(
          m, {Monomial::var(i), Monomial::var(i, 2), Monomial::var(i, 3)}, "step 1 (A)");
    }
    for (int i = counts.a + 7; i <= counts.a + counts.b + 6; ++i) {
      detail::append_ear(cdec, c, maxv, EarB{i, {1, 2, 3, 7}});
      detail::add_new_monomials(m,
                                {Monomial::var(i), Monomial::var(i, 2),
                                 Monomial::var(7).times(i), Monomial::var(7).times(i, 2)},
                                "step 1 (B)");
      s_list.push_back(Monomial::var(7, 2).times(i));
      s_list.push_back(Monomial::var(i, 3));
      f_list.push_back({1, 3, i});
      f_list.push_back({2, 7, i});
    }
  }

  for (int l = 0; l < counts.f; ++l) {
    detail::append_ear(cdec, c, maxv, EarF{f_list[l]});
    detail::add_new_monomials(m, {s_list[l]}, "step 2");
  }

  if (!equals_h(f_vec(m), h_from_counts(BaseKind::Octahedron, counts))) {
    fail(ErrorKind::IdentityViolation, "compress_octahedron_E0: F(M) differs from h");
  }
  return {cdec, m};
}

// ---------------------------------------------------------------------------
// Octahedron with a filled diagonal: reduce to the bipyramid
// ---------------------------------------------------------------------------

namespace detail {

inline Ear relabel_ear(const Ear& ear, const std::map<VertexId, VertexId>& pi) {
  auto map = [&](VertexId v) {
    auto it = pi.find(v);
    return it == pi.end() ? v : it->second;
  };
  Ear out = ear;
  if (EarA* a = std::get_if<EarA>(&out)) {
    a->apex = map(a->apex);
    for (auto& v : a->cycle) v = map(v);
  } else if (EarB* b = std::get_if<EarB>(&out)) {
    b->apex = map(b->apex);
    for (auto& v : b->cycle) v = map(v);
  } else if (EarE* e = std::get_if<EarE>(&out)) {
    for (auto& v : e->chord) v = map(v);
    for (auto& v : e->cycle) v = map(v);
  } else if (EarF* f = std::get_if<EarF>(&out)) {
    for (auto& v : f->face) v = map(v);
  }
  return normalized(out);
}

}  // namespace detail

// Relabels an octahedron-based decomposition by the automorphism swapping the
// given diagonal pair with {v1,v4}.
inline EarDecomposition relabel_octahedron_diagonal(const EarDecomposition& dec,
                                                    const Edge& diagonal) {
  if (dec.base != BaseKind::Octahedron) {
    fail(ErrorKind::PreconditionViolation, "relabel: octahedron base required");
  }
  std::map<VertexId, VertexId> pi;
  if (diagonal == Edge{1, 4}) {
    // identity
  } else if (diagonal == Edge{2, 5}) {
    pi = {{1, 2}, {2, 1}, {4, 5}, {5, 4}};
  } else if (diagonal == Edge{3, 6}) {
    pi = {{1, 3}, {3, 1}, {4, 6}, {6, 4}};
  } else {
    fail(ErrorKind::PreconditionViolation, "relabel: not an octahedron diagonal");
  }
  EarDecomposition out{BaseKind::Octahedron, {}};
  for (const Ear& e : dec.ears) out.ears.push_back(detail::relabel_ear(e, pi));
  return out;
}

// Octahedron with the edge {v1,v4} filled: rewrite the diagonal E-ear until its
// triangles are {v1,v2,v4} and {v1,v4,v5}, absorb base + ear into the
// bipyramid on axis {v2,v5}, then relabel onto the canonical bipyramid.
inline EarDecomposition reduce_octahedron_v1v4(const EarDecomposition& dec) {
  if (dec.base != BaseKind::Octahedron) {
    fail(ErrorKind::PreconditionViolation, "reduce_octahedron_v1v4: octahedron base required");
  }
  SimplicialComplex full = realize(dec);
  if (!full.has_edge(1, 4)) {
    fail(ErrorKind::PreconditionViolation, "reduce_octahedron_v1v4: edge {v1,v4} absent");
  }
  HVector h0 = h_vector(f_vector(full));

  std::vector<Ear> ears = dec.ears;
  std::size_t idx = ears.size();
  for (std::size_t k = 0; k < ears.size(); ++k) {
    if (const EarE* e = std::get_if<EarE>(&ears[k])) {
      if (make_edge(e->chord[0], e->chord[1]) == Edge{1, 4}) {
        idx = k;
        break;
      }
    }
  }
  if (idx == ears.size()) {
    fail(ErrorKind::IdentityViolation, "edge {v1,v4} present but no chord introduces it");
  }

  // Rewrite until the chord triangles are {1,4,2} and {1,4,5}. Each pass
  // replaces one tip s by its target t in {2,5}; if the face {1,4,t} exists
  // it was filled by a later F-ear, which is retargeted to {1,4,s}.
  for (int guard = 0; guard < 3; ++guard) {
    const EarE& e = std::get<EarE>(ears[idx]);
    VertexId u = e.cycle[1], w = e.cycle[3];
    std::set<VertexId> tips{u, w};
    if (tips == std::set<VertexId>{2, 5}) break;

    VertexId keep, s, t;
    if (tips.count(2)) {
      keep = 2;
      s = u == 2 ? w : u;
      t = 5;
    } else if (tips.count(5)) {
      keep = 5;
      s = u == 5 ? w : u;
      t = 2;
    } else {
      keep = w;
      s = u;
      t = 2;
    }

    SimplicialComplex cur = realize({BaseKind::Octahedron, ears});
    Face tau = make_face({1, 4, t});
    if (cur.contains(tau)) {
      std::size_t j = ears.size();
      for (std::size_t k = idx + 1; k < ears.size(); ++k) {
        if (const EarF* f = std::get_if<EarF>(&ears[k])) {
          if (make_face({f->face[0], f->face[1], f->face[2]}) == tau) {
            j = k;
            break;
          }
        }
      }
      if (j == ears.size()) {
        fail(ErrorKind::IdentityViolation,
             "face {1,4," + std::to_string(t) + "} present but not from a later F-ear");
      }
      ears[j] = normalized(Ear{EarF{{1, 4, s}}});
    }
    ears[idx] = normalized(Ear{EarE{{1, 4}, {1, keep, 4, t}}});

    SimplicialComplex check = realize({BaseKind::Octahedron, ears});
    if (!(h_vector(f_vector(check)) == h0)) {
      fail(ErrorKind::IdentityViolation, "diagonal rewrite changed the h-vector");
    }
  }
  {
    const EarE& e = std::get<EarE>(ears[idx]);
    if (std::set<VertexId>{e.cycle[1], e.cycle[3]} != std::set<VertexId>{2, 5}) {
      fail(ErrorKind::IdentityViolation, "diagonal rewrite did not reach tips {2,5}");
    }
  }

  // Canonical relabeling: axis {2,5} -> {4,5}, equator {1,3,4} -> {1,2,3}.
  std::map<VertexId, VertexId> pi{{2, 4}, {3, 2}, {4, 3}};
  EarDecomposition out{BaseKind::Bipyramid, {}};
  out.ears.push_back(normalized(Ear{EarB{6, {1, 4, 3, 5}}}));  // image of B(6, 1-2-4-5)
  for (std::size_t k = 0; k < ears.size(); ++k) {
    if (k != idx) out.ears.push_back(detail::relabel_ear(ears[k], pi));
  }

  SimplicialComplex check = realize(out);
  if (!(h_vector(f_vector(check)) == h0)) {
    fail(ErrorKind::IdentityViolation, "bipyramid reduction changed the h-vector");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Octahedron without the edge {v1,v4}: shift, compress, rebuild
// ---------------------------------------------------------------------------

// Applies S_{4,5} to the underlying graph and rebuilds labels: the shifted
// base decomposes as K4 + A-vertex v6 (edges {1,6},{2,6},{4,6}) + A-vertex v5
// (edges {3,5},{4,5},{5,6}); later own-labeled stars move from v5 to v4 when
// v5 but not v4 is in the attachment set, and unlabeled edges transfer with
// the {v4,v5} collision rules.
inline LabeledGraph shift_constructible(const LabeledGraph& g) {
  if (g.vertices.size() < 6 || g.find_vertex(5) == nullptr ||
      g.find_vertex(6) == nullptr) {
    fail(ErrorKind::PreconditionViolation, "shift_constructible: octahedron skeleton required");
  }
  for (int i = 0; i < 6; ++i) {
    if (g.vertices[i].id != i + 1 || g.vertices[i].type) {
      fail(ErrorKind::PreconditionViolation,
           "shift_constructible: first six vertices must be the untyped base");
    }
  }
  if (g.has_edge(1, 4)) {
    fail(ErrorKind::PreconditionViolation, "shift_constructible: edge {v1,v4} present");
  }

  LabeledGraph out;
  for (VertexId v = 1; v <= 4; ++v) out.add_vertex(v);
  for (VertexId u = 1; u <= 4; ++u) {
    for (VertexId v = u + 1; v <= 4; ++v) out.add_edge(u, v, 0);
  }
  out.add_vertex(6, 3);
  for (VertexId v : {1, 2, 4}) out.add_edge(v, 6, 6);
  out.add_vertex(5, 3);
  for (VertexId v : {3, 4, 6}) out.add_edge(v, 5, 5);

  for (std::size_t k = 6; k < g.vertices.size(); ++k) {
    const LabeledVertex& lv = g.vertices[k];
    out.add_vertex(lv.id, lv.type);
    std::set<VertexId> n;
    for (const auto& [e, lab] : g.edges) {
      if (lab && *lab == lv.id) {
        n.insert(e.first == lv.id ? e.second : e.first);
      }
    }
    if (n.count(5) && !n.count(4)) {
      n.erase(5);
      n.insert(4);
    }
    for (VertexId v : n) out.add_edge(v, lv.id, lv.id);
  }

  // Unlabeled edges: those away from {v4,v5} first, then those at v4, then v5.
  std::vector<Edge> plain, at4, at5;
  for (const auto& [e, lab] : g.edges) {
    if (lab) continue;
    if (e.first == 4 || e.second == 4) {
      at4.push_back(e);
    } else if (e.first == 5 || e.second == 5) {
      at5.push_back(e);
    } else {
      plain.push_back(e);
    }
  }
  for (const Edge& e : plain) out.add_edge(e.first, e.second, std::nullopt);
  for (const Edge& e : at4) {
    VertexId t = e.first == 4 ? e.second : e.first;
    if (out.has_edge(4, t)) {
      out.add_edge(5, t, std::nullopt);
    } else {
      out.add_edge(4, t, std::nullopt);
    }
  }
  for (const Edge& e : at5) {
    VertexId t = e.first == 5 ? e.second : e.first;
    if (out.has_edge(4, t)) {
      out.add_edge(5, t, std::nullopt);
    } else {
      out.add_edge(4, t, std::nullopt);
    }
  }

  if (!(out.simple() == shift(g.simple(), 4, 5))) {
    fail(ErrorKind::IdentityViolation,
         "shift_constructible: relabeled graph is not S_{4,5} of the input");
  }
  if (!is_constructible(out)) {
    fail(ErrorKind::IdentityViolation, "shift_constructible: output not constructible");
  }
  return out;
}

enum class RemovalCase { Case1 = 1, Case2 = 2, Case3 = 3 };

// Shift + compress route: returns a tetrahedron-based decomposition with
// counts (eta_A + 2, eta_B, eta_E, eta_F) and h' = h + (0,0,0,2), plus the
// removal case read off the types of v5, v6 in compressed order.
inline std::pair<EarDecomposition, RemovalCase> reduce_octahedron_no_v1v4(
    const EarDecomposition& dec) {
  if (dec.base != BaseKind::Octahedron) {
    fail(ErrorKind::PreconditionViolation, "reduce_octahedron_no_v1v4: octahedron base required");
  }
  EarCounts counts = ear_counts(dec);
  if (counts.e == 0 || counts.f == 0) {
    fail(ErrorKind::PreconditionViolation,
         "reduce_octahedron_no_v1v4: requires eta_E > 0 and eta_F > 0");
  }
  SimplicialComplex full = realize(dec);
  if (full.has_edge(1, 4)) {
    fail(ErrorKind::PreconditionViolation, "reduce_octahedron_no_v1v4: edge {v1,v4} present");
  }

  LabeledGraph shifted = shift_constructible(labeled_graph_raw(dec));
  LabeledGraph cg = compress(shifted);
  if (cg.count_type(3) != counts.a + 2 || cg.count_type(4) != counts.b ||
      cg.count_unlabeled() != counts.e) {
    fail(ErrorKind::IdentityViolation, "reduce_octahedron_no_v1v4: move counts drifted");
  }

  EarDecomposition out{BaseKind::Tetrahedron, {}};
  SimplicialComplex c = base_complex(BaseKind::Tetrahedron);
  VertexId maxv = 4;
  for (const auto& lv : cg.vertices) {
    if (!lv.type) continue;
    if (*lv.type == 4) {
      detail::append_ear(out, c, maxv, EarB{lv.id, {1, 2, 3, 4}});
    } else {
      detail::append_ear(out, c, maxv, EarA{lv.id, {1, 2, 3}});
    }
  }
  std::vector<Edge> chords;
  for (const auto& [e, lab] : cg.edges) {
    if (!lab) chords.push_back(e);
  }
  std::sort(chords.begin(), chords.end(), edge_revlex_less);
  for (const Edge& e : chords) {
    detail::append_ear(out, c, maxv, EarE{{e.first, e.second}, {e.first, 1, e.second, 2}});
  }
  for (int l = 0; l < counts.f; ++l) {
    auto face = detail::revlex_smallest_missing_face(c);
    if (!face) {
      fail(ErrorKind::CapacityExhausted,
           "reduce_octahedron_no_v1v4: no missing triangle for an F-ear");
    }
    detail::append_ear(out, c, maxv, EarF{*face});
  }

  HVector expected = h_vector(f_vector(full)) + HVector{{0, 0, 0, 2}};
  if (!(h_vector(f_vector(c)) == expected)) {
    fail(ErrorKind::IdentityViolation,
         "reduce_octahedron_no_v1v4: h-vector law h' = h + (0,0,0,2) failed");
  }

  RemovalCase rc = RemovalCase::Case1;
  int t5 = *cg.vertices[4].type, t6 = *cg.vertices[5].type;
  if (t5 == 4 && t6 == 4) {
    rc = RemovalCase::Case3;
  } else if (t5 == 4) {
    rc = RemovalCase::Case2;
  }
  return {out, rc};
}

// Removes the two surplus degree-3 monomials after the shift route.
inline Multicomplex remove_two_monomials(const Multicomplex& m, RemovalCase rc) {
  std::vector<Monomial> targets;
  switch (rc) {
    case RemovalCase::Case1:
      targets = {Monomial::var(4, 3), Monomial::var(5, 3)};
      break;
    case RemovalCase::Case2:
      targets = {Monomial::var(4, 3), Monomial::var(4, 2).times(5)};
      break;
    case RemovalCase::Case3:
      targets = {Monomial::var(4, 3), Monomial::var(4).times(5, 2)};
      break;
  }
  FVec before = f_vec(m);
  Multicomplex out = m;
  for (const Monomial& t : targets) {
    if (!out.contains(t)) {
      fail(ErrorKind::IdentityViolation,
           "remove_two_monomials: monomial " + t.str() + " absent");
    }
    out.monomials.erase(t);
  }
  if (!is_multicomplex(out.monomials) || !is_pure(out)) {
    fail(ErrorKind::IdentityViolation, "remove_two_monomials: purity destroyed");
  }
  FVec after = f_vec(out);
  bool drop_ok = before.counts.size() == after.counts.size() &&
                 before.counts.size() == 4 &&
                 after.counts[3] + 2 == before.counts[3];
  for (int i = 0; i < 3 && drop_ok; ++i) {
    drop_ok = before.counts[i] == after.counts[i];
  }
  if (!drop_ok) {
    fail(ErrorKind::IdentityViolation, "remove_two_monomials: F did not drop by (0,0,0,2)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Top-level dispatch
// ---------------------------------------------------------------------------

struct WitnessReport {
  EarDecomposition input;
  EarCounts counts;
  HVector h;
  EarDecomposition compressed;
  Multicomplex multicomplex;
  FVec f;
  std::vector<std::string> route;
  bool gluing_valid = false;
  bool pure = false;
  bool f_equals_h = false;
  std::optional<CapacityRecord> capacity;
  std::string failure;

  bool ok() const { return failure.empty() && gluing_valid && pure && f_equals_h; }
};

inline WitnessReport pure_witness(const EarDecomposition& dec) {
  WitnessReport rep;
  rep.input = dec;
  rep.counts = ear_counts(dec);

  SimplicialComplex full = realize(dec);  // input errors propagate
  rep.h = h_vector(f_vector(full));

  try {
    if (!(rep.h == h_from_counts(dec.base, rep.counts))) {
      fail(ErrorKind::IdentityViolation, "pure_witness: h-vector disagrees with ear counts");
    }
    switch (dec.base) {
      case BaseKind::Tetrahedron: {
        rep.route.push_back("tetrahedron: compress");
        TetraCompression tc = compress_tetra(dec);
        rep.compressed = tc.compressed;
        rep.multicomplex = tc.multicomplex;
        rep.capacity = tc.capacity;
        break;
      }
      case BaseKind::Bipyramid: {
        if (rep.counts.f > 0) {
          rep.route.push_back("bipyramid: absorb an F-ear into a tetrahedron base");
          EarDecomposition t = reduce_bipyramid_Fpos(dec);
          rep.route.push_back("tetrahedron: compress");
          TetraCompression tc = compress_tetra(t);
          rep.compressed = tc.compressed;
          rep.multicomplex = tc.multicomplex;
          rep.capacity = tc.capacity;
        } else {
          rep.route.push_back("bipyramid: compress (no F-ears)");
          auto [cdec, m] = compress_bipyramid_F0(dec);
          rep.compressed = cdec;
          rep.multicomplex = m;
        }
        break;
      }
      case BaseKind::Octahedron: {
        if (rep.counts.f == 0) {
          rep.route.push_back("octahedron: compress (no F-ears)");
          auto [cdec, m] = compress_octahedron_F0(dec);
          rep.compressed = cdec;
          rep.multicomplex = m;
          break;
        }
        if (rep.counts.e == 0) {
          rep.route.push_back("octahedron: compress (no E-ears)");
          auto [cdec, m] = compress_octahedron_E0(dec);
          rep.compressed = cdec;
          rep.multicomplex = m;
          break;
        }
        std::optional<Edge> diagonal;
        for (Edge d : {Edge{1, 4}, Edge{2, 5}, Edge{3, 6}}) {
          if (full.has_edge(d.first, d.second)) {
            diagonal = d;
            break;
          }
        }
        if (diagonal) {
          // A filled diagonal other than {v1,v4} is carried onto {v1,v4} by
          // an octahedron automorphism; the subcases are exhaustive only up
          // to that relabeling.
          rep.route.push_back("octahedron: diagonal {" + std::to_string(diagonal->first) +
                              "," + std::to_string(diagonal->second) +
                              "} present, relabel and reduce to the bipyramid");
          EarDecomposition od = relabel_octahedron_diagonal(dec, *diagonal);
          EarDecomposition bp = reduce_octahedron_v1v4(od);
          rep.route.push_back("bipyramid: absorb an F-ear into a tetrahedron base");
          EarDecomposition t = reduce_bipyramid_Fpos(bp);
          rep.route.push_back("tetrahedron: compress");
          TetraCompression tc = compress_tetra(t);
          rep.compressed = tc.compressed;
          rep.multicomplex = tc.multicomplex;
          rep.capacity = tc.capacity;
        } else {
          rep.route.push_back("octahedron: no diagonal filled, shift S_{4,5} and compress");
          auto [t, rc] = reduce_octahedron_no_v1v4(dec);
          rep.route.push_back("tetrahedron: compress (h + (0,0,0,2))");
          TetraCompression tc = compress_tetra(t);
          rep.route.push_back("remove two degree-3 monomials (case " +
                              std::to_string(static_cast<int>(rc)) + ")");
          rep.compressed = tc.compressed;
          rep.multicomplex = remove_two_monomials(tc.multicomplex, rc);
          rep.capacity = tc.capacity;
        }
        break;
      }
    }

    try {
      realize(rep.compressed);
      rep.gluing_valid = true;
    } catch (const Error&) {
      rep.gluing_valid = false;
    }
    rep.pure = is_pure(rep.multicomplex);
    rep.f = f_vec(rep.multicomplex);
    rep.f_equals_h = equals_h(rep.f, rep.h);
  } catch (const Error& e) {
    if (!e.internal()) throw;
    rep.failure = e.what();
  }
  return rep;
}

}  // namespace psear
