#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "psear/complex.hpp"
#include "psear/ears.hpp"
#include "psear/error.hpp"
#include "psear/graph.hpp"

namespace psear {

// Seeded RNG with a portable bounded draw (rejection sampling on top of
// mt19937_64, so identical seeds give identical streams everywhere).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) fail(ErrorKind::InvalidArguments, "Rng::below(0)");
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = eng_();
      if (r >= threshold) return r % bound;
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) {
      std::swap(xs[i - 1], xs[below(i)]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

struct GenSpec {
  std::optional<BaseKind> base;    // absent = any
  std::optional<EarCounts> eta;    // exact per-type budgets
  std::optional<int> total_ears;   // free mix of the given size
  std::uint64_t seed = 0;
  int max_vertices = 64;
};

// ---------------------------------------------------------------------------
// Legal-move enumeration (recomputed from scratch; desk-scale sizes)
// ---------------------------------------------------------------------------

namespace genmoves {

inline std::vector<Ear> a_moves(const SimplicialComplex& c, VertexId apex) {
  std::vector<Ear> out;
  for (const auto& t : triangles(one_skeleton(c))) {
    out.push_back(normalized(Ear{EarA{apex, t}}));
  }
  return out;
}

inline std::vector<Ear> b_moves(const SimplicialComplex& c, VertexId apex) {
  std::vector<Ear> out;
  SimpleGraph g = one_skeleton(c);
  std::vector<VertexId> vs(g.vertices.begin(), g.vertices.end());
  int n = static_cast<int>(vs.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int cidx = b + 1; cidx < n; ++cidx) {
        for (int d = cidx + 1; d < n; ++d) {
          VertexId p = vs[a], q = vs[b], r = vs[cidx], s = vs[d];
          // Three cyclic orders of {p,q,r,s}; diagonals are irrelevant.
          const std::array<std::array<VertexId, 4>, 3> orders{
              std::array<VertexId, 4>{p, q, r, s},
              std::array<VertexId, 4>{p, q, s, r},
              std::array<VertexId, 4>{p, r, q, s}};
          for (const auto& cy : orders) {
            bool ok = true;
            for (int i = 0; i < 4 && ok; ++i) {
              if (!c.has_edge(cy[i], cy[(i + 1) % 4])) ok = false;
            }
            if (ok) out.push_back(normalized(Ear{EarB{apex, cy}}));
          }
        }
      }
    }
  }
  return out;
}

inline std::vector<Ear> e_moves(const SimplicialComplex& c) {
  std::vector<Ear> out;
  SimpleGraph g = one_skeleton(c);
  std::vector<VertexId> vs(g.vertices.begin(), g.vertices.end());
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      VertexId u = vs[a], w = vs[b];
      if (c.has_edge(u, w)) continue;
      std::vector<VertexId> common;
      for (VertexId x : vs) {
        if (x != u && x != w && c.has_edge(u, x) && c.has_edge(w, x)) {
          common.push_back(x);
        }
      }
      // The chord is absent, so both chord triangles are automatically absent.
      for (std::size_t i = 0; i < common.size(); ++i) {
        for (std::size_t j = i + 1; j < common.size(); ++j) {
          out.push_back(normalized(Ear{EarE{{u, w}, {u, common[i], w, common[j]}}}));
        }
      }
    }
  }
  return out;
}

inline std::vector<Ear> f_moves(const SimplicialComplex& c) {
  std::vector<Ear> out;
  for (const auto& t : triangles(one_skeleton(c))) {
    if (!c.contains(make_face({t[0], t[1], t[2]}))) {
      out.push_back(normalized(Ear{EarF{t}}));
    }
  }
  return out;
}

inline std::vector<Ear> moves_of_type(char type, const SimplicialComplex& c,
                                      VertexId next_apex) {
  switch (type) {
    case 'A': return a_moves(c, next_apex);
    case 'B': return b_moves(c, next_apex);
    case 'E': return e_moves(c);
    default: return f_moves(c);
  }
}

}  // namespace genmoves

// ---------------------------------------------------------------------------
// Random decompositions
// ---------------------------------------------------------------------------

namespace detail {

struct QuotaSearch {
  Rng& rng;
  int max_vertices;
  int backtracks = 0;
  static constexpr int kBacktrackLimit = 1000;

  bool run(const SimplicialComplex& c, VertexId maxv, EarCounts quota,
           std::vector<Ear>& acc) {
    if (quota.total() == 0) return true;
    std::vector<Ear> candidates;
    auto push_type = [&](char t, int left) {
      if (left <= 0) return;
      if ((t == 'A' || t == 'B') && maxv + 1 > max_vertices) return;
      for (Ear& e : genmoves::moves_of_type(t, c, maxv + 1)) {
        candidates.push_back(std::move(e));
      }
    };
    push_type('A', quota.a);
    push_type('B', quota.b);
    push_type('E', quota.e);
    push_type('F', quota.f);
    rng.shuffle(candidates);
    for (const Ear& e : candidates) {
      SimplicialComplex next = c;
      VertexId nmax = maxv;
      apply_ear(next, nmax, e, acc.size());
      EarCounts q = quota;
      switch (ear_type(e)) {
        case 'A': --q.a; break;
        case 'B': --q.b; break;
        case 'E': --q.e; break;
        case 'F': --q.f; break;
      }
      acc.push_back(e);
      if (run(next, nmax, q, acc)) return true;
      acc.pop_back();
      if (++backtracks > kBacktrackLimit) {
        fail(ErrorKind::InfeasibleBudget,
             "gen_decomposition: backtracking limit reached for this budget");
      }
    }
    return false;
  }
};

}  // namespace detail

inline EarDecomposition gen_decomposition(const GenSpec& spec) {
  Rng rng(spec.seed);
  BaseKind base;
  if (spec.base) {
    base = *spec.base;
  } else {
    base = static_cast<BaseKind>(rng.below(3));
  }
  EarDecomposition dec{base, {}};
  SimplicialComplex c = base_complex(base);
  VertexId maxv = base_vertex_count(base);

  if (spec.eta) {
    detail::QuotaSearch search{rng, spec.max_vertices};
    std::vector<Ear> acc;
    if (!search.run(c, maxv, *spec.eta, acc)) {
      fail(ErrorKind::InfeasibleBudget,
           "gen_decomposition: no decomposition matches the requested budgets");
    }
    dec.ears = acc;
  } else if (spec.total_ears) {
    for (int step = 0; step < *spec.total_ears; ++step) {
      // Pick a type uniformly among those with a legal move, then a move.
      std::vector<std::pair<char, std::vector<Ear>>> avail;
      for (char t : {'A', 'B', 'E', 'F'}) {
        if ((t == 'A' || t == 'B') && maxv + 1 > spec.max_vertices) continue;
        auto ms = genmoves::moves_of_type(t, c, maxv + 1);
        if (!ms.empty()) avail.emplace_back(t, std::move(ms));
      }
      if (avail.empty()) {
        fail(ErrorKind::InfeasibleBudget, "gen_decomposition: no legal move remains");
      }
      auto& [t, ms] = avail[rng.below(avail.size())];
      const Ear& e = ms[rng.below(ms.size())];
      apply_ear(c, maxv, e, dec.ears.size());
      dec.ears.push_back(e);
    }
  }
  realize(dec);  // generator soundness; throws on an internal bug
  return dec;
}

// ---------------------------------------------------------------------------
// Random constructible graphs
// ---------------------------------------------------------------------------

inline LabeledGraph gen_constructible_graph(const GenSpec& spec) {
  Rng rng(spec.seed);
  EarCounts quota = spec.eta.value_or(EarCounts{});
  if (quota.f != 0) {
    fail(ErrorKind::InvalidArguments, "gen_constructible_graph: no F moves on graphs");
  }

  LabeledGraph g;
  for (VertexId v = 1; v <= 4; ++v) g.add_vertex(v);
  for (VertexId u = 1; u <= 4; ++u) {
    for (VertexId v = u + 1; v <= 4; ++v) g.add_edge(u, v, 0);
  }
  VertexId next = 5;

  auto missing_edges = [&]() {
    std::vector<Edge> out;
    std::vector<VertexId> vs;
    for (const auto& lv : g.vertices) vs.push_back(lv.id);
    std::sort(vs.begin(), vs.end());
    for (std::size_t a = 0; a < vs.size(); ++a) {
      for (std::size_t b = a + 1; b < vs.size(); ++b) {
        if (!g.has_edge(vs[a], vs[b])) out.push_back({vs[a], vs[b]});
      }
    }
    return out;
  };

  while (quota.total() > 0) {
    std::vector<char> avail;
    if (quota.a > 0 && next <= spec.max_vertices) avail.push_back('A');
    if (quota.b > 0 && next <= spec.max_vertices) avail.push_back('B');
    std::vector<Edge> missing = missing_edges();
    if (quota.e > 0 && !missing.empty()) avail.push_back('E');
    if (avail.empty()) {
      fail(ErrorKind::InfeasibleBudget, "gen_constructible_graph: no legal move remains");
    }
    char t = avail[rng.below(avail.size())];
    if (t == 'E') {
      Edge e = missing[rng.below(missing.size())];
      g.add_edge(e.first, e.second, std::nullopt);
      --quota.e;
    } else {
      int deg = t == 'A' ? 3 : 4;
      std::vector<VertexId> pool;
      for (const auto& lv : g.vertices) pool.push_back(lv.id);
      std::vector<VertexId> chosen;
      for (int k = 0; k < deg; ++k) {
        std::size_t i = rng.below(pool.size());
        chosen.push_back(pool[i]);
        pool.erase(pool.begin() + i);
      }
      g.add_vertex(next, deg);
      for (VertexId v : chosen) g.add_edge(v, next, next);
      ++next;
      if (t == 'A') --quota.a; else --quota.b;
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of small decompositions
// ---------------------------------------------------------------------------

inline std::vector<EarDecomposition> enumerate_small(BaseKind base, int max_ears) {
  if (max_ears > 4) {
    fail(ErrorKind::BoundExceeded, "enumerate_small: max_ears must be at most 4");
  }
  std::vector<EarDecomposition> out;
  EarDecomposition dec{base, {}};
  SimplicialComplex c = base_complex(base);
  VertexId maxv = base_vertex_count(base);

  auto rec = [&](auto&& self, const SimplicialComplex& cur, VertexId curmax) -> void {
    out.push_back(dec);
    if (static_cast<int>(dec.ears.size()) == max_ears) return;
    for (char t : {'A', 'B', 'E', 'F'}) {
      for (const Ear& e : genmoves::moves_of_type(t, cur, curmax + 1)) {
        SimplicialComplex next = cur;
        VertexId nmax = curmax;
        apply_ear(next, nmax, e, dec.ears.size());
        dec.ears.push_back(e);
        self(self, next, nmax);
        dec.ears.pop_back();
      }
    }
  };
  rec(rec, c, maxv);
  return out;
}

}  // namespace psear
