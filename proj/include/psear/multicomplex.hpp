#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "psear/complex.hpp"
#include "psear/error.hpp"
#include "psear/util.hpp"

namespace psear {

// ---------------------------------------------------------------------------
// Monomials
// ---------------------------------------------------------------------------

// A monomial over indexed variables x_1, x_2, ...; zero exponents are never
// stored, so the unit monomial has an empty map.
struct Monomial {
  std::map<int, int> exps;

  static Monomial unit() { return {}; }

  static Monomial var(int i, int e = 1) {
    Monomial m;
    if (e > 0) m.exps[i] = e;
    return m;
  }

  Monomial times(int i, int e = 1) const {
    Monomial m = *this;
    m.exps[i] += e;
    if (m.exps[i] == 0) m.exps.erase(i);
    if (m.exps.count(i) && m.exps[i] < 0) {
      fail(ErrorKind::InvalidArguments, "negative exponent");
    }
    return m;
  }

  int degree() const {
    int d = 0;
    for (const auto& [i, e] : exps) d += e;
    return d;
  }

  bool divides(const Monomial& o) const {
    for (const auto& [i, e] : exps) {
      auto it = o.exps.find(i);
      if (it == o.exps.end() || it->second < e) return false;
    }
    return true;
  }

  // Divisors of degree deg() - 1.
  std::vector<Monomial> lower_divisors() const {
    std::vector<Monomial> out;
    for (const auto& [i, e] : exps) {
      Monomial m = *this;
      if (e == 1) {
        m.exps.erase(i);
      } else {
        m.exps[i] = e - 1;
      }
      out.push_back(m);
    }
    return out;
  }

  bool operator==(const Monomial& o) const { return exps == o.exps; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  // Variable indices repeated by exponent, sorted descending.
  std::vector<int> descending_index_multiset() const {
    std::vector<int> out;
    for (auto it = exps.rbegin(); it != exps.rend(); ++it) {
      for (int k = 0; k < it->second; ++k) out.push_back(it->first);
    }
    return out;
  }

  // Text form: "1", or factors "x<i>^<e>" joined by "*" with "^1" omitted.
  std::string str() const {
    if (exps.empty()) return "1";
    std::ostringstream out;
    bool first = true;
    for (const auto& [i, e] : exps) {
      if (!first) out << '*';
      out << 'x' << i;
      if (e > 1) out << '^' << e;
      first = false;
    }
    return out.str();
  }
};

// Revlex within a fixed degree: compare the descending index multisets
// lexicographically; the smaller sequence is the revlex-smaller monomial.
inline int monomial_revlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) {
    fail(ErrorKind::InvalidArguments, "monomial_revlex_compare: unequal degrees");
  }
  auto sa = a.descending_index_multiset();
  auto sb = b.descending_index_multiset();
  if (sa < sb) return -1;
  if (sb < sa) return 1;
  return 0;
}

// Total order used for storage and emission: by degree, then revlex.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.descending_index_multiset() < b.descending_index_multiset();
  }
};

using MonomialSet = std::set<Monomial, MonomialOrder>;

// ---------------------------------------------------------------------------
// Multicomplexes
// ---------------------------------------------------------------------------

struct Multicomplex {
  MonomialSet monomials;

  bool contains(const Monomial& m) const { return monomials.count(m) > 0; }
  bool empty() const { return monomials.empty(); }
  std::size_t size() const { return monomials.size(); }
};

// Degree counts F_0..F_d of a multicomplex.
struct FVec {
  std::vector<std::int64_t> counts;

  int max_degree() const { return static_cast<int>(counts.size()) - 1; }
  bool operator==(const FVec& o) const { return counts == o.counts; }
  std::string str() const { return "(" + join_ints(counts, ", ") + ")"; }
};

inline bool equals_h(const FVec& f, const HVector& h) {
  for (int i = 0; i < 4; ++i) {
    std::int64_t fi = i < static_cast<int>(f.counts.size()) ? f.counts[i] : 0;
    if (fi != h.entries[i]) return false;
  }
  return static_cast<int>(f.counts.size()) <= 4;
}

inline bool is_multicomplex(const MonomialSet& s) {
  for (const Monomial& m : s) {
    for (const Monomial& d : m.lower_divisors()) {
      if (!s.count(d)) return false;
    }
  }
  return true;
}

inline Multicomplex divisor_closure(const std::vector<Monomial>& tops) {
  Multicomplex out;
  std::vector<Monomial> stack = tops;
  while (!stack.empty()) {
    Monomial m = stack.back();
    stack.pop_back();
    if (out.monomials.insert(m).second) {
      for (const Monomial& d : m.lower_divisors()) {
        if (!out.contains(d)) stack.push_back(d);
      }
    }
  }
  if (!tops.empty()) out.monomials.insert(Monomial::unit());
  return out;
}

inline std::vector<Monomial> maximal_monomials(const Multicomplex& m) {
  std::vector<Monomial> out;
  for (const Monomial& x : m.monomials) {
    bool maximal = true;
    for (const Monomial& y : m.monomials) {
      if (x != y && x.divides(y)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(x);
  }
  return out;
}

inline bool is_pure(const Multicomplex& m) {
  if (!is_multicomplex(m.monomials)) {
    fail(ErrorKind::InvalidArguments, "is_pure: not a multicomplex");
  }
  auto maxima = maximal_monomials(m);
  for (std::size_t i = 1; i < maxima.size(); ++i) {
    if (maxima[i].degree() != maxima[0].degree()) return false;
  }
  return true;
}

inline FVec f_vec(const Multicomplex& m) {
  if (m.empty()) fail(ErrorKind::InvalidArguments, "f_vec: empty multicomplex");
  FVec f;
  for (const Monomial& x : m.monomials) {
    int d = x.degree();
    if (d >= static_cast<int>(f.counts.size())) f.counts.resize(d + 1, 0);
    ++f.counts[d];
  }
  return f;
}

// All degree-d monomials on variables x_1..x_n in revlex order.
inline std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  if (d == 0) {
    out.push_back(Monomial::unit());
    return out;
  }
  // Build by choosing a non-increasing sequence of d variable indices
  // (the descending multiset); emitting in lexicographic order of that
  // sequence is exactly revlex order.
  std::vector<int> seq;
  auto rec = [&](auto&& self, int remaining, int maxvar) -> void {
    if (remaining == 0) {
      Monomial m;
      for (int i : seq) m.exps[i] += 1;
      out.push_back(m);
      return;
    }
    for (int v = 1; v <= maxvar; ++v) {
      seq.push_back(v);
      self(self, remaining - 1, v);
      seq.pop_back();
    }
  };
  rec(rec, d, n);
  return out;
}

// ---------------------------------------------------------------------------
// Pure O-sequence oracle (exhaustive search)
// ---------------------------------------------------------------------------

struct OracleOptions {
  std::uint64_t budget = 20'000'000;  // search nodes
  int max_vars = 6;                   // cap on F_1
  int max_tops = 8;                   // cap on F_d when d = 3
};

enum class OracleStatus { Witness, Refuted, BudgetExhausted };

struct OracleResult {
  OracleStatus status = OracleStatus::Refuted;
  std::optional<Multicomplex> witness;
  std::uint64_t steps = 0;
  std::string note;
};

// Searches for a pure multicomplex with the given degree counts. Exactly F_1
// variables are used; candidates are divisor closures of F_d degree-d
// monomials, enumerated with tops in revlex order and subsets in
// lexicographic order of sorted top index lists. The first hit is reported.
inline OracleResult pure_oseq_oracle(const FVec& fv, const OracleOptions& opts = {}) {
  std::vector<std::int64_t> f = fv.counts;
  while (f.size() > 1 && f.back() == 0) f.pop_back();
  if (f.empty() || f[0] != 1) {
    fail(ErrorKind::InvalidArguments, "oracle: F_0 must be 1");
  }
  int d = static_cast<int>(f.size()) - 1;
  if (d > 3) fail(ErrorKind::InvalidArguments, "oracle: degrees above 3 unsupported");
  for (std::int64_t x : f) {
    if (x < 0) fail(ErrorKind::InvalidArguments, "oracle: negative entry");
  }

  OracleResult res;
  if (d == 0) {
    res.status = OracleStatus::Witness;
    res.witness = divisor_closure({Monomial::unit()});
    return res;
  }
  // An internal zero can never arise in a divisor closure.
  for (int i = 1; i < d; ++i) {
    if (f[i] == 0) {
      res.status = OracleStatus::Refuted;
      res.note = "degree " + std::to_string(i) + " count is zero below the top degree";
      return res;
    }
  }
  int nvars = static_cast<int>(f[1]);
  if (nvars > opts.max_vars) {
    res.status = OracleStatus::BudgetExhausted;
    res.note = "F_1 exceeds the configured variable cap";
    return res;
  }
  // Bitmask capacity: up to 63 variables, and for d = 3 the degree-2 index
  // mask needs C(n+1, 2) <= 64.
  if (nvars > 60 || (d == 3 && nvars > 10)) {
    fail(ErrorKind::InvalidArguments, "oracle: too many variables for the mask search");
  }
  if (d == 3 && f[3] > opts.max_tops) {
    res.status = OracleStatus::BudgetExhausted;
    res.note = "F_3 exceeds the configured top cap";
    return res;
  }

  std::vector<Monomial> tops_pool = monomials_of_degree(nvars, d);
  int pool = static_cast<int>(tops_pool.size());
  int want = static_cast<int>(f[d]);
  if (want > pool) {
    res.status = OracleStatus::Refuted;
    res.note = "top degree count exceeds the number of monomials";
    return res;
  }

  // Per-top masks: variables used, and (for d = 3) degree-2 divisors.
  std::vector<Monomial> deg2 = d == 3 ? monomials_of_degree(nvars, 2) : std::vector<Monomial>{};
  std::map<std::vector<int>, int> deg2_index;
  for (int i = 0; i < static_cast<int>(deg2.size()); ++i) {
    deg2_index[deg2[i].descending_index_multiset()] = i;
  }
  std::vector<std::uint64_t> varmask(pool, 0), d2mask(pool, 0);
  for (int i = 0; i < pool; ++i) {
    for (const auto& [v, e] : tops_pool[i].exps) varmask[i] |= 1ull << v;
    if (d == 3) {
      for (const Monomial& q : tops_pool[i].lower_divisors()) {
        d2mask[i] |= 1ull << deg2_index.at(q.descending_index_multiset());
      }
    }
  }
  std::uint64_t all_vars = 0;
  for (int v = 1; v <= nvars; ++v) all_vars |= 1ull << v;

  std::int64_t want_mid = d == 3 ? f[2] : 0;
  std::vector<int> chosen;
  std::uint64_t steps = 0;
  bool exhausted = false;
  std::optional<std::vector<int>> found;

  auto popcount = [](std::uint64_t x) {
    return static_cast<std::int64_t>(__builtin_popcountll(x));
  };

  auto rec = [&](auto&& self, int start, std::uint64_t vmask, std::uint64_t mmask) -> void {
    if (found || exhausted) return;
    if (++steps > opts.budget) {
      exhausted = true;
      return;
    }
    if (d == 3 && popcount(mmask) > want_mid) return;
    if (static_cast<int>(chosen.size()) == want) {
      if (vmask != all_vars) return;
      if (d == 3 && popcount(mmask) != want_mid) return;
      found = chosen;
      return;
    }
    int need = want - static_cast<int>(chosen.size());
    for (int i = start; i + need <= pool; ++i) {
      chosen.push_back(i);
      self(self, i + 1, vmask | varmask[i], mmask | d2mask[i]);
      chosen.pop_back();
      if (found || exhausted) return;
    }
  };
  rec(rec, 0, 0, 0);

  res.steps = steps;
  if (found) {
    std::vector<Monomial> tops;
    for (int i : *found) tops.push_back(tops_pool[i]);
    res.status = OracleStatus::Witness;
    res.witness = divisor_closure(tops);
    return res;
  }
  if (exhausted) {
    res.status = OracleStatus::BudgetExhausted;
    res.note = "search budget exhausted";
    return res;
  }
  res.status = OracleStatus::Refuted;
  res.note = "no pure multicomplex realizes this vector";
  return res;
}

}  // namespace psear
