#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "psear/ears.hpp"
#include "psear/engine.hpp"
#include "psear/error.hpp"
#include "psear/multicomplex.hpp"

namespace psear {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Instance files
// ---------------------------------------------------------------------------

inline ordered_json to_json(const EarDecomposition& dec) {
  ordered_json j;
  j["base"] = base_name(dec.base);
  j["ears"] = ordered_json::array();
  for (const Ear& ear : dec.ears) {
    ordered_json e;
    if (const EarA* a = std::get_if<EarA>(&ear)) {
      e["type"] = "A";
      e["apex"] = a->apex;
      e["cycle"] = a->cycle;
    } else if (const EarB* b = std::get_if<EarB>(&ear)) {
      e["type"] = "B";
      e["apex"] = b->apex;
      e["cycle"] = b->cycle;
    } else if (const EarE* ee = std::get_if<EarE>(&ear)) {
      e["type"] = "E";
      e["chord"] = ee->chord;
      e["cycle"] = ee->cycle;
    } else if (const EarF* f = std::get_if<EarF>(&ear)) {
      e["type"] = "F";
      e["face"] = f->face;
    }
    j["ears"].push_back(e);
  }
  return j;
}

inline std::string serialize(const EarDecomposition& dec) {
  return to_json(dec).dump(2) + "\n";
}

namespace detail {

template <std::size_t N>
std::array<VertexId, N> parse_vertex_array(const ordered_json& j, const char* field) {
  if (!j.is_array() || j.size() != N) {
    fail(ErrorKind::ParseError,
         std::string(field) + " must be an array of " + std::to_string(N) + " vertex ids");
  }
  std::array<VertexId, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if (!j[i].is_number_integer() || j[i].get<int>() <= 0) {
      fail(ErrorKind::ParseError, std::string(field) + " entries must be positive integers");
    }
    out[i] = j[i].get<int>();
  }
  return out;
}

}  // namespace detail

inline EarDecomposition decomposition_from_json(const ordered_json& j) {
  if (!j.is_object()) fail(ErrorKind::ParseError, "instance must be a JSON object");
  if (!j.contains("base") || !j["base"].is_string()) {
    fail(ErrorKind::ParseError, "missing \"base\"");
  }
  EarDecomposition dec;
  std::string base = j["base"].get<std::string>();
  if (base == "tetrahedron") {
    dec.base = BaseKind::Tetrahedron;
  } else if (base == "bipyramid") {
    dec.base = BaseKind::Bipyramid;
  } else if (base == "octahedron") {
    dec.base = BaseKind::Octahedron;
  } else {
    fail(ErrorKind::ParseError, "unknown base \"" + base + "\"");
  }
  if (j.contains("ears")) {
    if (!j["ears"].is_array()) fail(ErrorKind::ParseError, "\"ears\" must be an array");
    for (const auto& e : j["ears"]) {
      if (!e.is_object() || !e.contains("type") || !e["type"].is_string()) {
        fail(ErrorKind::ParseError, "each ear needs a \"type\"");
      }
      std::string t = e["type"].get<std::string>();
      auto need = [&](const char* f) -> const ordered_json& {
        if (!e.contains(f)) {
          fail(ErrorKind::ParseError, std::string("ear of type ") + t + " needs \"" + f + "\"");
        }
        return e[f];
      };
      auto apex = [&]() {
        const auto& a = need("apex");
        if (!a.is_number_integer() || a.get<int>() <= 0) {
          fail(ErrorKind::ParseError, "apex must be a positive integer");
        }
        return a.get<int>();
      };
      if (t == "A") {
        dec.ears.push_back(normalized(
            Ear{EarA{apex(), detail::parse_vertex_array<3>(need("cycle"), "cycle")}}));
      } else if (t == "B") {
        dec.ears.push_back(normalized(
            Ear{EarB{apex(), detail::parse_vertex_array<4>(need("cycle"), "cycle")}}));
      } else if (t == "E") {
        auto chord = detail::parse_vertex_array<2>(need("chord"), "chord");
        auto cycle = detail::parse_vertex_array<4>(need("cycle"), "cycle");
        bool matches = (chord[0] == cycle[0] && chord[1] == cycle[2]) ||
                       (chord[0] == cycle[2] && chord[1] == cycle[0]);
        if (!matches) {
          fail(ErrorKind::ParseError,
               "chord endpoints must be the 1st and 3rd cycle entries");
        }
        dec.ears.push_back(normalized(Ear{EarE{chord, cycle}}));
      } else if (t == "F") {
        dec.ears.push_back(
            normalized(Ear{EarF{detail::parse_vertex_array<3>(need("face"), "face")}}));
      } else {
        fail(ErrorKind::ParseError, "unknown ear type \"" + t + "\"");
      }
    }
  }
  return dec;
}

inline EarDecomposition parse_decomposition(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorKind::ParseError, "not valid JSON");
  return decomposition_from_json(j);
}

// ---------------------------------------------------------------------------
// Witness reports
// ---------------------------------------------------------------------------

inline std::vector<std::string> monomial_strings(const Multicomplex& m) {
  std::vector<std::string> out;
  for (const Monomial& x : m.monomials) out.push_back(x.str());
  return out;
}

inline ordered_json to_json(const WitnessReport& rep) {
  ordered_json j;
  j["route"] = rep.route;
  j["base"] = base_name(rep.input.base);
  j["eta"] = {rep.counts.a, rep.counts.b, rep.counts.e, rep.counts.f};
  j["h"] = rep.h.entries;
  j["F"] = rep.f.counts;
  j["monomials"] = monomial_strings(rep.multicomplex);
  j["compressed"] = to_json(rep.compressed);
  j["flags"] = {{"gluing_valid", rep.gluing_valid},
                {"pure", rep.pure},
                {"f_equals_h", rep.f_equals_h}};
  if (rep.capacity) {
    const CapacityRecord& cap = *rep.capacity;
    j["capacity"] = {{"faces", cap.face_capacity},
                     {"monomials", cap.monomial_capacity},
                     {"formula", cap.formula},
                     {"eta_F", cap.eta_f},
                     {"p", cap.profile.p},
                     {"q", cap.profile.q},
                     {"a1", cap.profile.a1},
                     {"b1", cap.profile.b1},
                     {"a2", cap.profile.a2},
                     {"b2", cap.profile.b2}};
  }
  if (!rep.failure.empty()) j["failure"] = rep.failure;
  return j;
}

inline std::string witness_report_text(const WitnessReport& rep) {
  std::ostringstream out;
  out << "base: " << base_name(rep.input.base) << "\n";
  out << "eta: " << rep.counts.str() << "\n";
  out << "h = " << rep.h.str() << "\n";
  for (const std::string& r : rep.route) out << "route: " << r << "\n";
  if (!rep.failure.empty()) {
    out << "FAILED: " << rep.failure << "\n";
    return out.str();
  }
  out << "F(M) = " << rep.f.str() << "\n";
  out << "monomials (" << rep.multicomplex.size() << "):";
  for (const std::string& s : monomial_strings(rep.multicomplex)) out << ' ' << s;
  out << "\n";
  out << "flags: gluing_valid=" << (rep.gluing_valid ? "yes" : "no")
      << " pure=" << (rep.pure ? "yes" : "no")
      << " f_equals_h=" << (rep.f_equals_h ? "yes" : "no") << "\n";
  return out.str();
}

}  // namespace psear
