// Command-line front end: validate instances, compute f/h-vectors, produce
// and verify pure O-sequence witnesses, run the exhaustive oracle, and
// generate random instances.
//
// Exit codes: 0 success, 1 refutation / invalid instance, 2 oracle budget
// exhausted, 64 malformed input file, 70 internal invariant failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "psear/psear.hpp"

namespace {

constexpr int kExitRefuted = 1;
constexpr int kExitBudget = 2;
constexpr int kExitParse = 64;
constexpr int kExitInternal = 70;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) psear::fail(psear::ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
  if (path) {
    std::ofstream out(*path);
    if (!out) psear::fail(psear::ErrorKind::ParseError, "cannot write " + *path);
    out << text;
  } else {
    std::cout << text;
  }
}

psear::EarDecomposition load_instance(const std::string& path) {
  return psear::parse_decomposition(read_file(path));
}

std::vector<std::int64_t> parse_csv_ints(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      psear::fail(psear::ErrorKind::ParseError, "bad integer list \"" + s + "\"");
    }
  }
  if (out.empty()) psear::fail(psear::ErrorKind::ParseError, "empty integer list");
  return out;
}

int map_error(const psear::Error& e) {
  if (e.kind() == psear::ErrorKind::ParseError) return kExitParse;
  if (e.internal()) return kExitInternal;
  return kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PS ear decompositions, h-vectors, and pure O-sequence witnesses"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit structured JSON instead of text");

  std::string file;
  std::optional<std::string> out_path;

  auto* verify = app.add_subcommand("verify", "validate the gluing conditions of an instance");
  verify->add_option("file", file, "instance file")->required();
  bool dump_graph = false;
  verify->add_flag("--dump-graph", dump_graph, "also dump the labeled 1-skeleton");

  auto* hvec = app.add_subcommand("hvec", "print the f- and h-vectors of an instance");
  hvec->add_option("file", file, "instance file")->required();

  auto* compress_cmd = app.add_subcommand("compress", "emit the compressed decomposition");
  compress_cmd->add_option("file", file, "instance file")->required();
  std::string compress_out;
  compress_cmd->add_option("--out", compress_out, "output path (default stdout)");

  auto* witness = app.add_subcommand("witness", "produce and verify a pure multicomplex witness");
  witness->add_option("file", file, "instance file")->required();
  std::string witness_out;
  witness->add_option("--out", witness_out, "also write the JSON report here");

  auto* oseq = app.add_subcommand("check-oseq", "decide whether F0,F1,... is a pure O-sequence");
  std::string fvec_arg;
  oseq->add_option("fvector", fvec_arg, "comma-separated counts, e.g. 1,3,5,3")->required();
  std::uint64_t budget = psear::OracleOptions{}.budget;
  int max_vars = psear::OracleOptions{}.max_vars;
  int max_tops = psear::OracleOptions{}.max_tops;
  oseq->add_option("--budget", budget, "search-node budget");
  oseq->add_option("--max-vars", max_vars, "cap on F_1");
  oseq->add_option("--max-tops", max_tops, "cap on F_3");

  auto* gen = app.add_subcommand("gen", "generate a random valid instance");
  std::string base_arg = "tetrahedron";
  std::string eta_arg = "0,0,0,0";
  std::uint64_t seed = 0;
  std::string gen_out;
  gen->add_option("--base", base_arg, "tetrahedron | bipyramid | octahedron | any")->required();
  gen->add_option("--eta", eta_arg, "per-type ear budgets a,b,e,f")->required();
  gen->add_option("--seed", seed, "RNG seed")->required();
  gen->add_option("--out", gen_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      psear::EarDecomposition dec = load_instance(file);
      std::string graph_dump;
      if (dump_graph) {
        graph_dump = psear::dump(psear::labeled_graph_raw(dec));
      }
      try {
        psear::SimplicialComplex c = psear::realize(dec);
        if (json) {
          psear::ordered_json j;
          j["valid"] = true;
          j["base"] = psear::base_name(dec.base);
          j["ears"] = dec.ears.size();
          j["f"] = psear::f_vector(c).entries;
          j["h"] = psear::h_vector(c).entries;
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "valid: base=" << psear::base_name(dec.base)
                    << " ears=" << dec.ears.size()
                    << " f=" << psear::f_vector(c).str()
                    << " h=" << psear::h_vector(c).str() << "\n";
          if (dump_graph) std::cout << graph_dump;
        }
        return 0;
      } catch (const psear::Error& e) {
        if (e.kind() != psear::ErrorKind::GluingViolation) throw;
        if (json) {
          psear::ordered_json j;
          j["valid"] = false;
          j["error"] = e.what();
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "invalid: " << e.what() << "\n";
        }
        return kExitRefuted;
      }
    }

    if (*hvec) {
      psear::EarDecomposition dec = load_instance(file);
      psear::SimplicialComplex c = psear::realize(dec);
      psear::FVector f = psear::f_vector(c);
      psear::HVector h = psear::h_vector(f);
      if (json) {
        psear::ordered_json j;
        j["f"] = f.entries;
        j["h"] = h.entries;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "f = " << f.str() << "\n" << "h = " << h.str() << "\n";
      }
      return 0;
    }

    if (*compress_cmd) {
      psear::EarDecomposition dec = load_instance(file);
      psear::WitnessReport rep = psear::pure_witness(dec);
      if (!rep.failure.empty()) {
        std::cerr << "internal failure: " << rep.failure << "\n";
        for (const auto& r : rep.route) std::cerr << "route: " << r << "\n";
        return kExitInternal;
      }
      write_output(compress_cmd->count("--out") ? std::optional(compress_out) : std::nullopt,
                   psear::serialize(rep.compressed));
      return 0;
    }

    if (*witness) {
      psear::EarDecomposition dec = load_instance(file);
      psear::WitnessReport rep = psear::pure_witness(dec);
      if (witness->count("--out")) {
        write_output(witness_out, psear::to_json(rep).dump(2) + "\n");
      }
      if (json) {
        std::cout << psear::to_json(rep).dump(2) << "\n";
      } else {
        std::cout << psear::witness_report_text(rep);
      }
      if (!rep.failure.empty()) {
        for (const auto& r : rep.route) std::cerr << "route: " << r << "\n";
        std::cerr << "internal failure: " << rep.failure << "\n";
        return kExitInternal;
      }
      return rep.ok() ? 0 : kExitInternal;
    }

    if (*oseq) {
      psear::FVec f{parse_csv_ints(fvec_arg)};
      psear::OracleOptions opts;
      opts.budget = budget;
      opts.max_vars = max_vars;
      opts.max_tops = max_tops;
      psear::OracleResult res = psear::pure_oseq_oracle(f, opts);
      if (json) {
        psear::ordered_json j;
        j["F"] = f.counts;
        j["status"] = res.status == psear::OracleStatus::Witness     ? "witness"
                      : res.status == psear::OracleStatus::Refuted   ? "refuted"
                                                                     : "budget-exhausted";
        if (res.witness) j["monomials"] = psear::monomial_strings(*res.witness);
        if (!res.note.empty()) j["note"] = res.note;
        std::cout << j.dump(2) << "\n";
      } else {
        if (res.status == psear::OracleStatus::Witness) {
          auto names = psear::monomial_strings(*res.witness);
          std::cout << "pure O-sequence: witness with " << names.size() << " monomials\n";
          for (const auto& s : names) std::cout << s << "\n";
        } else if (res.status == psear::OracleStatus::Refuted) {
          std::cout << "not a pure O-sequence";
          if (!res.note.empty()) std::cout << " (" << res.note << ")";
          std::cout << "\n";
        } else {
          std::cout << "budget exhausted";
          if (!res.note.empty()) std::cout << " (" << res.note << ")";
          std::cout << "\n";
        }
      }
      switch (res.status) {
        case psear::OracleStatus::Witness: return 0;
        case psear::OracleStatus::Refuted: return kExitRefuted;
        case psear::OracleStatus::BudgetExhausted: return kExitBudget;
      }
    }

    if (*gen) {
      psear::GenSpec spec;
      if (base_arg == "tetrahedron") {
        spec.base = psear::BaseKind::Tetrahedron;
      } else if (base_arg == "bipyramid") {
        spec.base = psear::BaseKind::Bipyramid;
      } else if (base_arg == "octahedron") {
        spec.base = psear::BaseKind::Octahedron;
      } else if (base_arg != "any") {
        psear::fail(psear::ErrorKind::ParseError, "unknown base \"" + base_arg + "\"");
      }
      auto eta = parse_csv_ints(eta_arg);
      if (eta.size() != 4) {
        psear::fail(psear::ErrorKind::ParseError, "--eta needs four counts a,b,e,f");
      }
      spec.eta = psear::EarCounts{static_cast<int>(eta[0]), static_cast<int>(eta[1]),
                                  static_cast<int>(eta[2]), static_cast<int>(eta[3])};
      spec.seed = seed;
      psear::EarDecomposition dec = psear::gen_decomposition(spec);
      write_output(gen->count("--out") ? std::optional(gen_out) : std::nullopt,
                   psear::serialize(dec));
      return 0;
    }
  } catch (const psear::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return map_error(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
