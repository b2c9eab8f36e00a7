// khdet: Khovanov homology over GF(2) from planar diagram codes, with the
// derived Jones polynomial, knot determinant, unknot-detection certificates,
// and twisted satellite construction.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "khdet/complex.hpp"
#include "khdet/corpus.hpp"
#include "khdet/gen.hpp"
#include "khdet/invariants.hpp"
#include "khdet/satellite.hpp"
#include "khdet/scan.hpp"
#include "khdet/util.hpp"

namespace {

constexpr int kExitData = 65;      // parse or validation failure
constexpr int kExitSoftware = 70;  // internal invariant failure

struct PathFlags {
  bool naive = false;
  bool fast = false;
  int threads = 0;

  bool use_naive() const { return naive && !fast; }
};

void add_path_flags(CLI::App* cmd, PathFlags& f) {
  cmd->add_flag("--naive", f.naive, "use the full resolution cube");
  cmd->add_flag("--fast", f.fast, "use the scanning path (default)");
  cmd->add_option("--threads", f.threads, "worker threads (default: all cores)");
}

khdet::RankTable compute(const khdet::Diagram& d, bool reduced, const PathFlags& f) {
  if (f.use_naive()) return khdet::homology_naive(d, reduced, f.threads);
  return khdet::homology_fast(d, reduced);
}

void print_table(const khdet::RankTable& t, bool json) {
  if (json) {
    std::cout << khdet::to_json(t) << "\n";
    return;
  }
  std::cout << (t.reduced ? "reduced" : "unreduced") << " Khovanov homology over GF(2)\n";
  std::cout << "   i    j  dim\n";
  for (const auto& [ij, dim] : t.entries)
    std::cout << std::setw(4) << ij.i << " " << std::setw(4) << ij.j << "  " << dim << "\n";
  std::cout << "total " << t.total << "\n";
}

int run_sweep(const std::vector<khdet::CorpusEntry>& entries, const PathFlags& f) {
  struct Row {
    std::string name;
    std::size_t crossings = 0;
    long long rank = 0, det = 0, slack = 0;
    long long ms = 0;
    std::string mismatch;
  };
  std::vector<Row> rows(entries.size());
  int threads = f.threads > 0 ? f.threads : khdet::default_thread_count();
  khdet::parallel_for(entries.size(), threads, [&](std::size_t i) {
    const khdet::CorpusEntry& e = entries[i];
    Row& r = rows[i];
    r.name = e.name;
    const auto t0 = std::chrono::steady_clock::now();
    khdet::Diagram d = khdet::parse_pd(e.pd);
    r.crossings = d.crossing_count();
    khdet::RankTable t =
        f.use_naive() ? khdet::homology_naive(d, true, 1) : khdet::homology_fast(d, true);
    r.rank = t.total;
    r.det = khdet::determinant(t);
    r.slack = r.rank - r.det;
    r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
               .count();
    if (e.expected_rank && *e.expected_rank != r.rank)
      r.mismatch += "rank expected " + std::to_string(*e.expected_rank) + " got " +
                    std::to_string(r.rank) + "; ";
    if (e.expected_det && *e.expected_det != r.det)
      r.mismatch += "det expected " + std::to_string(*e.expected_det) + " got " +
                    std::to_string(r.det) + "; ";
  });

  std::cout << "name,crossings,rank,det,slack,ms\n";
  bool ok = true;
  for (const Row& r : rows) {
    std::cout << r.name << "," << r.crossings << "," << r.rank << "," << r.det << ","
              << r.slack << "," << r.ms << "\n";
    if (!r.mismatch.empty()) {
      std::cerr << "mismatch: " << r.name << ": " << r.mismatch << "\n";
      ok = false;
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov homology engine over GF(2)"};
  app.require_subcommand(1);

  std::string input;
  bool unreduced = false, json = false;
  PathFlags flags;

  auto* kh = app.add_subcommand("kh", "rank table of a diagram or corpus entry");
  kh->add_option("input", input, "PD code or corpus name")->required();
  kh->add_flag("--unreduced", unreduced, "unreduced homology");
  kh->add_flag("--reduced", [](std::int64_t) {}, "reduced homology (default)");
  kh->add_flag("--json", json, "machine-readable output");
  add_path_flags(kh, flags);

  auto* jones_cmd =
      app.add_subcommand("jones", "Jones polynomial via the graded Euler characteristic");
  jones_cmd->add_option("input", input)->required();
  jones_cmd->add_flag("--json", json);
  add_path_flags(jones_cmd, flags);

  auto* det_cmd = app.add_subcommand("det", "knot determinant from the reduced table");
  det_cmd->add_option("input", input)->required();
  det_cmd->add_flag("--json", json);
  add_path_flags(det_cmd, flags);

  bool assert_tu1 = false;
  auto* detect = app.add_subcommand("detect", "unknot detection certificate");
  detect->add_option("input", input)->required();
  detect->add_flag("--assert-tu1", assert_tu1,
                   "assert the input has tangle unknotting number one");
  add_path_flags(detect, flags);

  int half_twists = 0;
  std::string emit = "pd";
  auto* sat = app.add_subcommand("satellite", "twisted satellite of a companion diagram");
  sat->add_option("input", input, "companion PD code or corpus name")->required();
  sat->add_option("--n", half_twists, "number of half twists in the closure")->required();
  sat->add_option("--emit", emit, "pd | kh")->check(CLI::IsMember({"pd", "kh"}));
  sat->add_flag("--json", json);
  add_path_flags(sat, flags);

  std::string corpus_path;
  auto* sweep = app.add_subcommand("sweep", "CSV report over a corpus");
  sweep->add_option("corpus", corpus_path, "corpus file (default: builtin corpus)");
  add_path_flags(sweep, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (kh->parsed()) {
      print_table(compute(khdet::resolve_input(input), !unreduced, flags), json);
      return 0;
    }
    if (jones_cmd->parsed()) {
      khdet::LaurentPoly p = khdet::jones(compute(khdet::resolve_input(input), true, flags));
      if (json) {
        std::cout << "{\"jones\": [";
        bool first = true;
        for (const auto& [e, c] : p.coeffs) {
          if (!first) std::cout << ", ";
          first = false;
          std::cout << "[" << e << ", " << c << "]";
        }
        std::cout << "]}\n";
      } else {
        std::cout << khdet::to_string(p) << "\n";
      }
      return 0;
    }
    if (det_cmd->parsed()) {
      long long det = khdet::determinant(compute(khdet::resolve_input(input), true, flags));
      if (json)
        std::cout << "{\"det\": " << det << "}\n";
      else
        std::cout << det << "\n";
      return 0;
    }
    if (detect->parsed()) {
      khdet::RankTable t = compute(khdet::resolve_input(input), true, flags);
      khdet::Certificate c = khdet::certify(t, input, assert_tu1);
      std::cout << khdet::to_json(c) << "\n";
      switch (c.verdict) {
        case khdet::Verdict::Unknot: return 0;
        case khdet::Verdict::Knotted: return 1;
        default: return 2;
      }
    }
    if (sat->parsed()) {
      khdet::Diagram s = khdet::build_satellite(khdet::resolve_input(input), {half_twists});
      if (emit == "pd")
        std::cout << khdet::serialize(s) << "\n";
      else
        print_table(compute(s, true, flags), json);
      return 0;
    }
    if (sweep->parsed()) {
      if (corpus_path.empty()) return run_sweep(khdet::builtin_corpus(), flags);
      std::ifstream in(corpus_path);
      if (!in) {
        std::cerr << "cannot open corpus file: " << corpus_path << "\n";
        return kExitData;
      }
      return run_sweep(khdet::parse_corpus_file(in), flags);
    }
  } catch (const khdet::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitData;
  } catch (const khdet::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSoftware;
  }
  return 0;
}
