// Command-line front end: analyze / spectrum / tile on a set literal, exhaustive or
// sampled Fuglede verification, and the lemma suites.
//
// Exit codes: 0 clean, 1 discrepancy or lemma failure, 2 usage or infeasible request.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "fuglede/cube.hpp"
#include "fuglede/errors.hpp"
#include "fuglede/lemma_suite.hpp"
#include "fuglede/polynomial.hpp"
#include "fuglede/report_json.hpp"
#include "fuglede/set_literal.hpp"
#include "fuglede/spectra.hpp"
#include "fuglede/tilings.hpp"
#include "fuglede/verifier.hpp"

namespace {

using namespace fuglede;

constexpr int kExitClean = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// analyze tabulates cube rules for squarefree N up to this size, and checks every
// cube when there are at most kAnalyzeExhaustiveCubes of them.
constexpr std::uint64_t kAnalyzeCubeBound = 10000;
constexpr std::uint64_t kAnalyzeExhaustiveCubes = 200000;

struct Flags {
  unsigned workers = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string mode = "exhaustive";
  std::optional<unsigned> max_cardinality;
  std::string out;
  std::uint64_t samples = 0;
  std::uint64_t cubes = 1000;
  bool allow_large = false;
  bool exact_cover = false;
};

// Everything that determines a report's content. Worker count and output path are
// left out: they must not change the bytes of the report.
Json invocation(const std::string& command, const std::string& argument, const Flags& f) {
  std::string line = "fuglede " + command + " '" + argument + "'";
  Json j;
  j["command"] = command;
  j["argument"] = argument;
  if (command == "verify" || command == "suite" || command == "analyze") {
    j["seed"] = f.seed;
    line += " --seed " + std::to_string(f.seed);
  }
  if (command == "verify") {
    j["mode"] = f.mode;
    line += " --mode " + f.mode;
    if (f.exact_cover) line += " --exact-cover";
    j["exact_cover"] = f.exact_cover;
  }
  if (command == "verify" || command == "suite") {
    if (f.samples) line += " --samples " + std::to_string(f.samples);
    j["samples"] = f.samples ? Json(f.samples) : Json(nullptr);
    if (f.max_cardinality) line += " --max-cardinality " + std::to_string(*f.max_cardinality);
    j["max_cardinality"] = f.max_cardinality ? Json(*f.max_cardinality) : Json(nullptr);
    if (f.allow_large) line += " --allow-large";
    j["allow_large"] = f.allow_large;
  }
  if (command == "suite" || command == "analyze") {
    line += " --cubes " + std::to_string(f.cubes);
    j["cubes"] = f.cubes;
  }
  j["command_line"] = line;
  return j;
}

void emit(const Json& doc, const Flags& f) {
  const std::string text = doc.dump(2) + "\n";
  if (f.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw ArgumentError("cannot write " + f.out);
  file << text;
  if (!file) throw ArgumentError("failed writing " + f.out);
}

std::string brace(std::span<const std::uint64_t> xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "}";
}

Json cube_rule_json(const IndicatorMultiset& s, const Flags& f) {
  const CyclicGroup& g = s.group();
  const auto primes = g.primes();
  Json j;
  j["phi_n_divides"] = divides_cyclotomic(mask_of(s), g.modulus());
  Json rows = Json::array();
  const std::size_t k = primes.size();
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << k); ++subset) {
    std::vector<std::size_t> dims;
    std::vector<std::uint64_t> labels;
    for (std::size_t i = 0; i < k; ++i) {
      if (subset >> i & 1) {
        dims.push_back(i);
        labels.push_back(primes[i]);
      }
    }
    CubeCheckOptions co;
    co.mode = cube_count(g, dims, false) <= kAnalyzeExhaustiveCubes ? CubeCheckMode::exhaustive
                                                                     : CubeCheckMode::sampled;
    co.samples = f.cubes;
    co.seed = f.seed;
    const auto r = check_cube_rule(s, dims, std::nullopt, co);
    rows.push_back({{"primes", labels},
                    {"mode", to_string(r.mode)},
                    {"cubes_checked", r.cubes_checked},
                    {"passed", r.passed},
                    {"counterexample", r.counterexample ? Json(r.counterexample->describe()) : Json(nullptr)}});
  }
  j["dimension_subsets"] = std::move(rows);
  return j;
}

int run_analyze(const std::string& literal, const Flags& f) {
  const auto s = parse_set_literal(literal);
  const CyclicGroup& g = s.group();
  Json doc = report_header(invocation("analyze", literal, f));
  doc["set"] = format_set_literal(s);
  doc["modulus"] = g.modulus();
  doc["cardinality"] = s.cardinality();
  doc["is_set"] = s.is_set();
  if (g.squarefree()) {
    Json coords = Json::array();
    for (auto x : s.support()) coords.push_back({{"element", x}, {"coords", crt_coords(g, x).coords}});
    doc["crt"] = {{"primes", g.primes()}, {"elements", std::move(coords)}};
  } else {
    doc["crt"] = nullptr;
  }
  const auto zeros = zero_divisors(s);
  doc["zero_divisors"] = zeros.divisors;
  doc["zero_set"] = zeros.elements;
  const bool generating = is_generating(s);
  const bool primitive = is_primitive(s);
  doc["generating"] = generating;
  doc["primitive"] = primitive;
  const bool cubes = g.squarefree() && g.modulus() > 1 && g.modulus() <= kAnalyzeCubeBound;
  doc["cube_rule"] = cubes ? cube_rule_json(s, f) : Json(nullptr);
  emit(doc, f);

  std::cerr << format_set_literal(s) << ": |S| = " << s.cardinality() << ", zero divisors "
            << brace(zeros.divisors) << ", generating " << (generating ? "yes" : "no") << ", primitive "
            << (primitive ? "yes" : "no") << "\n";
  return kExitClean;
}

int run_spectrum(const std::string& literal, const Flags& f) {
  const auto s = parse_set_literal(literal);
  const auto lambda = find_spectrum(s);
  Json doc = report_header(invocation("spectrum", literal, f));
  doc["set"] = format_set_literal(s);
  doc["spectrum"] = lambda ? Json(format_set_literal(*lambda)) : Json(nullptr);
  emit(doc, f);
  std::cerr << "spectrum: " << (lambda ? format_set_literal(*lambda) : "none") << "\n";
  return kExitClean;
}

int run_tile(const std::string& literal, const Flags& f) {
  const auto s = parse_set_literal(literal);
  if (!s.is_set()) throw ArgumentError("tile needs a set, not a multiset");
  // Complements are translation invariant; the search wants 0 in S.
  const auto support = s.support();
  const auto shifted = affine_image(s, s.group().neg(support.front()), 1);
  const auto complement = find_complement(shifted);
  Json doc = report_header(invocation("tile", literal, f));
  doc["set"] = format_set_literal(s);
  doc["complement"] = complement ? Json(format_set_literal(*complement)) : Json(nullptr);
  emit(doc, f);
  std::cerr << "complement: " << (complement ? format_set_literal(*complement) : "none") << "\n";
  return kExitClean;
}

int run_verify(std::uint64_t n, const Flags& f) {
  VerifyOptions o;
  o.max_cardinality = f.max_cardinality;
  o.mode = f.mode == "sampled" ? VerifyMode::sampled : VerifyMode::exhaustive;
  o.workers = f.workers;
  o.seed = f.seed;
  if (f.samples) o.samples = f.samples;
  o.allow_large = f.allow_large;
  o.force_exact_cover = f.exact_cover;
  const auto report = verify_fuglede(n, o);
  emit(verification_json(report, invocation("verify", std::to_string(n), f)), f);

  std::cerr << "verify Z_" << n << " (" << to_string(o.mode) << "): " << report.orbit_count << " orbits, "
            << report.spectral_count << " spectral, " << report.tile_count << " tile, "
            << report.discrepancies.size() << " discrepancies; " << report.checks.spectral_pairs
            << " spectral pairs checked; " << report.elapsed_seconds << " s\n";
  if (!report.clean()) std::cerr << "NOT CLEAN: see discrepancies and spectral_pair_checks in the report\n";
  return report.clean() ? kExitClean : kExitFailure;
}

int run_suite(const std::string& id, const std::string& shape_text, const Flags& f) {
  LemmaOptions o;
  o.seed = f.seed;
  o.samples = f.samples;
  o.workers = f.workers;
  o.max_cardinality = f.max_cardinality;
  o.cubes_per_instance = f.cubes;
  o.allow_large = f.allow_large;
  const auto report = lemma_suite(id, LemmaShape::parse(shape_text), o);
  emit(lemma_json(report, invocation("suite", id + " " + shape_text, f)), f);

  std::cerr << "suite " << id << " on " << report.shape << " (" << report.mode << "): " << report.instances_checked
            << " instances, " << report.premise_hits << " premise hits, " << report.conclusion_failures
            << " failures\n";
  for (const auto& c : report.counterexamples) std::cerr << "  counterexample " << c.set_literal << ": " << c.detail << "\n";
  return report.passed() ? kExitClean : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact spectral-set and tiling checks on cyclic groups Z_N"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--workers", f.workers, "Worker threads (does not change results)")->check(CLI::PositiveNumber);
  app.add_option("--seed", f.seed, "Seed for every randomized generator")->capture_default_str();
  app.add_option("--mode", f.mode, "verify: enumerate all orbits or a seeded sample")
      ->check(CLI::IsMember({"exhaustive", "sampled"}))
      ->capture_default_str();
  app.add_option("--max-cardinality", f.max_cardinality, "Skip sets larger than this");
  app.add_option("--out", f.out, "Write the JSON report here instead of stdout");
  app.add_option("--samples", f.samples, "Random instances (verify --mode sampled, suite generators)");
  app.add_option("--cubes", f.cubes, "Sampled cubes per multiset when not all cubes are checked")
      ->capture_default_str();
  app.add_flag("--allow-large", f.allow_large, "Lift the N <= 32 guard on exhaustive orbit scans");
  app.add_flag("--exact-cover", f.exact_cover, "verify: always decide tiling by exact cover search");

  std::string literal;
  auto* analyze = app.add_subcommand("analyze", "Zero set, CRT view and cube rules of a set literal");
  analyze->add_option("set", literal, "N=<int>;S=<int>(,<int>)*")->required();
  auto* spectrum = app.add_subcommand("spectrum", "Lexicographically least spectrum, or none");
  spectrum->add_option("set", literal, "N=<int>;S=<int>(,<int>)*")->required();
  auto* tile = app.add_subcommand("tile", "Lexicographically least tiling complement, or none");
  tile->add_option("set", literal, "N=<int>;S=<int>(,<int>)*")->required();

  std::uint64_t n = 0;
  auto* verify = app.add_subcommand("verify", "Check spectral <=> tile over all subset orbits of Z_N");
  verify->add_option("N", n, "Group order")->required()->check(CLI::PositiveNumber);

  std::string lemma_id;
  std::string shape;
  std::string ids;
  for (const auto& id : lemma_ids()) ids += (ids.empty() ? "" : ", ") + id;
  auto* suite = app.add_subcommand("suite", "Check one lemma on generated instances");
  suite->add_option("lemma_id", lemma_id, ids)->required();
  suite->add_option("shape", shape, "N, or comma-separated primes fixing the role order")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitClean : kExitUsage;
  }

  try {
    if (analyze->parsed()) return run_analyze(literal, f);
    if (spectrum->parsed()) return run_spectrum(literal, f);
    if (tile->parsed()) return run_tile(literal, f);
    if (verify->parsed()) return run_verify(n, f);
    if (suite->parsed()) return run_suite(lemma_id, shape, f);
  } catch (const ParseError& e) {
    std::cerr << "error: bad set literal: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: infeasible request: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InternalConsistencyError& e) {
    std::cerr << "error: internal consistency check failed: " << e.what() << "\n";
    return kExitFailure;
  } catch (const TheoremViolationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
