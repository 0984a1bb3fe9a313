#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuglede/group.hpp"
#include "fuglede/verifier.hpp"

namespace fuglede {

/// Group shape for a lemma run: a modulus and, optionally, an ordered list of its
/// primes assigning lemma roles (p, q, ... in the order given).
struct LemmaShape {
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> roles;

  /// Accepts "30" or "2,3,5" (the latter fixes the role order).
  static LemmaShape parse(const std::string& text);
  std::string describe() const;
};

struct LemmaOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Generated instances for constructive/randomized parts; 0 picks the lemma default.
  std::uint64_t samples = 0;
  unsigned workers = 1;
  std::optional<unsigned> max_cardinality;
  std::uint64_t cubes_per_instance = 1000;
  bool allow_large = false;
};

struct LemmaCounterexample {
  std::string set_literal;
  std::string detail;
  bool operator==(const LemmaCounterexample&) const = default;
};

struct LemmaReport {
  std::string lemma_id;
  std::string shape;
  std::uint64_t instances_checked = 0;
  std::uint64_t premise_hits = 0;
  std::uint64_t conclusion_failures = 0;
  std::string generator;
  std::uint64_t seed = 0;
  std::string mode;
  /// Named sub-tallies, in insertion order.
  std::vector<std::pair<std::string, std::uint64_t>> tallies;
  std::vector<std::string> notes;
  /// First failures only (capped).
  std::vector<LemmaCounterexample> counterexamples;

  bool passed() const { return conclusion_failures == 0; }
};

/// Identifiers accepted by lemma_suite, in documentation order.
const std::vector<std::string>& lemma_ids();

/// Generates instances for one lemma, checks the premise, and on every premise
/// hit checks the conclusion. Throws ArgumentError for an unknown id or a group
/// shape the lemma does not apply to.
LemmaReport lemma_suite(const std::string& lemma_id, const LemmaShape& shape, const LemmaOptions& options = {});

/// Outcome of the incomplete-triangle trichotomy on Z_{p1 p2 p3 p4}.
struct TriangleResult {
  enum class Branch { case_i, case_ii, case_iii_required, premise_not_met };
  Branch branch = Branch::premise_not_met;
  bool premise = false;
  /// Phi_{p1} | m_S over Z.
  bool case_i = false;
  /// Phi_{p2} Phi_{p3} Phi_{p2 p3} | m_S over Z.
  bool case_ii = false;
  /// m_S(xi_{p1}) m_S(xi_{p4}) m_S(xi_{p1 p4}) != 0.
  bool strengthened_hypothesis = false;
  bool p1_divides_cardinality = false;
  /// Supplied spectra checked against Phi_{p4} | m_Lambda in branch (iii).
  std::size_t spectra_checked = 0;
  std::size_t spectra_violating = 0;
};

std::string to_string(TriangleResult::Branch branch);

/// Decides which branch of the trichotomy is certified, with priority (i), (ii), (iii).
/// `roles` is (p1, p2, p3, p4); N must be their product. Every certified
/// divisibility is computed exactly.
TriangleResult triangle_trichotomy(const IndicatorMultiset& s, const std::array<std::uint64_t, 4>& roles,
                                   std::span<const IndicatorMultiset> spectra = {});

/// All subsets of Z_N (bitmasks, N <= 40) whose mask is divisible by Phi_e for every
/// e in `required`, ascending. Meet-in-the-middle over the exact residue maps.
std::vector<std::uint64_t> subsets_with_cyclotomic_factors(const CyclicGroup& g,
                                                           std::span<const std::uint64_t> required);

}  // namespace fuglede
