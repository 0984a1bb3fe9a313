#include "doctest.h"

#include "fuglede/errors.hpp"
#include "fuglede/lemma_suite.hpp"
#include "fuglede/polynomial.hpp"
#include "fuglede/spectra.hpp"

using namespace fuglede;

namespace {

constexpr std::array<std::uint64_t, 4> kRoles = {2, 3, 5, 7};

}  // namespace

TEST_CASE("group shapes") {
  const auto a = LemmaShape::parse("30");
  CHECK(a.modulus == 30);
  CHECK(a.roles.empty());
  const auto b = LemmaShape::parse("5,2,3");
  CHECK(b.modulus == 30);
  CHECK(b.roles == std::vector<std::uint64_t>{5, 2, 3});
  CHECK(b.describe() == "5,2,3");
  CHECK(a.describe() == "30");
  for (const char* bad : {"", "x", "2,2", "4,3", "2,,3", "0", "-3"}) {
    CHECK_THROWS_AS(LemmaShape::parse(bad), ArgumentError);
  }
}

TEST_CASE("lemma registry") {
  const auto& ids = lemma_ids();
  CHECK(ids.front() == "duality");
  for (const char* id : {"cube", "lam_leung", "slice_div", "incomplete_triangle", "small_spectral", "manyprimes"}) {
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
  }
  CHECK_THROWS_AS(lemma_suite("no_such_lemma", LemmaShape::parse("30")), ArgumentError);
  CHECK_THROWS_AS(lemma_suite("lam_leung", LemmaShape::parse("30")), ArgumentError);
  CHECK_THROWS_AS(lemma_suite("cube", LemmaShape::parse("12")), ArgumentError);
  CHECK_THROWS_AS(lemma_suite("incomplete_triangle", LemmaShape::parse("30")), ArgumentError);
}

TEST_CASE("small suites run clean") {
  LemmaOptions o;
  o.samples = 200;
  for (const auto& [id, shape] : std::vector<std::pair<std::string, std::string>>{
           {"lam_leung", "3,5"}, {"small_spectral", "12"}, {"slice_div", "30"}, {"cube", "30"},
           {"mod_p_divisibility", "30"}, {"l1_structure", "210"}}) {
    CAPTURE(id);
    const auto r = lemma_suite(id, LemmaShape::parse(shape), o);
    CHECK(r.passed());
    CHECK(r.lemma_id == id);
    CHECK(r.instances_checked > 0);
    CHECK(r.premise_hits > 0);
    CHECK(r.seed == kDefaultSeed);
    CHECK_FALSE(r.generator.empty());
  }
}

TEST_CASE("suites are deterministic in the seed") {
  LemmaOptions o;
  o.samples = 300;
  const auto a = lemma_suite("primitive_diff", LemmaShape::parse("210"), o);
  const auto b = lemma_suite("primitive_diff", LemmaShape::parse("210"), o);
  CHECK(a.instances_checked == b.instances_checked);
  CHECK(a.premise_hits == b.premise_hits);
  CHECK(a.tallies == b.tallies);
  o.workers = 3;
  const auto c = lemma_suite("primitive_diff", LemmaShape::parse("210"), o);
  CHECK(c.tallies == a.tallies);
}

TEST_CASE("incomplete triangle branches") {
  const CyclicGroup g(210);
  IndicatorMultiset coset(g);
  for (Element x = 0; x < 210; x += 14) coset.add(x);
  const auto ii = triangle_trichotomy(coset, kRoles);
  CHECK(ii.branch == TriangleResult::Branch::case_ii);
  CHECK(ii.premise);
  CHECK_FALSE(ii.case_i);

  const auto none = triangle_trichotomy(IndicatorMultiset::from_elements(g, {0}), kRoles);
  CHECK(none.branch == TriangleResult::Branch::premise_not_met);
  CHECK_FALSE(none.premise);

  const auto full = triangle_trichotomy(IndicatorMultiset::full(g), kRoles);
  CHECK(full.branch == TriangleResult::Branch::case_i);
  CHECK(full.case_i);
  CHECK(full.case_ii);

  CHECK(to_string(TriangleResult::Branch::case_iii_required) == "case_iii_required");
  CHECK_THROWS_AS(triangle_trichotomy(coset, {2, 3, 5, 11}), ArgumentError);
  // Supplied spectra must be spectra.
  const std::vector<IndicatorMultiset> wrong = {IndicatorMultiset::from_elements(g, {0, 2})};
  CHECK_THROWS_AS(triangle_trichotomy(IndicatorMultiset::from_elements(g, {0, 105}), kRoles, wrong), ArgumentError);
}

TEST_CASE("meet-in-the-middle enumeration matches brute force") {
  for (std::uint64_t n : {6, 10, 12, 15}) {
    const CyclicGroup g(n);
    for (std::uint64_t e : g.divisors()) {
      if (e == 1) continue;
      const std::vector<std::uint64_t> req = {e};
      const auto got = subsets_with_cyclotomic_factors(g, req);
      std::vector<std::uint64_t> want;
      for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
        if (divides_cyclotomic(mask_of(IndicatorMultiset::from_mask(g, m)), e)) want.push_back(m);
      }
      CAPTURE(n);
      CAPTURE(e);
      CHECK(got == want);
    }
  }
  const CyclicGroup z15(15);
  const std::vector<std::uint64_t> all = {3, 5, 15};
  for (auto m : subsets_with_cyclotomic_factors(z15, all)) {
    CHECK(zero_divisors(IndicatorMultiset::from_mask(z15, m)).divisors.size() >= 3);
  }
}
