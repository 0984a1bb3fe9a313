// Structural invariants, checked exhaustively at small N and on seeded random inputs.

#include "doctest.h"

#include <bit>
#include <numeric>
#include <random>
#include <set>

#include "fuglede/cube.hpp"
#include "fuglede/orbits.hpp"
#include "fuglede/polynomial.hpp"
#include "fuglede/report_json.hpp"
#include "fuglede/set_literal.hpp"
#include "fuglede/spectra.hpp"
#include "fuglede/tilings.hpp"
#include "fuglede/verifier.hpp"
#include "oracles.hpp"

using namespace fuglede;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 r(20240917);
  return r;
}

IndicatorMultiset random_multiset(const CyclicGroup& g, std::uint64_t max_mult) {
  std::vector<std::uint64_t> m(g.modulus());
  for (auto& v : m) v = rng()() % (max_mult + 1);
  return IndicatorMultiset(g, m);
}

/// Non-negative combination of translated subgroup masks for proper subgroups of
/// prime order; every such mask is divisible by Phi_N.
IndicatorMultiset coset_combination(const CyclicGroup& g, int terms) {
  IndicatorMultiset b(g);
  const auto primes = g.primes();
  for (int t = 0; t < terms; ++t) {
    const std::uint64_t p = primes[rng()() % primes.size()];
    const std::uint64_t step = g.modulus() / p;
    const Element shift = rng()() % g.modulus();
    const std::uint64_t times = 1 + rng()() % 3;
    for (std::uint64_t j = 0; j < p; ++j) b.add((shift + j * step) % g.modulus(), times);
  }
  return b;
}

struct Status {
  std::vector<char> spectral;
  std::vector<char> tile;
};

/// Per-subset spectrality and tiling without any orbit reduction.
Status direct_status(std::uint64_t n) {
  const CyclicGroup g(n);
  const ZeroSetKernel k(g);
  Status st;
  const std::uint64_t total = std::uint64_t{1} << n;
  st.spectral.assign(total, 0);
  st.tile.assign(total, 0);
  for (std::uint64_t m = 1; m < total; ++m) {
    st.spectral[m] = masks::find_clique(n, k.zero_set(m), static_cast<unsigned>(std::popcount(m))).has_value();
    const std::uint64_t shifted = masks::rotate(m, n - static_cast<std::uint64_t>(std::countr_zero(m)), n);
    st.tile[m] = masks::find_complement(n, shifted).has_value();
  }
  return st;
}

}  // namespace

TEST_CASE("hamming distance is a metric") {
  const CyclicGroup g(30);
  for (Element x = 0; x < 30; ++x) {
    for (Element y = 0; y < 30; ++y) {
      CHECK((hamming(g, x, y) == 0) == (x == y));
      CHECK(hamming(g, x, y) == hamming(g, y, x));
      for (Element z = 0; z < 30; z += 7) CHECK(hamming(g, x, z) <= hamming(g, x, y) + hamming(g, y, z));
    }
  }
}

TEST_CASE("CRT coordinates are a bijection") {
  for (std::uint64_t n : {1, 2, 6, 30, 105, 210}) {
    const CyclicGroup g(n);
    std::set<std::vector<std::uint64_t>> seen;
    for (Element x = 0; x < n; ++x) {
      const auto c = crt_coords(g, x);
      CHECK(crt_element(g, c) == x);
      CHECK(oracle::from_residues(n, g.primes(), c.coords) == x);
      seen.insert(c.coords);
    }
    CHECK(seen.size() == n);
  }
}

TEST_CASE("projection preserves cardinality") {
  for (std::uint64_t n : {6, 12, 30, 36, 210}) {
    const CyclicGroup g(n);
    for (std::uint64_t m : g.divisors()) {
      if (std::gcd(m, n / m) != 1) continue;
      for (int trial = 0; trial < 10; ++trial) {
        const auto u = random_multiset(g, 3);
        const auto p = project(u, m);
        CHECK(p.cardinality() == u.cardinality());
        for (Element x : p.support()) CHECK(x % (n / m) == 0);
        CHECK(project_to_quotient(u, m).cardinality() == u.cardinality());
      }
    }
  }
}

TEST_CASE("affine maps compose") {
  const CyclicGroup g(30);
  const auto units = g.units();
  for (int trial = 0; trial < 200; ++trial) {
    const auto u = random_multiset(g, 2);
    const Element a = rng()() % 30, b = rng()() % 30;
    const Element s = units[rng()() % units.size()], t = units[rng()() % units.size()];
    const auto lhs = affine_image(affine_image(u, a, s), b, t);
    const auto rhs = affine_image(u, g.add(g.mul(t, a), b), g.mul(t, s));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("difference multisets") {
  const CyclicGroup g(24);
  for (int trial = 0; trial < 100; ++trial) {
    const auto u = random_multiset(g, 3);
    const auto d = difference_multiset(u);
    CHECK(d.cardinality() == u.cardinality() * u.cardinality());
    for (Element x = 0; x < 24; ++x) CHECK(d.multiplicity(x) == d.multiplicity(g.neg(x)));
  }
}

TEST_CASE("alternating sums are independent of the base vertex up to sign") {
  const CyclicGroup g(210);
  for (int trial = 0; trial < 200; ++trial) {
    const auto b = random_multiset(g, 2);
    const Element x = rng()() % 210;
    Element y = rng()() % 210;
    if (x == y) y = g.add(y, 1);
    const Cube c = cube_between(g, x, y);
    const auto base = alternating_sum(b, c, x);
    for (Element v : c.vertices()) {
      const std::int64_t sign = hamming(g, x, v) % 2 ? -1 : 1;
      CHECK(alternating_sum(b, c, v) == sign * base);
    }
  }
}

TEST_CASE("cube rule holds on coset combinations") {
  for (std::uint64_t n : {30, 210}) {
    const CyclicGroup g(n);
    std::vector<std::size_t> dims(g.prime_count());
    std::iota(dims.begin(), dims.end(), 0);
    for (int trial = 0; trial < 50; ++trial) {
      const auto b = coset_combination(g, 1 + static_cast<int>(rng()() % 6));
      REQUIRE(divides_cyclotomic(mask_of(b), n));
      CHECK(check_cube_rule(b, dims).passed);
    }
  }
}

TEST_CASE("slices of hypothesis-satisfying multisets") {
  const CyclicGroup g(30);
  for (int trial = 0; trial < 100; ++trial) {
    const auto b = coset_combination(g, 1 + static_cast<int>(rng()() % 5));
    for (std::uint64_t m : g.divisors()) {
      if (m == 1) continue;
      const auto r = coset_slice_check(b, m);
      CHECK(r.status != SliceCheckResult::Status::failing_coset);
      if (r.passed()) {
        for (Element a = 0; a < 30 / m; ++a) {
          const auto s = coset_slice(b, m, a);
          if (m > 1) CHECK(divides_cyclotomic(mask_of(s), m));
        }
      }
    }
  }
}

TEST_CASE("coset decompositions rebuild the multiset") {
  for (auto [p, q] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 3}, {3, 5}, {5, 7}, {7, 3}}) {
    const CyclicGroup g(p * q);
    for (int trial = 0; trial < 50; ++trial) {
      IndicatorMultiset u(g);
      const int terms = 1 + static_cast<int>(rng()() % 4);
      for (int t = 0; t < terms; ++t) {
        const std::uint64_t step = rng()() % 2 ? p : q;
        const Element shift = rng()() % (p * q);
        for (Element j = 0; j < p * q; j += step) u.add((shift + j) % (p * q));
      }
      const auto d = lam_leung_decompose(u, p, q);
      REQUIRE(d);
      CHECK(d->rebuild() == u);
      CHECK(d->z_q_coset_count() * q + d->z_p_coset_count() * p == u.cardinality());
    }
  }
}

TEST_CASE("integer divisibility implies divisibility mod p") {
  const CyclicGroup g(30);
  for (int trial = 0; trial < 200; ++trial) {
    const auto u = trial % 2 ? coset_combination(g, 3) : random_multiset(g, 1);
    const auto m = mask_of(u);
    for (std::uint64_t e : g.divisors()) {
      if (e == 1 || !divides_cyclotomic(m, e)) continue;
      for (std::uint64_t p : {2, 3, 5, 7, 11}) CHECK(divides_cyclotomic_mod_p(m, e, p));
    }
  }
}

TEST_CASE("spectral pairs found by search") {
  for (std::uint64_t n = 1; n <= 12; ++n) {
    const CyclicGroup g(n);
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); m += 2) {
      const auto s = IndicatorMultiset::from_mask(g, m);
      const auto l = find_spectrum(s);
      if (!l) continue;
      CHECK(l->cardinality() == s.cardinality());
      CHECK(l->contains(0));
      CHECK((masks::differences(l->mask(), n) & ~oracle::vanishing_frequencies(n, m)) == 1);
      CHECK(verify_duality(s, *l));
    }
  }
}

TEST_CASE("tiling pairs found by search") {
  for (std::uint64_t n = 1; n <= 14; ++n) {
    const CyclicGroup g(n);
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); m += 2) {
      const auto s = IndicatorMultiset::from_mask(g, m);
      const auto t = find_complement(s);
      if (!t) continue;
      CHECK(s.cardinality() * t->cardinality() == n);
      CHECK(is_tiling_pair(*t, s));
      for (const auto& c : convolve(mask_of(s), mask_of(*t)).coeffs) CHECK(c == 1);
      CHECK((masks::differences(s.mask(), n) & masks::differences(t->mask(), n)) == 1);
    }
  }
}

TEST_CASE("spectrality and tiling are affine invariants; orbit counts are sound") {
  for (std::uint64_t n = 1; n <= 16; ++n) {
    const Status st = direct_status(n);
    const auto units = oracle::units(n);
    std::uint64_t spectral = 0, tiles = 0;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
      spectral += st.spectral[m];
      tiles += st.tile[m];
      const auto shifted = oracle::affine(n, m, 1, 1);
      CHECK(st.spectral[shifted] == st.spectral[m]);
      CHECK(st.tile[shifted] == st.tile[m]);
      for (auto u : units) {
        const auto dilated = oracle::affine(n, m, 0, u);
        CHECK(st.spectral[dilated] == st.spectral[m]);
        CHECK(st.tile[dilated] == st.tile[m]);
      }
    }
    const auto r = verify_fuglede(n);
    CAPTURE(n);
    CHECK(r.spectral_subset_count == spectral);
    CHECK(r.tile_subset_count == tiles);
  }
}

TEST_CASE("reports do not depend on the worker count") {
  for (std::uint64_t n : {18, 20}) {
    VerifyOptions one;
    VerifyOptions many;
    many.workers = 4;
    CHECK(verification_json(verify_fuglede(n, one), Json::object()).dump() ==
          verification_json(verify_fuglede(n, many), Json::object()).dump());
  }
  VerifyOptions sampled;
  sampled.mode = VerifyMode::sampled;
  sampled.samples = 500;
  const auto a = verification_json(verify_fuglede(48, sampled), Json::object()).dump();
  sampled.workers = 3;
  CHECK(verification_json(verify_fuglede(48, sampled), Json::object()).dump() == a);

  LemmaOptions lo;
  lo.samples = 300;
  const auto l1 = lemma_json(lemma_suite("cube", LemmaShape::parse("30"), lo), Json::object()).dump();
  lo.workers = 4;
  CHECK(lemma_json(lemma_suite("cube", LemmaShape::parse("30"), lo), Json::object()).dump() == l1);
}

TEST_CASE("set literals round-trip") {
  for (std::uint64_t n : {1, 7, 30, 100, 1000}) {
    const CyclicGroup g(n);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Element> xs(1 + rng()() % 10);
      for (auto& x : xs) x = rng()() % n;
      const auto u = IndicatorMultiset::from_elements(g, xs);
      CHECK(parse_set_literal(format_set_literal(u)) == u);
    }
  }
}
