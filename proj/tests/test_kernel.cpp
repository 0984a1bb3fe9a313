#include "doctest.h"

#include <random>

#include "fuglede/polynomial.hpp"
#include "fuglede/zero_set_kernel.hpp"

using namespace fuglede;

TEST_CASE("bitmask kernel agrees with the exact polynomial path") {
  for (std::uint64_t n = 1; n <= 12; ++n) {
    const CyclicGroup g(n);
    const ZeroSetKernel k(g);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      const auto u = IndicatorMultiset::from_mask(g, mask);
      const auto z = zero_divisors(u);
      std::uint64_t expected = 0;
      for (auto x : z.elements) expected |= std::uint64_t{1} << x;
      CHECK(k.zero_set(mask) == expected);
    }
  }
  std::mt19937_64 rng(7);
  for (std::uint64_t n : {30, 36, 42, 48, 60, 63, 64}) {
    const CyclicGroup g(n);
    const ZeroSetKernel k(g);
    for (int trial = 0; trial < 200; ++trial) {
      std::uint64_t mask = rng();
      if (n < 64) mask &= (std::uint64_t{1} << n) - 1;
      // Unions of subgroup cosets make the divisibility bits nontrivial.
      if (trial % 2) {
        const auto divs = g.divisors();
        const std::uint64_t d = divs[rng() % divs.size()];
        mask = 0;
        for (std::uint64_t j = 0; j < d; ++j) mask |= std::uint64_t{1} << ((j * (n / d) + rng() % 2) % n);
      }
      const auto u = IndicatorMultiset::from_mask(g, mask);
      for (std::size_t i = 0; i < k.divisors().size(); ++i) {
        CHECK(k.divides(mask, i) == divides_cyclotomic(mask_of(u), k.divisors()[i]));
      }
    }
  }
}

TEST_CASE("kernel residues are linear") {
  const CyclicGroup g(30);
  const ZeroSetKernel k(g);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t a = rng() & ((std::uint64_t{1} << 30) - 1);
    const std::uint64_t b = rng() & ((std::uint64_t{1} << 30) - 1) & ~a;
    for (std::size_t i = 0; i < k.divisors().size(); ++i) {
      const std::size_t w = k.residue_width(i);
      std::vector<std::int32_t> ra(w), rb(w), rab(w);
      k.residue(a, i, ra);
      k.residue(b, i, rb);
      k.residue(a | b, i, rab);
      for (std::size_t j = 0; j < w; ++j) CHECK(rab[j] == ra[j] + rb[j]);
    }
  }
}

TEST_CASE("order classes partition the nonzero elements") {
  const CyclicGroup g(24);
  const ZeroSetKernel k(g);
  std::uint64_t seen = 0;
  for (std::size_t i = 0; i < k.divisors().size(); ++i) {
    CHECK((seen & k.order_class(i)) == 0);
    seen |= k.order_class(i);
    CHECK(k.index_of(k.divisors()[i]) == i);
  }
  CHECK(seen == ((std::uint64_t{1} << 24) - 2));
}
