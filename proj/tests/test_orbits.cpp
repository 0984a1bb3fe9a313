#include "doctest.h"

#include <set>

#include "fuglede/orbits.hpp"

using namespace fuglede;

TEST_CASE("canonical forms") {
  const CyclicGroup z6(6);
  CHECK(canonical_form(IndicatorMultiset::from_elements(z6, {1, 2})).support() == std::vector<Element>{0, 1});
  CHECK(canonical_form(IndicatorMultiset::from_elements(z6, {0, 3})).support() == std::vector<Element>{0, 3});
  CHECK(canonical_form(IndicatorMultiset(z6)).empty());
  CHECK(orbit_size(IndicatorMultiset::from_elements(z6, {0, 3})) == 3);
  CHECK(orbit_size(IndicatorMultiset::from_elements(z6, {0, 1})) == 6);
  CHECK(orbit_size(IndicatorMultiset::full(z6)) == 1);

  // Beyond 64 bits the integer order is still "least bitmask".
  const CyclicGroup z70(70);
  CHECK(canonical_form(IndicatorMultiset::from_elements(z70, {5, 69})).support() == std::vector<Element>{0, 2});
}

TEST_CASE("affine orbit tables") {
  const AffineOrbits o(CyclicGroup(6));
  CHECK(o.group_order() == 12);
  CHECK(o.unit_count() == 2);
  CHECK(o.canonical(0b110) == 0b11);
  std::uint64_t stab = 0;
  CHECK(o.is_canonical(0b1001, &stab));
  CHECK(stab == 4);
  CHECK_FALSE(o.is_canonical(0b110));
  CHECK(o.orbit_size(0b1001) == 3);

  // Orbit sizes over canonical representatives add up to all subsets.
  for (std::uint64_t n : {1, 5, 8, 12}) {
    const AffineOrbits orbits{CyclicGroup(n)};
    std::uint64_t total = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      std::uint64_t st = 0;
      if (orbits.is_canonical(m, &st)) {
        CHECK(st * orbits.orbit_size(m) == orbits.group_order());
        total += orbits.orbit_size(m);
      }
    }
    CHECK(total == (std::uint64_t{1} << n));
  }
}

TEST_CASE("chunked runs return results in index order") {
  for (unsigned workers : {1u, 3u, 8u}) {
    const auto r = run_chunks<std::uint64_t>(100, workers, [](std::size_t i) { return i * i; });
    REQUIRE(r.size() == 100);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == i * i);
  }
  CHECK(run_chunks<int>(0, 4, [](std::size_t) { return 1; }).empty());
  CHECK_THROWS_AS(run_chunks<int>(10, 4,
                                  [](std::size_t i) -> int {
                                    if (i == 7) throw std::runtime_error("boom");
                                    return 0;
                                  }),
                  std::runtime_error);
}
