#include "doctest.h"

#include <bit>

#include "fuglede/errors.hpp"
#include "fuglede/spectra.hpp"

using namespace fuglede;

namespace {

IndicatorMultiset z6set(std::initializer_list<Element> xs) { return IndicatorMultiset::from_elements(CyclicGroup(6), xs); }

}  // namespace

TEST_CASE("spectral pairs") {
  CHECK(is_spectrum(z6set({0, 1}), z6set({0, 3})));
  CHECK(is_spectrum(z6set({0, 2, 4}), z6set({0, 1, 2})));
  CHECK_FALSE(is_spectrum(z6set({0, 1}), z6set({0, 1})));
  CHECK_FALSE(is_spectrum(z6set({0, 1}), z6set({0})));
  const CyclicGroup z6(6);
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    if (std::popcount(mask) == 3) CHECK_FALSE(is_spectrum(z6set({0, 1, 3}), IndicatorMultiset::from_mask(z6, mask)));
  }
  CHECK_THROWS_AS(is_spectrum(z6set({0, 0, 1}), z6set({0, 3})), ArgumentError);
  CHECK_THROWS_AS(is_spectrum(z6set({0, 1}), IndicatorMultiset::from_elements(CyclicGroup(8), {0, 4})), ArgumentError);
}

TEST_CASE("spectrum search") {
  CHECK(find_spectrum(z6set({0, 1})) == z6set({0, 3}));
  CHECK(find_spectrum(z6set({0})) == z6set({0}));
  CHECK(find_spectrum(z6set({0, 2, 4})) == z6set({0, 1, 2}));
  CHECK_FALSE(find_spectrum(z6set({0, 1, 3})));
  CHECK(find_spectrum(IndicatorMultiset::full(CyclicGroup(6))) == IndicatorMultiset::full(CyclicGroup(6)));

  // Past the bitmask fast path.
  const CyclicGroup z70(70);
  IndicatorMultiset s(z70);
  for (Element x = 0; x < 70; x += 10) s.add(x);
  const auto lambda = find_spectrum(s);
  REQUIRE(lambda);
  CHECK(lambda->support() == std::vector<Element>{0, 1, 2, 3, 4, 5, 6});
}

TEST_CASE("all spectra in order") {
  std::vector<std::vector<Element>> seen;
  for_each_spectrum(z6set({0, 1}), [&](const IndicatorMultiset& l) {
    seen.push_back(l.support());
    return true;
  });
  CHECK(seen == std::vector<std::vector<Element>>{{0, 3}});

  seen.clear();
  for_each_spectrum(z6set({0, 3}), [&](const IndicatorMultiset& l) {
    seen.push_back(l.support());
    return true;
  });
  CHECK(seen == std::vector<std::vector<Element>>{{0, 1}, {0, 3}, {0, 5}});

  int calls = 0;
  for_each_spectrum(z6set({0, 3}), [&](const IndicatorMultiset&) { return ++calls < 1; });
  CHECK(calls == 1);
}

TEST_CASE("coset-union spectra") {
  // {0,1} in Z_6: spectra containing the order-2 subgroup {0,3}.
  CHECK(find_coset_union_spectrum(z6set({0, 1}), 2) == z6set({0, 3}));
  CHECK_FALSE(find_coset_union_spectrum(z6set({0, 1}), 3));
  CHECK(find_coset_union_spectrum(z6set({0, 1, 2}), 3) == z6set({0, 2, 4}));
}

TEST_CASE("duality") {
  CHECK(verify_duality(z6set({0, 1}), z6set({0, 3})));
  CHECK(verify_duality(z6set({0}), z6set({0})));
  CHECK(verify_duality(z6set({0, 2, 4}), z6set({0, 1, 2})));
  CHECK_THROWS_AS(verify_duality(z6set({0, 1}), z6set({0, 1})), ArgumentError);
}

TEST_CASE("generating and primitive sets") {
  CHECK(is_generating(z6set({0, 1})));
  CHECK(is_primitive(z6set({0, 1})));
  CHECK_FALSE(is_generating(z6set({0, 3})));
  CHECK_FALSE(is_primitive(z6set({0, 3})));
  CHECK(is_generating(z6set({1, 4})));
  CHECK_FALSE(is_primitive(z6set({1, 4})));
  CHECK_FALSE(is_generating(z6set({0, 2, 4})));
}

TEST_CASE("coset unions") {
  CHECK(is_union_of_cosets(z6set({0, 3, 1, 4}), 2));
  CHECK_FALSE(is_union_of_cosets(z6set({0, 3, 1}), 2));
  CHECK(is_union_of_cosets(z6set({1, 3, 5}), 3));
  CHECK(is_union_of_cosets(z6set({2}), 1));
}

TEST_CASE("bitmask helpers") {
  CHECK(masks::rotate(0b11, 5, 6) == 0b100001);
  CHECK(masks::rotate(0b101, 6, 6) == 0b101);
  CHECK(masks::differences(0b11, 6) == 0b100011);
  // Z({0,1}) in Z_6 is {3}: the only 2-clique through 0 is {0,3}.
  CHECK(masks::find_clique(6, 0b1000, 2) == std::uint64_t{0b1001});
  CHECK_FALSE(masks::find_clique(6, 0b1000, 3));
  const ZeroSetKernel k(CyclicGroup(6));
  CHECK(masks::is_spectrum(k, 0b11, 0b1001));
  CHECK_FALSE(masks::is_spectrum(k, 0b11, 0b11));
}
