#include "doctest.h"

#include <algorithm>

#include "fuglede/cube.hpp"
#include "fuglede/errors.hpp"

using namespace fuglede;

namespace {

std::vector<Element> sorted(std::vector<Element> v) {
  std::sort(v.begin(), v.end());
  return v;
}

const std::vector<std::size_t> kBoth = {0, 1};

}  // namespace

TEST_CASE("cubes between two elements") {
  const CyclicGroup z6(6);
  const Cube c = cube_between(z6, 0, 5);
  REQUIRE(c.dimension() == 2);
  CHECK(c.axes[0] == CubeAxis{0, 0, 1});
  CHECK(c.axes[1] == CubeAxis{1, 0, 2});
  CHECK(c.vertices() == std::vector<Element>{0, 3, 2, 5});
  CHECK(c.has_vertex(2));
  CHECK_FALSE(c.has_vertex(1));

  const Cube line = cube_between(z6, 0, 3);
  CHECK(line.dimension() == 1);
  CHECK(sorted(line.vertices()) == std::vector<Element>{0, 3});

  const CyclicGroup z210(210);
  const Cube sq = cube_between(z210, 0, 35);
  CHECK(sq.dimension() == 2);
  CHECK(sq.axes[0].coordinate == 0);
  CHECK(sq.axes[1].coordinate == 1);
  CHECK(sq.base[2] == 0);
  CHECK(sq.base[3] == 0);
  for (Element v : sq.vertices()) CHECK(v % 35 == 0);

  CHECK_THROWS_AS(cube_between(z6, 4, 4), ArgumentError);
  CHECK_THROWS_AS(cube_between(CyclicGroup(12), 0, 5), UnsupportedStructureError);
}

TEST_CASE("cube construction is validated") {
  const CyclicGroup z6(6);
  CHECK_NOTHROW(make_cube(z6, {{0, 0, 1}}, {0, 2}));
  CHECK(make_cube(z6, {{0, 1, 0}}, {1, 2}).axes[0] == CubeAxis{0, 0, 1});
  CHECK_THROWS_AS(make_cube(z6, {{0, 1, 1}}, {1, 2}), ArgumentError);
  CHECK_THROWS_AS(make_cube(z6, {{1, 0, 3}}, {0, 0}), ArgumentError);
  CHECK_THROWS_AS(make_cube(z6, {{0, 0, 1}}, {0}), ArgumentError);
}

TEST_CASE("alternating sums") {
  const CyclicGroup z6(6);
  const Cube c = cube_between(z6, 0, 5);
  CHECK(alternating_sum(IndicatorMultiset::full(z6), c, 0) == 0);
  CHECK(alternating_sum(IndicatorMultiset::full(z6), c, 5) == 0);
  CHECK(alternating_sum(IndicatorMultiset::from_elements(z6, {0, 3}), c, 0) == 0);
  CHECK(alternating_sum(IndicatorMultiset::from_elements(z6, {0, 1}), c, 0) == 1);
  CHECK(alternating_sum(IndicatorMultiset::from_elements(z6, {0, 1}), c, 3) == -1);
  CHECK_THROWS_AS(alternating_sum(IndicatorMultiset::full(z6), c, 1), ArgumentError);
}

TEST_CASE("cube rule checks") {
  const CyclicGroup z6(6);
  auto full = check_cube_rule(IndicatorMultiset::full(z6), kBoth);
  CHECK(full.passed);
  CHECK(full.cubes_checked == 3);
  CHECK(full.mode == CubeCheckMode::exhaustive);

  CHECK(check_cube_rule(IndicatorMultiset::from_elements(z6, {0, 3}), kBoth).passed);

  auto bad = check_cube_rule(IndicatorMultiset::from_elements(z6, {0, 1}), kBoth);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.counterexample);
  // Lexicographically first failing square: residues {0,1} on both coordinates.
  CHECK(*bad.counterexample == make_cube(z6, {{0, 0, 1}, {1, 0, 1}}, {0, 0}));
  CHECK(bad.counterexample->vertices() == std::vector<Element>{0, 3, 4, 1});

  CHECK(cube_count(z6, kBoth, false) == 3);
  const CyclicGroup z210(210);
  const std::vector<std::size_t> all = {0, 1, 2, 3};
  CHECK(cube_count(z210, all, false) == 1 * 3 * 10 * 21);
  const std::vector<std::size_t> two = {1, 3};
  CHECK(cube_count(z210, two, false) == 3 * 21 * 2 * 5);
  CHECK(cube_count(z210, two, true) == 3 * 21);

  CubeCheckOptions sampled;
  sampled.mode = CubeCheckMode::sampled;
  sampled.samples = 50;
  auto s = check_cube_rule(IndicatorMultiset::full(z210), all, std::nullopt, sampled);
  CHECK(s.passed);
  CHECK(s.cubes_checked == 50);
  CHECK(s.mode == CubeCheckMode::sampled);
}

TEST_CASE("cube rule restricted to a coset") {
  const CyclicGroup z30(30);
  // The Z_15 coset {x even}: fixing the mod-2 coordinate to 0.
  IndicatorMultiset b(z30);
  for (Element x = 0; x < 30; x += 2) b.add(x);
  const std::vector<std::size_t> dims = {1, 2};
  auto r = check_cube_rule(b, dims, CrtCoords{{0, 0, 0}});
  CHECK(r.passed);
  CHECK(r.cubes_checked == 3 * 10);
  auto other = check_cube_rule(b, dims, CrtCoords{{1, 0, 0}});
  CHECK(other.passed);
}

TEST_CASE("coset slice divisibility") {
  const CyclicGroup z6(6);
  CHECK(coset_slice_check(IndicatorMultiset::full(z6), 3).passed());

  IndicatorMultiset two_cosets(z6);
  for (Element x : {0, 2, 4, 1, 3, 5}) two_cosets.add(x);
  CHECK(coset_slice_check(two_cosets, 3).passed());

  const auto r = coset_slice_check(IndicatorMultiset::from_elements(z6, {0, 1, 2, 4}), 3);
  CHECK(r.status == SliceCheckResult::Status::hypothesis_failed);
  CHECK(r.missing_divisors == (std::vector<std::uint64_t>{3, 6}));
  CHECK_FALSE(r.failing_coset);

  const auto slice = coset_slice(IndicatorMultiset::from_elements(z6, {0, 1, 2, 4}), 3, 1);
  CHECK(slice.modulus() == 3);
  CHECK(slice.support() == std::vector<Element>{0});
  CHECK_THROWS_AS(coset_slice_check(IndicatorMultiset::full(z6), 4), ArgumentError);
}
