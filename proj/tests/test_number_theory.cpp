#include "doctest.h"

#include <limits>

#include "fuglede/errors.hpp"
#include "fuglede/number_theory.hpp"

using namespace fuglede;

TEST_CASE("primality and factorization") {
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(91));

  const auto f = factorize(360);
  REQUIRE(f.size() == 3);
  CHECK(f[0].prime == 2);
  CHECK(f[0].exponent == 3);
  CHECK(f[1].prime == 3);
  CHECK(f[1].exponent == 2);
  CHECK(f[2].prime == 5);
  CHECK(f[2].exponent == 1);
  CHECK(factorize(1).empty());
}

TEST_CASE("divisors are ascending and complete") {
  CHECK(divisors(1) == std::vector<std::uint64_t>{1});
  CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(210).size() == 16);
}

TEST_CASE("euler phi") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(105) == 48);
  CHECK(euler_phi(210) == 48);
}

TEST_CASE("modular inverse") {
  CHECK(mod_inverse(5, 6) == 5);
  CHECK(mod_inverse(3, 7) * 3 % 7 == 1);
  CHECK_THROWS_AS(mod_inverse(2, 6), ArgumentError);
}

TEST_CASE("checked arithmetic refuses to wrap") {
  const auto max = std::numeric_limits<std::uint64_t>::max();
  CHECK(checked_add(1, 2) == 3);
  CHECK_THROWS_AS(checked_add(max, 1), ArgumentError);
  CHECK_THROWS_AS(checked_mul(max / 2 + 1, 2), ArgumentError);
  CHECK(mul_mod(max, max, 1000000007) == static_cast<std::uint64_t>((static_cast<unsigned __int128>(max) * max) % 1000000007));
}
