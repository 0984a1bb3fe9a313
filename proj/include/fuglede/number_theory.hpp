#pragma once

#include <cstdint>
#include <vector>

namespace fuglede {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
};

bool is_prime(std::uint64_t n);

/// Trial-division factorization, primes ascending. factorize(1) is empty.
std::vector<PrimePower> factorize(std::uint64_t n);

/// All positive divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

/// Inverse of a modulo n; throws ArgumentError if gcd(a, n) != 1.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t n);

/// (a * b) mod n without intermediate overflow.
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

/// a + b, throwing ArgumentError on overflow.
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

}  // namespace fuglede
