#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fuglede/group.hpp"
#include "fuglede/zero_set_kernel.hpp"

namespace fuglede {

/// (S, Lambda) is a spectral pair: |Lambda| = |S| and every nonzero difference
/// of Lambda lies in Z(S). Both arguments must be sets on the same group.
bool is_spectrum(const IndicatorMultiset& s, const IndicatorMultiset& lambda);

/// Lexicographically least spectrum containing 0, or nullopt if S is not spectral.
/// Clique search in the Cayley graph on Z_N with connection set Z(S).
std::optional<IndicatorMultiset> find_spectrum(const IndicatorMultiset& s);

/// Visits every spectrum containing 0 in lexicographic order until the visitor returns false.
void for_each_spectrum(const IndicatorMultiset& s, const std::function<bool(const IndicatorMultiset&)>& visit);

/// Lexicographically least spectrum that is a union of Z_p-cosets (so contains
/// the subgroup of order p), or nullopt.
std::optional<IndicatorMultiset> find_coset_union_spectrum(const IndicatorMultiset& s, std::uint64_t p);

/// is_spectrum(lambda, s) for a known spectral pair (s, lambda). Duality says this is
/// always true; callers treat false as a theorem violation.
/// Throws ArgumentError if (s, lambda) is not a spectral pair.
bool verify_duality(const IndicatorMultiset& s, const IndicatorMultiset& lambda);

/// The subgroup generated by U is Z_N.
bool is_generating(const IndicatorMultiset& u);

/// The subgroup generated by U - U is Z_N, i.e. U lies in no coset of a proper
/// subgroup. This is an adopted reading of "primitive"; see README.
bool is_primitive(const IndicatorMultiset& u);

/// U is a union of cosets of the order-d subgroup.
bool is_union_of_cosets(const IndicatorMultiset& u, std::uint64_t d);

namespace masks {

/// Bitmask forms for N <= 64, used on the verifier's hot path.

/// Lexicographically least clique of the given size containing 0 in the Cayley
/// graph with connection set zero_set (symmetric, without 0).
std::optional<std::uint64_t> find_clique(std::uint64_t n, std::uint64_t zero_set, unsigned size);

bool is_spectrum(const ZeroSetKernel& kernel, std::uint64_t s, std::uint64_t lambda);

/// Rotation by t: element x maps to x + t mod n.
inline std::uint64_t rotate(std::uint64_t mask, std::uint64_t t, std::uint64_t n) {
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  t %= n;
  if (t == 0) return mask;
  return ((mask << t) | (mask >> (n - t))) & full;
}

/// Difference set S - S as a bitmask.
std::uint64_t differences(std::uint64_t s, std::uint64_t n);

}  // namespace masks

}  // namespace fuglede
