#pragma once

#include <cstdint>
#include <optional>

#include "fuglede/group.hpp"

namespace fuglede {

/// m_S * m_T = 1 + x + ... + x^{N-1} modulo x^N - 1.
bool is_tiling_pair(const IndicatorMultiset& s, const IndicatorMultiset& t);

/// Lexicographically least tiling complement containing 0, or nullopt.
/// S must be a nonempty set containing 0.
std::optional<IndicatorMultiset> find_complement(const IndicatorMultiset& s);

/// For squarefree N: |S| divides N and S meets every coset of the subgroup of
/// order N/|S| exactly once (equivalently, S is a complete residue system mod |S|).
bool squarefree_tile_test(const IndicatorMultiset& s);

namespace masks {

/// Bitmask form of find_complement for N <= 64; s must contain 0.
std::optional<std::uint64_t> find_complement(std::uint64_t n, std::uint64_t s);

/// Bitmask form of squarefree_tile_test; the caller guarantees N squarefree.
bool squarefree_tile_test(std::uint64_t n, std::uint64_t s);

}  // namespace masks

}  // namespace fuglede
