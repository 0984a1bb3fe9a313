#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuglede/group.hpp"

namespace fuglede {

/// One active direction of a cube: coordinate index and its two residues (low < high).
struct CubeAxis {
  std::size_t coordinate;
  std::uint64_t low;
  std::uint64_t high;
  bool operator==(const CubeAxis&) const = default;
};

/// Combinatorial cube in CRT coordinates of a squarefree Z_N.
/// `base` holds a value for every coordinate; on active coordinates it equals the low residue.
struct Cube {
  CyclicGroup group;
  std::vector<CubeAxis> axes;
  std::vector<std::uint64_t> base;

  std::size_t dimension() const { return axes.size(); }
  /// Bit t of selector picks the high residue on axes[t].
  Element vertex(std::uint64_t selector) const;
  /// All 2^d vertices in selector order.
  std::vector<Element> vertices() const;
  bool has_vertex(Element x) const;
  std::string describe() const;
  bool operator==(const Cube& other) const { return group == other.group && axes == other.axes && base == other.base; }
};

/// Validates the axes and base values and builds the cube.
Cube make_cube(const CyclicGroup& g, std::vector<CubeAxis> axes, std::vector<std::uint64_t> base);

/// The cube spanned by x and y; x and y are opposite vertices.
Cube cube_between(const CyclicGroup& g, Element x, Element y);

/// sum over vertices v of (-1)^{d_H(c0, v)} B(v).
std::int64_t alternating_sum(const IndicatorMultiset& b, const Cube& cube, Element c0);

enum class CubeCheckMode { exhaustive, sampled };
std::string to_string(CubeCheckMode mode);

struct CubeCheckOptions {
  CubeCheckMode mode = CubeCheckMode::exhaustive;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0x5eed;
};

struct CubeRuleResult {
  bool passed = true;
  std::optional<Cube> counterexample;
  std::uint64_t cubes_checked = 0;
  CubeCheckMode mode = CubeCheckMode::exhaustive;
};

/// Checks the alternating-sum rule on every cube whose active coordinates are
/// exactly `dims` (optionally only inside the coset fixed by `coset_fix`, whose
/// entries at `dims` are ignored). Exhaustive mode walks cubes lexicographically
/// in (fixed coordinates, active pairs) and reports the first failure.
CubeRuleResult check_cube_rule(const IndicatorMultiset& b, std::span<const std::size_t> dims,
                               const std::optional<CrtCoords>& coset_fix = std::nullopt,
                               const CubeCheckOptions& options = {});

/// Number of cubes check_cube_rule would visit exhaustively.
std::uint64_t cube_count(const CyclicGroup& g, std::span<const std::size_t> dims, bool restricted_to_coset);

struct SliceCheckResult {
  enum class Status { pass, failing_coset, hypothesis_failed };
  Status status = Status::pass;
  /// Divisors l with m | l | N and Phi_l not dividing m_B.
  std::vector<std::uint64_t> missing_divisors;
  /// Representative a in [0, N/m) of the first failing coset a + Z_m.
  std::optional<Element> failing_coset;

  bool passed() const { return status == Status::pass; }
};

/// Coset-slice divisibility: if Phi_l | m_B for every l with m | l | N, then for
/// every coset a + Z_m the slice (B n (a + Z_m)) - a, read on Z_m, has Phi_m | mask.
/// The hypothesis is always checked first.
SliceCheckResult coset_slice_check(const IndicatorMultiset& b, std::uint64_t m);

/// Slice of B on the coset a + Z_m, re-indexed onto Z_m.
IndicatorMultiset coset_slice(const IndicatorMultiset& b, std::uint64_t m, Element a);

}  // namespace fuglede
