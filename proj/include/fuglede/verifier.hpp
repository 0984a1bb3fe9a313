#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fuglede/group.hpp"

namespace fuglede {

inline constexpr std::uint64_t kDefaultSeed = 20240917;
inline constexpr std::uint64_t kExhaustiveLimit = 32;
inline constexpr const char* kToolVersion = "1.0.0";

enum class VerifyMode { exhaustive, sampled };
std::string to_string(VerifyMode mode);

struct VerifyOptions {
  std::optional<unsigned> max_cardinality;
  VerifyMode mode = VerifyMode::exhaustive;
  unsigned workers = 1;
  std::uint64_t seed = kDefaultSeed;
  /// Random subsets drawn in sampled mode.
  std::uint64_t samples = 100000;
  /// Lifts the N <= 32 guard on exhaustive runs.
  bool allow_large = false;
  /// Always search complements by exact cover, even for squarefree N.
  bool force_exact_cover = false;
};

/// An orbit where spectrality and tiling disagree, with whatever witness exists.
struct Discrepancy {
  std::vector<Element> set;
  bool spectral = false;
  bool tile = false;
  std::optional<std::vector<Element>> spectrum;
  std::optional<std::vector<Element>> complement;
  auto operator<=>(const Discrepancy&) const = default;
};

/// Side checks run on every spectral orbit.
struct SpectralPairChecks {
  std::uint64_t spectral_pairs = 0;
  std::uint64_t duality_failures = 0;
  std::uint64_t translation_failures = 0;
  std::uint64_t small_spectral_checked = 0;
  std::uint64_t small_spectral_failures = 0;
  std::uint64_t witness_failures = 0;
};

struct VerificationReport {
  std::uint64_t modulus = 0;
  VerifyOptions options;
  std::uint64_t orbit_count = 0;
  std::uint64_t spectral_count = 0;
  std::uint64_t tile_count = 0;
  /// The same tallies weighted by orbit size, i.e. over plain subsets.
  std::uint64_t subset_count = 0;
  std::uint64_t spectral_subset_count = 0;
  std::uint64_t tile_subset_count = 0;
  std::vector<Discrepancy> discrepancies;
  SpectralPairChecks checks;
  std::string tile_method;
  std::uint64_t masks_scanned = 0;
  /// Wall time; reported on stderr only so the JSON stays reproducible.
  double elapsed_seconds = 0;

  bool clean() const;
};

/// Decides spectrality and tiling for every affine orbit of nonempty subsets of
/// Z_N (or for the orbits of a seeded random sample) and records disagreements.
/// Throws PreconditionError when the request is infeasible.
VerificationReport verify_fuglede(std::uint64_t n, const VerifyOptions& options = {});

}  // namespace fuglede
