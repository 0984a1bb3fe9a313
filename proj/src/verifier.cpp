#include "fuglede/verifier.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <random>

#include "fuglede/errors.hpp"
#include "fuglede/orbits.hpp"
#include "fuglede/spectra.hpp"
#include "fuglede/tilings.hpp"
#include "fuglede/zero_set_kernel.hpp"

namespace fuglede {

namespace {

std::vector<Element> mask_elements(std::uint64_t mask) {
  std::vector<Element> out;
  while (mask) {
    out.push_back(static_cast<Element>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

struct Tally {
  std::uint64_t orbit_count = 0;
  std::uint64_t spectral_count = 0;
  std::uint64_t tile_count = 0;
  std::uint64_t subset_count = 0;
  std::uint64_t spectral_subset_count = 0;
  std::uint64_t tile_subset_count = 0;
  std::uint64_t masks_scanned = 0;
  SpectralPairChecks checks;
  std::vector<Discrepancy> discrepancies;

  void merge(const Tally& o) {
    orbit_count += o.orbit_count;
    spectral_count += o.spectral_count;
    tile_count += o.tile_count;
    subset_count += o.subset_count;
    spectral_subset_count += o.spectral_subset_count;
    tile_subset_count += o.tile_subset_count;
    masks_scanned += o.masks_scanned;
    checks.spectral_pairs += o.checks.spectral_pairs;
    checks.duality_failures += o.checks.duality_failures;
    checks.translation_failures += o.checks.translation_failures;
    checks.small_spectral_checked += o.checks.small_spectral_checked;
    checks.small_spectral_failures += o.checks.small_spectral_failures;
    checks.witness_failures += o.checks.witness_failures;
    discrepancies.insert(discrepancies.end(), o.discrepancies.begin(), o.discrepancies.end());
  }
};

class OrbitClassifier {
 public:
  OrbitClassifier(const CyclicGroup& g, bool force_exact_cover)
      : group_(g),
        n_(g.modulus()),
        kernel_(g),
        use_squarefree_test_(g.squarefree() && !force_exact_cover) {}

  bool uses_squarefree_test() const { return use_squarefree_test_; }

  void classify(std::uint64_t mask, std::uint64_t orbit_size, Tally& tally) const {
    const auto k = static_cast<unsigned>(std::popcount(mask));
    const std::uint64_t zero_set = kernel_.zero_set(mask);

    std::optional<std::uint64_t> spectrum;
    if (k == 1) {
      spectrum = 1;
    } else if (static_cast<unsigned>(std::popcount(zero_set)) + 1 >= k) {
      spectrum = masks::find_clique(n_, zero_set, k);
    }
    const bool tile = use_squarefree_test_ ? masks::squarefree_tile_test(n_, mask)
                                           : masks::find_complement(n_, mask).has_value();

    ++tally.orbit_count;
    tally.subset_count += orbit_size;
    if (tile) {
      ++tally.tile_count;
      tally.tile_subset_count += orbit_size;
    }
    if (spectrum) {
      ++tally.spectral_count;
      tally.spectral_subset_count += orbit_size;
      check_spectral_pair(mask, *spectrum, zero_set, tally.checks);
      if (k <= 5) {
        ++tally.checks.small_spectral_checked;
        tally.checks.small_spectral_failures += !tile;
      }
    }
    if (spectrum.has_value() != tile) record_discrepancy(mask, spectrum, tile, tally);
  }

 private:
  void check_spectral_pair(std::uint64_t s, std::uint64_t lambda, std::uint64_t zero_set,
                           SpectralPairChecks& checks) const {
    ++checks.spectral_pairs;
    if (!masks::is_spectrum(kernel_, lambda, s)) ++checks.duality_failures;
    for (std::uint64_t a = 0; a < n_; ++a) {
      const std::uint64_t shifted = masks::rotate(lambda, a, n_);
      const std::uint64_t diff = masks::differences(shifted, n_) & ~std::uint64_t{1};
      if (diff & ~zero_set) {
        ++checks.translation_failures;
        break;
      }
    }
  }

  void record_discrepancy(std::uint64_t mask, const std::optional<std::uint64_t>& spectrum, bool tile,
                          Tally& tally) const {
    Discrepancy d;
    d.set = mask_elements(mask);
    d.spectral = spectrum.has_value();
    d.tile = tile;
    const IndicatorMultiset s = IndicatorMultiset::from_mask(group_, mask);
    if (spectrum) {
      d.spectrum = mask_elements(*spectrum);
      if (!is_spectrum(s, IndicatorMultiset::from_mask(group_, *spectrum))) ++tally.checks.witness_failures;
    }
    if (tile) {
      if (auto t = find_complement(s)) {
        d.complement = t->support();
        if (!is_tiling_pair(s, *t)) ++tally.checks.witness_failures;
      } else {
        ++tally.checks.witness_failures;
      }
    }
    tally.discrepancies.push_back(std::move(d));
  }

  CyclicGroup group_;
  std::uint64_t n_;
  ZeroSetKernel kernel_;
  bool use_squarefree_test_;
};

void check_feasible(std::uint64_t n, const VerifyOptions& options) {
  if (n == 0) throw ArgumentError("modulus must be positive");
  if (n > 64) {
    throw PreconditionError("N = " + std::to_string(n) + " exceeds the 64-element bitmask engine");
  }
  if (options.mode == VerifyMode::exhaustive && n > kExhaustiveLimit && !options.allow_large) {
    throw PreconditionError("exhaustive verification of Z_" + std::to_string(n) + " enumerates 2^" +
                            std::to_string(n - 1) + " subsets; use --mode sampled, or lift the N <= " +
                            std::to_string(kExhaustiveLimit) + " guard explicitly");
  }
  if (options.workers == 0) throw ArgumentError("worker count must be positive");
}

bool within_cardinality(std::uint64_t mask, const VerifyOptions& options) {
  return !options.max_cardinality || static_cast<unsigned>(std::popcount(mask)) <= *options.max_cardinality;
}

}  // namespace

std::string to_string(VerifyMode mode) { return mode == VerifyMode::exhaustive ? "exhaustive" : "sampled"; }

bool VerificationReport::clean() const {
  return discrepancies.empty() && checks.duality_failures == 0 && checks.translation_failures == 0 &&
         checks.small_spectral_failures == 0 && checks.witness_failures == 0;
}

VerificationReport verify_fuglede(std::uint64_t n, const VerifyOptions& options) {
  check_feasible(n, options);
  const auto started = std::chrono::steady_clock::now();
  const CyclicGroup g(n);
  const AffineOrbits orbits(g);
  const OrbitClassifier classifier(g, options.force_exact_cover);

  std::vector<Tally> tallies;
  if (options.mode == VerifyMode::exhaustive) {
    // Canonical representatives contain 0, so only masks with bit 0 set are scanned.
    const unsigned free_bits = static_cast<unsigned>(n - 1);
    const unsigned chunk_bits = std::min(free_bits, 16u);
    const std::uint64_t chunk_count = std::uint64_t{1} << (free_bits - chunk_bits);
    tallies = run_chunks<Tally>(chunk_count, options.workers, [&](std::size_t chunk) {
      Tally t;
      const std::uint64_t begin = static_cast<std::uint64_t>(chunk) << chunk_bits;
      const std::uint64_t end = begin + (std::uint64_t{1} << chunk_bits);
      for (std::uint64_t r = begin; r < end; ++r) {
        const std::uint64_t mask = (r << 1) | 1u;
        ++t.masks_scanned;
        if (!within_cardinality(mask, options)) continue;
        std::uint64_t stab = 0;
        if (!orbits.is_canonical(mask, &stab)) continue;
        classifier.classify(mask, orbits.group_order() / stab, t);
      }
      return t;
    });
  } else {
    std::mt19937_64 rng(options.seed);
    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::vector<std::uint64_t> reps;
    reps.reserve(options.samples);
    for (std::uint64_t i = 0; i < options.samples; ++i) {
      const std::uint64_t mask = rng() & full;
      if (mask == 0 || !within_cardinality(mask, options)) continue;
      reps.push_back(orbits.canonical(mask));
    }
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    constexpr std::size_t per_chunk = 256;
    const std::size_t chunk_count = (reps.size() + per_chunk - 1) / per_chunk;
    tallies = run_chunks<Tally>(chunk_count, options.workers, [&](std::size_t chunk) {
      Tally t;
      const std::size_t end = std::min(reps.size(), (chunk + 1) * per_chunk);
      for (std::size_t i = chunk * per_chunk; i < end; ++i) {
        ++t.masks_scanned;
        std::uint64_t stab = 0;
        orbits.is_canonical(reps[i], &stab);
        classifier.classify(reps[i], orbits.group_order() / stab, t);
      }
      return t;
    });
  }

  Tally total;
  for (const auto& t : tallies) total.merge(t);
  std::sort(total.discrepancies.begin(), total.discrepancies.end());

  VerificationReport report;
  report.modulus = n;
  report.options = options;
  report.orbit_count = total.orbit_count;
  report.spectral_count = total.spectral_count;
  report.tile_count = total.tile_count;
  report.subset_count = total.subset_count;
  report.spectral_subset_count = total.spectral_subset_count;
  report.tile_subset_count = total.tile_subset_count;
  report.discrepancies = std::move(total.discrepancies);
  report.checks = total.checks;
  report.tile_method = classifier.uses_squarefree_test() ? "squarefree_coset_test" : "exact_cover";
  report.masks_scanned = total.masks_scanned;
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace fuglede
