#include "fuglede/tilings.hpp"

#include <algorithm>
#include <bit>
#include <vector>

#include "fuglede/errors.hpp"
#include "fuglede/polynomial.hpp"
#include "fuglede/word_set.hpp"

namespace fuglede {

namespace {

// Builds T in increasing order. At each node every uncovered element must still
// be reachable by some admissible translate above the last chosen one; the first
// complete cover found is therefore the lexicographically least complement.
template <std::size_t W>
class CoverSearch {
 public:
  CoverSearch(std::uint64_t n, std::vector<WordSet<W>> translates, std::size_t needed)
      : n_(n), translates_(std::move(translates)), needed_(needed) {
    for (std::size_t x = 0; x < n_; ++x) full_.set(x);
  }

  std::optional<std::vector<Element>> run() {
    chosen_ = {0};
    if (expand(translates_[0], 0)) return chosen_;
    return std::nullopt;
  }

 private:
  bool expand(const WordSet<W>& covered, std::size_t last) {
    if (chosen_.size() == needed_) return covered == full_;
    const WordSet<W> uncovered = full_.without(covered);
    // Admissible translates above `last`, and what they could still cover.
    std::vector<std::size_t> options;
    WordSet<W> reachable;
    for (std::size_t t = last + 1; t < n_; ++t) {
      if (!translates_[t].intersects(covered)) {
        options.push_back(t);
        reachable = reachable | translates_[t];
      }
    }
    if (!reachable.covers(uncovered)) return false;
    if (options.size() + chosen_.size() < needed_) return false;
    for (std::size_t t : options) {
      chosen_.push_back(t);
      if (expand(covered | translates_[t], t)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  std::uint64_t n_;
  std::vector<WordSet<W>> translates_;
  std::size_t needed_;
  WordSet<W> full_;
  std::vector<Element> chosen_;
};

}  // namespace

bool is_tiling_pair(const IndicatorMultiset& s, const IndicatorMultiset& t) {
  if (!(s.group() == t.group())) throw ArgumentError("S and T live on different groups");
  const MaskPolynomial c = convolve(mask_of(s), mask_of(t));
  return std::all_of(c.coeffs.begin(), c.coeffs.end(), [](const BigInt& x) { return x == 1; });
}

std::optional<IndicatorMultiset> find_complement(const IndicatorMultiset& s) {
  if (!s.is_set()) throw ArgumentError("tiling complement search needs a set");
  if (s.empty()) throw ArgumentError("tiling complement search needs a nonempty set");
  if (!s.contains(0)) throw ArgumentError("translate S so that it contains 0 first");
  const CyclicGroup& g = s.group();
  const std::uint64_t n = g.modulus();
  if (n % s.cardinality() != 0) return std::nullopt;

  const auto elems = s.support();
  return dispatch_words(n, [&]<std::size_t W>() -> std::optional<IndicatorMultiset> {
    std::vector<WordSet<W>> translates(n);
    for (Element t = 0; t < n; ++t) {
      for (Element x : elems) translates[t].set(g.add(x, t));
    }
    CoverSearch<W> search(n, std::move(translates), n / s.cardinality());
    auto found = search.run();
    if (!found) return std::nullopt;
    return IndicatorMultiset::from_elements(g, std::span<const Element>(*found));
  });
}

bool squarefree_tile_test(const IndicatorMultiset& s) {
  const CyclicGroup& g = s.group();
  if (!g.squarefree()) throw UnsupportedStructureError("squarefree_tile_test needs a squarefree modulus");
  if (!s.is_set()) throw ArgumentError("squarefree_tile_test needs a set");
  const std::uint64_t k = s.cardinality();
  if (k == 0 || g.modulus() % k != 0) return false;
  std::vector<bool> hit(k, false);
  for (Element x : s.support()) {
    if (hit[x % k]) return false;
    hit[x % k] = true;
  }
  return true;
}

namespace masks {

std::optional<std::uint64_t> find_complement(std::uint64_t n, std::uint64_t s) {
  if (!(s & 1u)) throw ArgumentError("translate S so that it contains 0 first");
  const auto k = static_cast<std::uint64_t>(std::popcount(s));
  if (n % k != 0) return std::nullopt;
  std::vector<WordSet<1>> translates(n);
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (Element t = 0; t < n; ++t) {
    translates[t].w[0] = t == 0 ? s : (((s << t) | (s >> (n - t))) & full);
  }
  CoverSearch<1> search(n, std::move(translates), n / k);
  auto found = search.run();
  if (!found) return std::nullopt;
  std::uint64_t m = 0;
  for (Element t : *found) m |= std::uint64_t{1} << t;
  return m;
}

bool squarefree_tile_test(std::uint64_t n, std::uint64_t s) {
  const auto k = static_cast<std::uint64_t>(std::popcount(s));
  if (k == 0 || n % k != 0) return false;
  std::uint64_t hit = 0;
  while (s) {
    const auto x = static_cast<std::uint64_t>(std::countr_zero(s));
    s &= s - 1;
    const std::uint64_t bit = std::uint64_t{1} << (x % k);
    if (hit & bit) return false;
    hit |= bit;
  }
  return true;
}

}  // namespace masks

}  // namespace fuglede
