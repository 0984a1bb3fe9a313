#include "fuglede/spectra.hpp"

#include <algorithm>
#include <numeric>

#include "fuglede/errors.hpp"
#include "fuglede/polynomial.hpp"
#include "fuglede/word_set.hpp"

namespace fuglede {

namespace {

void require_set(const IndicatorMultiset& u, const char* what) {
  if (!u.is_set()) throw ArgumentError(std::string(what) + " must be a set, not a multiset");
}

// Depth-first clique search over candidates in increasing order. Candidate sets
// only ever hold elements above the last chosen vertex, so cliques come out sorted
// and the first complete one is the lexicographically least.
template <std::size_t W>
class CliqueSearch {
 public:
  CliqueSearch(std::vector<WordSet<W>> neighbours, std::size_t target)
      : neighbours_(std::move(neighbours)), target_(target) {}

  bool run(const WordSet<W>& start_candidates, std::vector<Element> seed,
           const std::function<bool(const std::vector<Element>&)>& visit) {
    chosen_ = std::move(seed);
    visit_ = &visit;
    return expand(start_candidates);
  }

 private:
  // Returns true when the visitor asked to stop.
  bool expand(WordSet<W> candidates) {
    if (chosen_.size() == target_) return !(*visit_)(chosen_);
    while (candidates.any()) {
      if (chosen_.size() + candidates.count() < target_) return false;
      const std::size_t v = candidates.lowest();
      candidates.reset(v);
      chosen_.push_back(v);
      if (expand(candidates & neighbours_[v])) return true;
      chosen_.pop_back();
    }
    return false;
  }

  std::vector<WordSet<W>> neighbours_;
  std::size_t target_;
  std::vector<Element> chosen_;
  const std::function<bool(const std::vector<Element>&)>* visit_ = nullptr;
};

template <std::size_t W>
std::vector<WordSet<W>> cayley_neighbours(const CyclicGroup& g, const std::vector<Element>& connection) {
  const std::uint64_t n = g.modulus();
  std::vector<WordSet<W>> nbr(n);
  for (Element v = 0; v < n; ++v) {
    for (Element z : connection) nbr[v].set(g.add(v, z));
  }
  return nbr;
}

// Spectra containing 0, lexicographic order.
void search_spectra(const IndicatorMultiset& s, const std::function<bool(const std::vector<Element>&)>& visit) {
  require_set(s, "S");
  if (s.empty()) throw ArgumentError("spectrum search needs a nonempty set");
  const CyclicGroup& g = s.group();
  const ZeroSet z = zero_divisors(s);
  dispatch_words(g.modulus(), [&]<std::size_t W>() {
    auto nbr = cayley_neighbours<W>(g, z.elements);
    WordSet<W> start = nbr[0].above(0);
    CliqueSearch<W> search(std::move(nbr), s.cardinality());
    search.run(start, {0}, visit);
  });
}

IndicatorMultiset set_from(const CyclicGroup& g, const std::vector<Element>& elements) {
  return IndicatorMultiset::from_elements(g, std::span<const Element>(elements));
}

}  // namespace

bool is_spectrum(const IndicatorMultiset& s, const IndicatorMultiset& lambda) {
  require_set(s, "S");
  require_set(lambda, "Lambda");
  if (!(s.group() == lambda.group())) throw ArgumentError("S and Lambda live on different groups");
  if (s.cardinality() != lambda.cardinality()) return false;
  const CyclicGroup& g = s.group();
  const ZeroSet z = zero_divisors(s);
  const auto elems = lambda.support();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      if (!z.contains_order(g.order_of(g.sub(elems[j], elems[i])))) return false;
    }
  }
  return true;
}

std::optional<IndicatorMultiset> find_spectrum(const IndicatorMultiset& s) {
  std::optional<IndicatorMultiset> found;
  search_spectra(s, [&](const std::vector<Element>& clique) {
    found = set_from(s.group(), clique);
    return false;
  });
  return found;
}

void for_each_spectrum(const IndicatorMultiset& s, const std::function<bool(const IndicatorMultiset&)>& visit) {
  search_spectra(s, [&](const std::vector<Element>& clique) { return visit(set_from(s.group(), clique)); });
}

std::optional<IndicatorMultiset> find_coset_union_spectrum(const IndicatorMultiset& s, std::uint64_t p) {
  require_set(s, "S");
  const CyclicGroup& g = s.group();
  const std::uint64_t n = g.modulus();
  if (!is_prime(p) || n % p != 0) throw ArgumentError("p must be a prime divisor of N");
  if (s.cardinality() % p != 0) return std::nullopt;
  const ZeroSet z = zero_divisors(s);
  // The subgroup of order p must sit inside Z(S) u {0}.
  if (p > 1 && !z.contains_order(p)) return std::nullopt;

  // Cliques of cosets: vertices are the coset representatives r in [0, N/p);
  // r ~ r' iff every element of (r' - r) + Z_p is in Z(S).
  const std::uint64_t reps = n / p;
  const std::uint64_t step = n / p;
  auto coset_compatible = [&](Element r, Element r2) {
    for (std::uint64_t j = 0; j < p; ++j) {
      const Element d = g.add(g.sub(r2, r), j * step);
      if (d == 0 || !z.contains_order(g.order_of(d))) return false;
    }
    return true;
  };
  std::optional<IndicatorMultiset> found;
  dispatch_words(reps, [&]<std::size_t W>() {
    std::vector<WordSet<W>> nbr(reps);
    for (Element r = 0; r < reps; ++r) {
      for (Element r2 = 0; r2 < reps; ++r2) {
        if (r != r2 && coset_compatible(r, r2)) nbr[r].set(r2);
      }
    }
    WordSet<W> start = nbr[0].above(0);
    CliqueSearch<W> search(std::move(nbr), s.cardinality() / p);
    search.run(start, {0}, [&](const std::vector<Element>& cosets) {
      IndicatorMultiset lambda(g);
      for (Element r : cosets) {
        for (std::uint64_t j = 0; j < p; ++j) lambda.add((r + j * step) % n);
      }
      found = lambda;
      return false;
    });
  });
  return found;
}

bool verify_duality(const IndicatorMultiset& s, const IndicatorMultiset& lambda) {
  if (!is_spectrum(s, lambda)) throw ArgumentError("verify_duality needs a spectral pair");
  return is_spectrum(lambda, s);
}

bool is_generating(const IndicatorMultiset& u) {
  if (u.empty()) throw ArgumentError("generation is undefined for the empty set");
  const auto supp = u.support();
  return generated_subgroup_order(u.group(), supp) == u.modulus();
}

bool is_primitive(const IndicatorMultiset& u) {
  if (u.empty()) throw ArgumentError("primitivity is undefined for the empty set");
  const auto supp = u.support();
  std::vector<Element> diffs;
  for (Element x : supp) diffs.push_back(u.group().sub(x, supp.front()));
  // <U - U> equals <u - u0 : u in U>.
  return generated_subgroup_order(u.group(), diffs) == u.modulus();
}

bool is_union_of_cosets(const IndicatorMultiset& u, std::uint64_t d) {
  const std::uint64_t n = u.modulus();
  if (d == 0 || n % d != 0) throw ArgumentError("coset order must divide N");
  const std::uint64_t step = n / d;
  for (Element x = 0; x < n; ++x) {
    if (u.multiplicity(x) != u.multiplicity((x + step) % n)) return false;
  }
  return true;
}

namespace masks {

std::optional<std::uint64_t> find_clique(std::uint64_t n, std::uint64_t zero_set, unsigned size) {
  if (size == 0) return std::uint64_t{0};
  std::vector<WordSet<1>> nbr(n);
  for (Element v = 0; v < n; ++v) nbr[v].w[0] = rotate(zero_set, v, n);
  WordSet<1> start = nbr[0].above(0);
  std::optional<std::uint64_t> found;
  CliqueSearch<1> search(std::move(nbr), size);
  search.run(start, {0}, [&](const std::vector<Element>& clique) {
    std::uint64_t m = 0;
    for (Element x : clique) m |= std::uint64_t{1} << x;
    found = m;
    return false;
  });
  return found;
}

bool is_spectrum(const ZeroSetKernel& kernel, std::uint64_t s, std::uint64_t lambda) {
  if (std::popcount(s) != std::popcount(lambda)) return false;
  const std::uint64_t n = kernel.group().modulus();
  const std::uint64_t z = kernel.zero_set(s);
  const std::uint64_t diff = differences(lambda, n) & ~std::uint64_t{1};
  return (diff & ~z) == 0;
}

std::uint64_t differences(std::uint64_t s, std::uint64_t n) {
  std::uint64_t out = 0;
  std::uint64_t rest = s;
  while (rest) {
    const unsigned x = static_cast<unsigned>(std::countr_zero(rest));
    rest &= rest - 1;
    // S - x
    out |= rotate(s, n - x, n);
  }
  return out;
}

}  // namespace masks

}  // namespace fuglede
