#include "fuglede/cube.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <random>
#include <sstream>
#include <tuple>
#include <utility>

#include "fuglede/errors.hpp"
#include "fuglede/polynomial.hpp"

namespace fuglede {

namespace {

void require_squarefree(const CyclicGroup& g) {
  if (!g.squarefree()) throw UnsupportedStructureError("cube geometry needs a squarefree modulus");
}

// contribution[i][v] is the element with coordinate v at i and 0 elsewhere.
std::vector<std::vector<Element>> crt_contributions(const CyclicGroup& g) {
  const auto primes = g.primes();
  const std::uint64_t n = g.modulus();
  std::vector<std::vector<Element>> out(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    const std::uint64_t rest = n / p;
    const std::uint64_t basis = mul_mod(rest, mod_inverse(rest % p, p), n);
    out[i].resize(p);
    for (std::uint64_t v = 0; v < p; ++v) out[i][v] = mul_mod(basis, v, n);
  }
  return out;
}

std::int64_t checked_signed(std::uint64_t m) {
  if (m > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw ArgumentError("multiplicity too large for an alternating sum");
  }
  return static_cast<std::int64_t>(m);
}

std::int64_t accumulate(std::int64_t acc, std::int64_t term, bool negative) {
  std::int64_t r;
  const bool overflow = negative ? __builtin_sub_overflow(acc, term, &r) : __builtin_add_overflow(acc, term, &r);
  if (overflow) throw ArgumentError("alternating sum overflow");
  return r;
}

// Shared evaluation loop; vertices follow selector order from the low corner.
struct CubeWalker {
  const IndicatorMultiset& b;
  std::vector<std::vector<Element>> contrib;
  std::uint64_t n;

  explicit CubeWalker(const IndicatorMultiset& multiset)
      : b(multiset), contrib(crt_contributions(multiset.group())), n(multiset.modulus()) {}

  std::int64_t low_corner_sum(std::span<const std::size_t> dims, std::span<const std::uint64_t> low,
                              std::span<const std::uint64_t> high, std::span<const std::uint64_t> base) const {
    Element fixed_part = 0;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (std::find(dims.begin(), dims.end(), i) == dims.end()) fixed_part = (fixed_part + contrib[i][base[i]]) % n;
    }
    const std::uint64_t corners = std::uint64_t{1} << dims.size();
    std::int64_t acc = 0;
    for (std::uint64_t sel = 0; sel < corners; ++sel) {
      Element x = fixed_part;
      for (std::size_t t = 0; t < dims.size(); ++t) {
        const std::uint64_t v = ((sel >> t) & 1u) ? high[t] : low[t];
        x += contrib[dims[t]][v];
      }
      x %= n;
      const std::uint64_t mult = b.multiplicity(x);
      if (mult != 0) acc = accumulate(acc, checked_signed(mult), std::popcount(sel) & 1);
    }
    return acc;
  }
};

Cube cube_from(const CyclicGroup& g, std::span<const std::size_t> dims, std::span<const std::uint64_t> low,
               std::span<const std::uint64_t> high, std::vector<std::uint64_t> base) {
  std::vector<CubeAxis> axes;
  for (std::size_t t = 0; t < dims.size(); ++t) {
    axes.push_back({dims[t], low[t], high[t]});
    base[dims[t]] = low[t];
  }
  return Cube{g, std::move(axes), std::move(base)};
}

}  // namespace

Element Cube::vertex(std::uint64_t selector) const {
  CrtCoords c{base};
  for (std::size_t t = 0; t < axes.size(); ++t) {
    c.coords[axes[t].coordinate] = ((selector >> t) & 1u) ? axes[t].high : axes[t].low;
  }
  return crt_element(group, c);
}

std::vector<Element> Cube::vertices() const {
  std::vector<Element> out;
  const std::uint64_t corners = std::uint64_t{1} << axes.size();
  out.reserve(corners);
  for (std::uint64_t sel = 0; sel < corners; ++sel) out.push_back(vertex(sel));
  return out;
}

bool Cube::has_vertex(Element x) const {
  if (x >= group.modulus()) return false;
  const CrtCoords c = crt_coords(group, x);
  for (std::size_t i = 0; i < base.size(); ++i) {
    auto axis = std::find_if(axes.begin(), axes.end(), [i](const CubeAxis& a) { return a.coordinate == i; });
    if (axis == axes.end()) {
      if (c.coords[i] != base[i]) return false;
    } else if (c.coords[i] != axis->low && c.coords[i] != axis->high) {
      return false;
    }
  }
  return true;
}

std::string Cube::describe() const {
  const auto primes = group.primes();
  std::ostringstream os;
  os << "cube in Z_" << group.modulus() << " [";
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (i) os << ", ";
    auto axis = std::find_if(axes.begin(), axes.end(), [i](const CubeAxis& a) { return a.coordinate == i; });
    if (axis == axes.end()) {
      os << base[i];
    } else {
      os << "{" << axis->low << "," << axis->high << "}";
    }
    os << " mod " << primes[i];
  }
  os << "]";
  return os.str();
}

Cube make_cube(const CyclicGroup& g, std::vector<CubeAxis> axes, std::vector<std::uint64_t> base) {
  require_squarefree(g);
  const auto primes = g.primes();
  if (base.size() != primes.size()) throw ArgumentError("cube base needs one value per prime");
  std::sort(axes.begin(), axes.end(), [](const CubeAxis& a, const CubeAxis& b) { return a.coordinate < b.coordinate; });
  for (std::size_t t = 0; t < axes.size(); ++t) {
    auto& a = axes[t];
    if (a.coordinate >= primes.size()) throw ArgumentError("cube axis outside the coordinate range");
    if (t > 0 && axes[t - 1].coordinate == a.coordinate) throw ArgumentError("repeated cube axis");
    if (a.low == a.high) throw ArgumentError("cube axis needs two distinct residues");
    if (a.low > a.high) std::swap(a.low, a.high);
    if (a.high >= primes[a.coordinate]) throw ArgumentError("cube residue out of range");
    base[a.coordinate] = a.low;
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i] >= primes[i]) throw ArgumentError("cube base value out of range");
  }
  return Cube{g, std::move(axes), std::move(base)};
}

Cube cube_between(const CyclicGroup& g, Element x, Element y) {
  require_squarefree(g);
  if (x == y) throw ArgumentError("cube_between needs distinct elements");
  const CrtCoords cx = crt_coords(g, x);
  const CrtCoords cy = crt_coords(g, y);
  std::vector<CubeAxis> axes;
  for (std::size_t i = 0; i < cx.coords.size(); ++i) {
    if (cx.coords[i] != cy.coords[i]) axes.push_back({i, cx.coords[i], cy.coords[i]});
  }
  return make_cube(g, std::move(axes), cx.coords);
}

std::int64_t alternating_sum(const IndicatorMultiset& b, const Cube& cube, Element c0) {
  if (!(b.group() == cube.group)) throw ArgumentError("cube and multiset live on different groups");
  if (!cube.has_vertex(c0)) throw ArgumentError(std::to_string(c0) + " is not a vertex of the cube");
  std::int64_t acc = 0;
  for (Element v : cube.vertices()) {
    const std::uint64_t mult = b.multiplicity(v);
    if (mult != 0) acc = accumulate(acc, checked_signed(mult), hamming(cube.group, c0, v) & 1u);
  }
  return acc;
}

std::string to_string(CubeCheckMode mode) { return mode == CubeCheckMode::exhaustive ? "exhaustive" : "sampled"; }

std::uint64_t cube_count(const CyclicGroup& g, std::span<const std::size_t> dims, bool restricted_to_coset) {
  const auto primes = g.primes();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const bool active = std::find(dims.begin(), dims.end(), i) != dims.end();
    if (active) {
      count = checked_mul(count, primes[i] * (primes[i] - 1) / 2);
    } else if (!restricted_to_coset) {
      count = checked_mul(count, primes[i]);
    }
  }
  return count;
}

CubeRuleResult check_cube_rule(const IndicatorMultiset& b, std::span<const std::size_t> dims_in,
                               const std::optional<CrtCoords>& coset_fix, const CubeCheckOptions& options) {
  const CyclicGroup& g = b.group();
  require_squarefree(g);
  const auto primes = g.primes();
  const std::size_t k = primes.size();
  std::vector<std::size_t> dims(dims_in.begin(), dims_in.end());
  std::sort(dims.begin(), dims.end());
  if (dims.empty()) throw ArgumentError("cube rule needs at least one active coordinate");
  if (std::adjacent_find(dims.begin(), dims.end()) != dims.end() || dims.back() >= k) {
    throw ArgumentError("cube dimensions must be distinct coordinate indices");
  }
  if (coset_fix && coset_fix->coords.size() != k) throw ArgumentError("coset_fix needs one value per prime");

  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < k; ++i) {
    if (!std::binary_search(dims.begin(), dims.end(), i)) others.push_back(i);
  }

  CubeWalker walker(b);
  CubeRuleResult result;
  result.mode = options.mode;
  const std::size_t d = dims.size();
  std::vector<std::uint64_t> base(k, 0), low(d), high(d);
  if (coset_fix) {
    for (std::size_t i : others) {
      if (coset_fix->coords[i] >= primes[i]) throw ArgumentError("coset_fix value out of range");
      base[i] = coset_fix->coords[i];
    }
  }

  auto test_current = [&]() {
    ++result.cubes_checked;
    if (walker.low_corner_sum(dims, low, high, base) != 0) {
      result.passed = false;
      result.counterexample = cube_from(g, dims, low, high, base);
      return false;
    }
    return true;
  };

  if (options.mode == CubeCheckMode::sampled) {
    std::mt19937_64 rng(options.seed);
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      if (!coset_fix) {
        for (std::size_t i : others) base[i] = std::uniform_int_distribution<std::uint64_t>(0, primes[i] - 1)(rng);
      }
      for (std::size_t t = 0; t < d; ++t) {
        const std::uint64_t p = primes[dims[t]];
        const std::uint64_t a = std::uniform_int_distribution<std::uint64_t>(0, p - 1)(rng);
        std::uint64_t c = std::uniform_int_distribution<std::uint64_t>(0, p - 2)(rng);
        if (c >= a) ++c;
        low[t] = std::min(a, c);
        high[t] = std::max(a, c);
      }
      if (!test_current()) return result;
    }
    return result;
  }

  // Fixed coordinates vary slowest (first index slowest), then axis pairs.
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> pairs(d);
  for (std::size_t t = 0; t < d; ++t) {
    const std::uint64_t p = primes[dims[t]];
    for (std::uint64_t a = 0; a < p; ++a) {
      for (std::uint64_t c = a + 1; c < p; ++c) pairs[t].emplace_back(a, c);
    }
  }
  const std::vector<std::size_t> free_fixed = coset_fix ? std::vector<std::size_t>{} : others;
  std::vector<std::size_t> pick(d);
  while (true) {
    std::fill(pick.begin(), pick.end(), 0);
    bool more_pairs = true;
    while (more_pairs) {
      for (std::size_t t = 0; t < d; ++t) std::tie(low[t], high[t]) = pairs[t][pick[t]];
      if (!test_current()) return result;
      more_pairs = false;
      for (std::size_t t = d; t-- > 0;) {
        if (++pick[t] < pairs[t].size()) {
          more_pairs = true;
          break;
        }
        pick[t] = 0;
      }
    }
    bool more_fixed = false;
    for (std::size_t idx = free_fixed.size(); idx-- > 0;) {
      const std::size_t coord = free_fixed[idx];
      if (++base[coord] < primes[coord]) {
        more_fixed = true;
        break;
      }
      base[coord] = 0;
    }
    if (!more_fixed) break;
  }
  return result;
}

IndicatorMultiset coset_slice(const IndicatorMultiset& b, std::uint64_t m, Element a) {
  const std::uint64_t n = b.modulus();
  if (m == 0 || n % m != 0) throw ArgumentError(std::to_string(m) + " does not divide " + std::to_string(n));
  const std::uint64_t step = n / m;
  IndicatorMultiset out{CyclicGroup(m)};
  for (std::uint64_t j = 0; j < m; ++j) {
    const std::uint64_t mult = b.multiplicity((a + j * step) % n);
    if (mult) out.add(j, mult);
  }
  return out;
}

SliceCheckResult coset_slice_check(const IndicatorMultiset& b, std::uint64_t m) {
  const CyclicGroup& g = b.group();
  if (!g.squarefree()) throw UnsupportedStructureError("coset_slice_check needs a squarefree modulus");
  const std::uint64_t n = g.modulus();
  if (m <= 1 || n % m != 0) throw ArgumentError("slice order must be a divisor of N greater than 1");

  SliceCheckResult result;
  const MaskPolynomial mask = mask_of(b);
  for (std::uint64_t l : g.divisors()) {
    if (l % m == 0 && !divides_cyclotomic(mask, l)) result.missing_divisors.push_back(l);
  }
  if (!result.missing_divisors.empty()) {
    result.status = SliceCheckResult::Status::hypothesis_failed;
    return result;
  }
  for (Element a = 0; a < n / m; ++a) {
    if (!divides_cyclotomic(mask_of(coset_slice(b, m, a)), m)) {
      result.status = SliceCheckResult::Status::failing_coset;
      result.failing_coset = a;
      return result;
    }
  }
  return result;
}

}  // namespace fuglede
