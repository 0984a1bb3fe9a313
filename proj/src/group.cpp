#include "fuglede/group.hpp"

#include <algorithm>
#include <numeric>

#include "fuglede/errors.hpp"

namespace fuglede {

namespace {

void require_squarefree(const CyclicGroup& g, const char* op) {
  if (!g.squarefree()) {
    throw UnsupportedStructureError(std::string(op) + " needs a squarefree modulus, got " +
                                    std::to_string(g.modulus()));
  }
}

void require_same_group(const IndicatorMultiset& u, Element x) {
  if (x >= u.modulus()) throw ArgumentError("element " + std::to_string(x) + " outside Z_" + std::to_string(u.modulus()));
}

}  // namespace

CyclicGroup::CyclicGroup(std::uint64_t modulus) : modulus_(modulus) {
  if (modulus == 0) throw ArgumentError("modulus must be positive");
  factors_ = factorize(modulus);
  squarefree_ = std::all_of(factors_.begin(), factors_.end(), [](const PrimePower& pp) { return pp.exponent == 1; });
}

std::vector<std::uint64_t> CyclicGroup::primes() const {
  std::vector<std::uint64_t> out;
  out.reserve(factors_.size());
  for (const auto& pp : factors_) out.push_back(pp.prime);
  return out;
}

std::uint64_t CyclicGroup::order_of(Element x) const { return modulus_ / std::gcd(x % modulus_, modulus_); }

std::vector<std::uint64_t> CyclicGroup::divisors() const { return fuglede::divisors(modulus_); }

std::vector<Element> CyclicGroup::units() const {
  std::vector<Element> out;
  for (Element u = 0; u < modulus_; ++u) {
    if (std::gcd(u, modulus_) == 1) out.push_back(u);
  }
  if (modulus_ == 1) out = {0};
  return out;
}

IndicatorMultiset::IndicatorMultiset(const CyclicGroup& group) : group_(group), mult_(group.modulus(), 0) {}

IndicatorMultiset::IndicatorMultiset(const CyclicGroup& group, std::vector<std::uint64_t> multiplicities)
    : group_(group), mult_(std::move(multiplicities)) {
  if (mult_.size() != group.modulus()) throw ArgumentError("multiplicity vector length must equal the modulus");
  for (auto m : mult_) cardinality_ = checked_add(cardinality_, m);
}

IndicatorMultiset IndicatorMultiset::from_elements(const CyclicGroup& group, std::span<const Element> elements) {
  IndicatorMultiset out(group);
  for (auto x : elements) out.add(x % group.modulus());
  return out;
}

IndicatorMultiset IndicatorMultiset::from_elements(const CyclicGroup& group, std::initializer_list<Element> elements) {
  return from_elements(group, std::span<const Element>(elements.begin(), elements.size()));
}

IndicatorMultiset IndicatorMultiset::from_mask(const CyclicGroup& group, std::uint64_t mask) {
  if (group.modulus() > 64) throw ArgumentError("bitmask sets need N <= 64");
  IndicatorMultiset out(group);
  for (Element x = 0; x < group.modulus(); ++x) {
    if ((mask >> x) & 1u) out.add(x);
  }
  return out;
}

IndicatorMultiset IndicatorMultiset::full(const CyclicGroup& group) {
  return IndicatorMultiset(group, std::vector<std::uint64_t>(group.modulus(), 1));
}

bool IndicatorMultiset::is_set() const {
  return std::all_of(mult_.begin(), mult_.end(), [](std::uint64_t m) { return m <= 1; });
}

void IndicatorMultiset::add(Element x, std::uint64_t count) {
  require_same_group(*this, x);
  mult_[x] = checked_add(mult_[x], count);
  cardinality_ = checked_add(cardinality_, count);
}

std::vector<Element> IndicatorMultiset::elements() const {
  std::vector<Element> out;
  out.reserve(cardinality_);
  for (Element x = 0; x < mult_.size(); ++x) out.insert(out.end(), mult_[x], x);
  return out;
}

std::vector<Element> IndicatorMultiset::support() const {
  std::vector<Element> out;
  for (Element x = 0; x < mult_.size(); ++x) {
    if (mult_[x] > 0) out.push_back(x);
  }
  return out;
}

std::uint64_t IndicatorMultiset::mask() const {
  if (mult_.size() > 64) throw ArgumentError("bitmask sets need N <= 64");
  std::uint64_t m = 0;
  for (Element x = 0; x < mult_.size(); ++x) {
    if (mult_[x] > 0) m |= std::uint64_t{1} << x;
  }
  return m;
}

CrtCoords crt_coords(const CyclicGroup& g, Element x) {
  require_squarefree(g, "crt_coords");
  if (x >= g.modulus()) throw ArgumentError("element outside group");
  CrtCoords c;
  for (const auto& pp : g.factors()) c.coords.push_back(x % pp.prime);
  return c;
}

Element crt_element(const CyclicGroup& g, const CrtCoords& c) {
  require_squarefree(g, "crt_element");
  const auto& fs = g.factors();
  if (c.coords.size() != fs.size()) throw ArgumentError("coordinate count does not match prime count");
  const std::uint64_t n = g.modulus();
  Element x = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::uint64_t p = fs[i].prime;
    if (c.coords[i] >= p) throw ArgumentError("coordinate out of range");
    const std::uint64_t rest = n / p;
    const std::uint64_t basis = mul_mod(rest, mod_inverse(rest % p, p), n);
    x = (x + mul_mod(basis, c.coords[i], n)) % n;
  }
  return x;
}

unsigned hamming(const CyclicGroup& g, Element x, Element y) {
  require_squarefree(g, "hamming");
  unsigned d = 0;
  for (const auto& pp : g.factors()) d += (x % pp.prime) != (y % pp.prime);
  return d;
}

std::uint64_t projection_multiplier(const CyclicGroup& g, std::uint64_t m) {
  const std::uint64_t n = g.modulus();
  if (m == 0 || n % m != 0) throw ArgumentError(std::to_string(m) + " does not divide " + std::to_string(n));
  const std::uint64_t cofactor = n / m;
  if (std::gcd(m, cofactor) != 1) {
    throw UnsupportedStructureError("projection onto Z_" + std::to_string(m) + " needs gcd(m, N/m) = 1");
  }
  if (m == 1) return 0;
  // k = cofactor * (cofactor^{-1} mod m): zero mod N/m, one mod m.
  return mul_mod(cofactor, mod_inverse(cofactor % m, m), n);
}

IndicatorMultiset project(const IndicatorMultiset& u, std::uint64_t m) {
  const CyclicGroup& g = u.group();
  const std::uint64_t k = projection_multiplier(g, m);
  IndicatorMultiset out(g);
  for (Element x = 0; x < g.modulus(); ++x) {
    if (u.multiplicity(x) > 0) out.add(g.mul(k, x), u.multiplicity(x));
  }
  return out;
}

IndicatorMultiset project_to_quotient(const IndicatorMultiset& u, std::uint64_t m) {
  const IndicatorMultiset p = project(u, m);
  const std::uint64_t step = u.modulus() / m;
  IndicatorMultiset out{CyclicGroup(m)};
  for (Element j = 0; j < m; ++j) {
    if (p.multiplicity(j * step) > 0) out.add(j, p.multiplicity(j * step));
  }
  return out;
}

IndicatorMultiset difference_multiset(const IndicatorMultiset& u) {
  const CyclicGroup& g = u.group();
  IndicatorMultiset out(g);
  const auto supp = u.support();
  for (Element x : supp) {
    for (Element y : supp) {
      out.add(g.sub(y, x), checked_mul(u.multiplicity(x), u.multiplicity(y)));
    }
  }
  return out;
}

IndicatorMultiset affine_image(const IndicatorMultiset& u, Element shift, Element unit) {
  const CyclicGroup& g = u.group();
  const std::uint64_t n = g.modulus();
  if (std::gcd(unit % n, n) != 1 && n != 1) {
    throw ArgumentError(std::to_string(unit) + " is not a unit modulo " + std::to_string(n));
  }
  IndicatorMultiset out(g);
  for (Element x = 0; x < n; ++x) {
    if (u.multiplicity(x) > 0) out.add(g.add(g.mul(unit % n, x), shift % n), u.multiplicity(x));
  }
  return out;
}

std::uint64_t generated_subgroup_order(const CyclicGroup& g, std::span<const Element> elements) {
  std::uint64_t d = g.modulus();
  for (Element x : elements) d = std::gcd(d, x % g.modulus());
  // The subgroup generated is dZ_N with d = gcd(elements, N); its order is N/d.
  return g.modulus() / d;
}

}  // namespace fuglede
