#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fuglede/number_theory.hpp"

namespace fuglede {

/// A residue in [0, N).
using Element = std::uint64_t;

/// The cyclic group Z_N together with the factorization of N.
class CyclicGroup {
 public:
  explicit CyclicGroup(std::uint64_t modulus);

  std::uint64_t modulus() const { return modulus_; }
  const std::vector<PrimePower>& factors() const { return factors_; }
  /// Distinct primes, ascending.
  std::vector<std::uint64_t> primes() const;
  std::size_t prime_count() const { return factors_.size(); }
  bool squarefree() const { return squarefree_; }

  /// Order of x in the additive group: N / gcd(x, N).
  std::uint64_t order_of(Element x) const;
  std::vector<std::uint64_t> divisors() const;
  /// Units of Z_N, ascending.
  std::vector<Element> units() const;

  Element add(Element x, Element y) const { return (x + y) % modulus_; }
  Element sub(Element x, Element y) const { return (x + modulus_ - y) % modulus_; }
  Element mul(Element x, Element y) const { return mul_mod(x, y, modulus_); }
  Element neg(Element x) const { return (modulus_ - x) % modulus_; }

  bool operator==(const CyclicGroup& other) const { return modulus_ == other.modulus_; }

 private:
  std::uint64_t modulus_;
  std::vector<PrimePower> factors_;
  bool squarefree_;
};

/// Residues (x mod p_1, ..., x mod p_k) of an element of a squarefree Z_N.
struct CrtCoords {
  std::vector<std::uint64_t> coords;
  bool operator==(const CrtCoords&) const = default;
};

/// Multiplicity vector over Z_N. Sets are the multisets with all multiplicities <= 1.
class IndicatorMultiset {
 public:
  explicit IndicatorMultiset(const CyclicGroup& group);
  IndicatorMultiset(const CyclicGroup& group, std::vector<std::uint64_t> multiplicities);

  /// Elements are reduced mod N; repeats raise the multiplicity.
  static IndicatorMultiset from_elements(const CyclicGroup& group, std::span<const Element> elements);
  static IndicatorMultiset from_elements(const CyclicGroup& group, std::initializer_list<Element> elements);
  /// Bit i of mask is element i. Requires N <= 64.
  static IndicatorMultiset from_mask(const CyclicGroup& group, std::uint64_t mask);
  static IndicatorMultiset full(const CyclicGroup& group);

  const CyclicGroup& group() const { return group_; }
  std::uint64_t modulus() const { return group_.modulus(); }
  std::uint64_t multiplicity(Element x) const { return mult_[x]; }
  std::span<const std::uint64_t> multiplicities() const { return mult_; }
  std::uint64_t cardinality() const { return cardinality_; }
  bool empty() const { return cardinality_ == 0; }
  bool is_set() const;
  bool contains(Element x) const { return mult_[x % mult_.size()] > 0; }

  void add(Element x, std::uint64_t count = 1);

  /// Sorted elements, repeated according to multiplicity.
  std::vector<Element> elements() const;
  /// Sorted distinct elements.
  std::vector<Element> support() const;
  /// Bitmask of the support. Requires N <= 64.
  std::uint64_t mask() const;

  bool operator==(const IndicatorMultiset& other) const {
    return group_ == other.group_ && mult_ == other.mult_;
  }

 private:
  CyclicGroup group_;
  std::vector<std::uint64_t> mult_;
  std::uint64_t cardinality_ = 0;
};

CrtCoords crt_coords(const CyclicGroup& g, Element x);
/// Inverse of crt_coords.
Element crt_element(const CyclicGroup& g, const CrtCoords& c);

/// Number of prime coordinates in which x and y differ.
unsigned hamming(const CyclicGroup& g, Element x, Element y);

/// Canonical multiplier k with k = 0 mod N/m and k = 1 mod m.
std::uint64_t projection_multiplier(const CyclicGroup& g, std::uint64_t m);

/// Pushes U forward along x -> k*x onto the order-m subgroup, returned as a
/// multiset on Z_N supported on (N/m)Z_N.
IndicatorMultiset project(const IndicatorMultiset& u, std::uint64_t m);

/// Same projection, re-indexed onto Z_m (subgroup element (N/m)*j becomes j).
IndicatorMultiset project_to_quotient(const IndicatorMultiset& u, std::uint64_t m);

/// Multiplicity of d is sum_x U(x) U(x + d).
IndicatorMultiset difference_multiset(const IndicatorMultiset& u);

/// Image of U under y = unit*x + shift.
IndicatorMultiset affine_image(const IndicatorMultiset& u, Element shift, Element unit);

/// Subgroup of Z_N generated by the given elements, as its order.
std::uint64_t generated_subgroup_order(const CyclicGroup& g, std::span<const Element> elements);

}  // namespace fuglede
