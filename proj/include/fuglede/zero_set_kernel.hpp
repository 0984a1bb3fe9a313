#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fuglede/group.hpp"

namespace fuglede {

/// Exact cyclotomic divisibility for subsets of Z_N (N <= 64) given as bitmasks.
///
/// For each divisor e > 1 of N the map  S -> m_S mod (x^e - 1, Phi_e)  is linear
/// in the indicator vector, so it is tabulated per byte of the mask. The tables
/// are built from the exact GMP cyclotomics and hold machine integers only after
/// a range check.
class ZeroSetKernel {
 public:
  explicit ZeroSetKernel(const CyclicGroup& g);

  const CyclicGroup& group() const { return group_; }
  /// Divisors e > 1 of N, ascending.
  const std::vector<std::uint64_t>& divisors() const { return divisors_; }
  /// Bitmask of the elements of order divisors()[index].
  std::uint64_t order_class(std::size_t index) const { return classes_[index]; }
  std::size_t index_of(std::uint64_t e) const;

  /// Phi_e | m_S for e = divisors()[index].
  bool divides(std::uint64_t set_mask, std::size_t index) const;
  /// Bit i set iff divisors()[i] divides m_S.
  std::uint64_t divisor_bits(std::uint64_t set_mask) const;
  /// Z(S) as a bitmask.
  std::uint64_t zero_set(std::uint64_t set_mask) const;
  std::uint64_t zero_set_from_divisor_bits(std::uint64_t bits) const;

  /// Writes the reduced residue of m_S mod Phi_e into out (length phi(e)).
  void residue(std::uint64_t set_mask, std::size_t index, std::span<std::int32_t> out) const;
  std::size_t residue_width(std::size_t index) const { return widths_[index]; }

 private:
  CyclicGroup group_;
  std::size_t chunks_;
  std::vector<std::uint64_t> divisors_;
  std::vector<std::uint64_t> classes_;
  std::vector<std::size_t> widths_;
  std::vector<std::size_t> offsets_;
  // Layout per divisor: [chunk][byte][width].
  std::vector<std::int32_t> table_;
};

}  // namespace fuglede
