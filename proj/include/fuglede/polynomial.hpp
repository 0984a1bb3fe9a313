#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "fuglede/group.hpp"

namespace fuglede {

using BigInt = mpz_class;

/// Dense integer polynomial; index i holds the coefficient of x^i.
using IntPoly = std::vector<BigInt>;

namespace poly {

/// Drops trailing zero coefficients. The zero polynomial is empty.
void trim(IntPoly& a);
IntPoly multiply(const IntPoly& a, const IntPoly& b);

struct DivMod {
  IntPoly quotient;
  IntPoly remainder;
};

/// Division by a monic polynomial over Z.
DivMod divmod_monic(const IntPoly& a, const IntPoly& monic_divisor);

/// Coefficients reduced into [0, p).
IntPoly reduce_mod_p(const IntPoly& a, std::uint64_t p);
IntPoly multiply_mod_p(const IntPoly& a, const IntPoly& b, std::uint64_t p);
/// Remainder of a modulo a monic divisor, over F_p.
IntPoly remainder_mod_p(const IntPoly& a, const IntPoly& monic_divisor, std::uint64_t p);
IntPoly pow_mod_p(const IntPoly& a, unsigned exponent, std::uint64_t p);

/// Coefficients of a folded onto residues mod x^e - 1 (length e).
IntPoly fold(const IntPoly& a, std::uint64_t e);

BigInt evaluate_at_one(const IntPoly& a);

}  // namespace poly

/// Integer coefficient vector of length N, read modulo x^N - 1.
struct MaskPolynomial {
  CyclicGroup group;
  IntPoly coeffs;

  explicit MaskPolynomial(const CyclicGroup& g) : group(g), coeffs(g.modulus(), 0) {}
  MaskPolynomial(const CyclicGroup& g, IntPoly c);

  BigInt evaluate_at_one() const { return poly::evaluate_at_one(coeffs); }
  bool is_zero() const;
};

/// Phi_d with exact coefficients; leading coefficient 1, length phi(d) + 1.
struct CyclotomicPoly {
  std::uint64_t index;
  IntPoly coeffs;
  std::uint64_t degree() const { return coeffs.size() - 1; }
};

/// Memoized per process; safe to call concurrently.
const CyclotomicPoly& cyclotomic(std::uint64_t d);

MaskPolynomial mask_of(const IndicatorMultiset& u);

/// Phi_e | m in Z[x]. Requires e | N and e > 1.
bool divides_cyclotomic(const MaskPolynomial& m, std::uint64_t e);

/// Phi_e | m in F_p[x]. Requires e | N, e > 1 and p prime.
bool divides_cyclotomic_mod_p(const MaskPolynomial& m, std::uint64_t e, std::uint64_t p);

/// Cyclic convolution, i.e. the product modulo x^N - 1.
MaskPolynomial convolve(const MaskPolynomial& a, const MaskPolynomial& b);

struct ZeroSet {
  /// Divisors e > 1 of N with Phi_e | m_U, ascending.
  std::vector<std::uint64_t> divisors;
  /// Nonzero x whose order lies in `divisors`, ascending.
  std::vector<Element> elements;

  bool contains_order(std::uint64_t e) const;
};

ZeroSet zero_divisors(const IndicatorMultiset& u);

/// Coset-cover form of a multiset on Z_pq: in CRT coordinates (i mod p, j mod q)
/// the multiplicity is alpha[i] + beta[j]. alpha[i] counts the Z_q-coset
/// {x = i mod p}, beta[j] the Z_p-coset {x = j mod q}.
struct LamLeungDecomposition {
  std::uint64_t p;
  std::uint64_t q;
  std::vector<std::uint64_t> alpha;
  std::vector<std::uint64_t> beta;

  std::uint64_t z_q_coset_count() const;
  std::uint64_t z_p_coset_count() const;
  /// Multiset on Z_pq rebuilt from the coset multiplicities.
  IndicatorMultiset rebuild() const;
};

/// std::nullopt when Phi_pq does not divide m_U. U must live on Z_pq.
std::optional<LamLeungDecomposition> lam_leung_decompose(const IndicatorMultiset& u, std::uint64_t p, std::uint64_t q);

}  // namespace fuglede
