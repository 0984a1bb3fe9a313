#include "fuglede/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

#include "fuglede/errors.hpp"

namespace fuglede {

namespace poly {

void trim(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

DivMod divmod_monic(const IntPoly& a, const IntPoly& monic_divisor) {
  IntPoly d = monic_divisor;
  trim(d);
  if (d.empty() || d.back() != 1) throw ArgumentError("divisor must be monic");
  IntPoly r = a;
  trim(r);
  const std::size_t dd = d.size() - 1;
  if (r.size() <= dd) return {{}, r};
  IntPoly q(r.size() - dd, 0);
  for (std::size_t k = r.size(); k-- > dd;) {
    const BigInt c = r[k];
    if (c == 0) continue;
    q[k - dd] = c;
    for (std::size_t i = 0; i <= dd; ++i) r[k - dd + i] -= c * d[i];
  }
  trim(q);
  trim(r);
  return {q, r};
}

namespace {

BigInt mod_nonneg(const BigInt& x, std::uint64_t p) {
  BigInt r;
  BigInt pp(static_cast<unsigned long>(p));
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
  return r;
}

}  // namespace

IntPoly reduce_mod_p(const IntPoly& a, std::uint64_t p) {
  IntPoly out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(mod_nonneg(c, p));
  trim(out);
  return out;
}

IntPoly multiply_mod_p(const IntPoly& a, const IntPoly& b, std::uint64_t p) {
  return reduce_mod_p(multiply(a, b), p);
}

IntPoly remainder_mod_p(const IntPoly& a, const IntPoly& monic_divisor, std::uint64_t p) {
  IntPoly d = reduce_mod_p(monic_divisor, p);
  if (d.empty() || d.back() != 1) throw ArgumentError("divisor must be monic mod p");
  IntPoly r = reduce_mod_p(a, p);
  const std::size_t dd = d.size() - 1;
  for (std::size_t k = r.size(); k-- > dd;) {
    const BigInt c = r[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dd; ++i) r[k - dd + i] = mod_nonneg(r[k - dd + i] - c * d[i], p);
  }
  if (r.size() > dd) r.resize(dd);
  trim(r);
  return r;
}

IntPoly pow_mod_p(const IntPoly& a, unsigned exponent, std::uint64_t p) {
  IntPoly result{1};
  IntPoly base = reduce_mod_p(a, p);
  while (exponent > 0) {
    if (exponent & 1u) result = multiply_mod_p(result, base, p);
    exponent >>= 1;
    if (exponent > 0) base = multiply_mod_p(base, base, p);
  }
  return reduce_mod_p(result, p);
}

IntPoly fold(const IntPoly& a, std::uint64_t e) {
  IntPoly out(e, 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i % e] += a[i];
  return out;
}

BigInt evaluate_at_one(const IntPoly& a) {
  BigInt s = 0;
  for (const auto& c : a) s += c;
  return s;
}

}  // namespace poly

MaskPolynomial::MaskPolynomial(const CyclicGroup& g, IntPoly c) : group(g), coeffs(std::move(c)) {
  if (coeffs.size() != g.modulus()) throw ArgumentError("mask polynomial length must equal the modulus");
}

bool MaskPolynomial::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const BigInt& c) { return c == 0; });
}

namespace {

std::mutex& cyclotomic_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::uint64_t, std::unique_ptr<const CyclotomicPoly>>& cyclotomic_cache() {
  static std::map<std::uint64_t, std::unique_ptr<const CyclotomicPoly>> cache;
  return cache;
}

// Caller holds the cache mutex.
const CyclotomicPoly& cyclotomic_locked(std::uint64_t d) {
  auto& cache = cyclotomic_cache();
  if (auto it = cache.find(d); it != cache.end()) return *it->second;

  IntPoly p(d + 1, 0);
  p[0] = -1;
  p[d] = 1;
  for (std::uint64_t e : divisors(d)) {
    if (e == d) continue;
    const auto [q, r] = poly::divmod_monic(p, cyclotomic_locked(e).coeffs);
    if (!r.empty()) {
      throw InternalConsistencyError("nonzero remainder while dividing out Phi_" + std::to_string(e) + " from x^" +
                                     std::to_string(d) + " - 1");
    }
    p = q;
  }
  if (p.size() != euler_phi(d) + 1 || p.back() != 1) {
    throw InternalConsistencyError("Phi_" + std::to_string(d) + " has the wrong degree or is not monic");
  }
  auto [it, inserted] = cache.emplace(d, std::make_unique<const CyclotomicPoly>(CyclotomicPoly{d, std::move(p)}));
  return *it->second;
}

void require_divisor(const MaskPolynomial& m, std::uint64_t e) {
  const std::uint64_t n = m.group.modulus();
  if (e <= 1) throw ArgumentError("cyclotomic index must exceed 1");
  if (n % e != 0) {
    throw ArgumentError("Phi_" + std::to_string(e) + " divisibility is only defined here for e | N = " +
                        std::to_string(n));
  }
}

// Exact test of Phi_e | m on machine integers; nullopt if any value leaves int64.
std::optional<bool> vanishes_mod_cyclotomic_i64(const IntPoly& coeffs, const CyclotomicPoly& phi) {
  const std::uint64_t e = phi.index;
  std::vector<std::int64_t> r(e, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (!coeffs[i].fits_slong_p()) return std::nullopt;
    if (__builtin_add_overflow(r[i % e], coeffs[i].get_si(), &r[i % e])) return std::nullopt;
  }
  std::vector<std::int64_t> d(phi.coeffs.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = phi.coeffs[i].get_si();
  const std::size_t dd = d.size() - 1;
  for (std::size_t k = r.size(); k-- > dd;) {
    const std::int64_t c = r[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dd; ++i) {
      std::int64_t prod;
      if (__builtin_mul_overflow(c, d[i], &prod)) return std::nullopt;
      if (__builtin_sub_overflow(r[k - dd + i], prod, &r[k - dd + i])) return std::nullopt;
    }
  }
  for (std::size_t i = 0; i < dd; ++i) {
    if (r[i] != 0) return false;
  }
  return true;
}

}  // namespace

const CyclotomicPoly& cyclotomic(std::uint64_t d) {
  if (d == 0) throw ArgumentError("cyclotomic index must be positive");
  std::lock_guard lock(cyclotomic_mutex());
  return cyclotomic_locked(d);
}

MaskPolynomial mask_of(const IndicatorMultiset& u) {
  MaskPolynomial m(u.group());
  for (Element x = 0; x < u.modulus(); ++x) m.coeffs[x] = static_cast<unsigned long>(u.multiplicity(x));
  return m;
}

bool divides_cyclotomic(const MaskPolynomial& m, std::uint64_t e) {
  require_divisor(m, e);
  const CyclotomicPoly& phi = cyclotomic(e);
  if (auto fast = vanishes_mod_cyclotomic_i64(m.coeffs, phi)) return *fast;
  const auto folded = poly::fold(m.coeffs, e);
  return poly::divmod_monic(folded, phi.coeffs).remainder.empty();
}

bool divides_cyclotomic_mod_p(const MaskPolynomial& m, std::uint64_t e, std::uint64_t p) {
  require_divisor(m, e);
  if (!is_prime(p)) throw ArgumentError(std::to_string(p) + " is not prime");
  const auto folded = poly::fold(m.coeffs, e);
  return poly::remainder_mod_p(folded, cyclotomic(e).coeffs, p).empty();
}

MaskPolynomial convolve(const MaskPolynomial& a, const MaskPolynomial& b) {
  if (!(a.group == b.group)) throw ArgumentError("convolution of masks on different groups");
  const std::uint64_t n = a.group.modulus();
  MaskPolynomial out(a.group);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::uint64_t j = 0; j < n; ++j) {
      if (b.coeffs[j] == 0) continue;
      out.coeffs[(i + j) % n] += a.coeffs[i] * b.coeffs[j];
    }
  }
  return out;
}

bool ZeroSet::contains_order(std::uint64_t e) const {
  return std::binary_search(divisors.begin(), divisors.end(), e);
}

ZeroSet zero_divisors(const IndicatorMultiset& u) {
  const CyclicGroup& g = u.group();
  const MaskPolynomial m = mask_of(u);
  ZeroSet z;
  for (std::uint64_t e : g.divisors()) {
    if (e > 1 && divides_cyclotomic(m, e)) z.divisors.push_back(e);
  }
  for (Element x = 1; x < g.modulus(); ++x) {
    if (z.contains_order(g.order_of(x))) z.elements.push_back(x);
  }
  return z;
}

std::uint64_t LamLeungDecomposition::z_q_coset_count() const {
  std::uint64_t s = 0;
  for (auto a : alpha) s = checked_add(s, a);
  return s;
}

std::uint64_t LamLeungDecomposition::z_p_coset_count() const {
  std::uint64_t s = 0;
  for (auto b : beta) s = checked_add(s, b);
  return s;
}

namespace {

Element crt_pair(std::uint64_t p, std::uint64_t q, std::uint64_t i, std::uint64_t j) {
  // x = i mod p, x = j mod q.
  const std::uint64_t n = p * q;
  const std::uint64_t ep = mul_mod(q, mod_inverse(q % p, p), n);
  const std::uint64_t eq = mul_mod(p, mod_inverse(p % q, q), n);
  return (mul_mod(ep, i, n) + mul_mod(eq, j, n)) % n;
}

}  // namespace

IndicatorMultiset LamLeungDecomposition::rebuild() const {
  IndicatorMultiset out{CyclicGroup(p * q)};
  for (std::uint64_t i = 0; i < p; ++i) {
    for (std::uint64_t j = 0; j < q; ++j) {
      const std::uint64_t c = checked_add(alpha[i], beta[j]);
      if (c > 0) out.add(crt_pair(p, q, i, j), c);
    }
  }
  return out;
}

std::optional<LamLeungDecomposition> lam_leung_decompose(const IndicatorMultiset& u, std::uint64_t p,
                                                         std::uint64_t q) {
  if (!is_prime(p) || !is_prime(q) || p == q) throw ArgumentError("p and q must be distinct primes");
  if (u.modulus() != p * q) {
    throw ArgumentError("multiset must live on Z_" + std::to_string(p * q) + "; project it first");
  }
  if (!divides_cyclotomic(mask_of(u), p * q)) return std::nullopt;

  std::vector<std::vector<std::uint64_t>> c(p, std::vector<std::uint64_t>(q));
  for (std::uint64_t i = 0; i < p; ++i) {
    for (std::uint64_t j = 0; j < q; ++j) c[i][j] = u.multiplicity(crt_pair(p, q, i, j));
  }

  LamLeungDecomposition d{p, q, std::vector<std::uint64_t>(p), std::vector<std::uint64_t>(q)};
  for (std::uint64_t i = 0; i < p; ++i) d.alpha[i] = *std::min_element(c[i].begin(), c[i].end());
  for (std::uint64_t j = 0; j < q; ++j) d.beta[j] = c[0][j] - d.alpha[0];
  for (std::uint64_t i = 0; i < p; ++i) {
    for (std::uint64_t j = 0; j < q; ++j) {
      if (c[i][j] != d.alpha[i] + d.beta[j]) {
        throw InternalConsistencyError("Phi_pq divides the mask but the multiplicity matrix is not alpha_i + beta_j");
      }
    }
  }
  if (!(d.rebuild() == u)) throw InternalConsistencyError("Lam-Leung reconstruction mismatch");
  return d;
}

}  // namespace fuglede
