#include "fuglede/zero_set_kernel.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "fuglede/errors.hpp"
#include "fuglede/polynomial.hpp"

namespace fuglede {

ZeroSetKernel::ZeroSetKernel(const CyclicGroup& g) : group_(g) {
  const std::uint64_t n = g.modulus();
  if (n > 64) throw ArgumentError("ZeroSetKernel supports N <= 64");
  chunks_ = (n + 7) / 8;

  for (std::uint64_t e : g.divisors()) {
    if (e == 1) continue;
    divisors_.push_back(e);
    std::uint64_t cls = 0;
    for (Element x = 1; x < n; ++x) {
      if (g.order_of(x) == e) cls |= std::uint64_t{1} << x;
    }
    classes_.push_back(cls);

    const CyclotomicPoly& phi = cyclotomic(e);
    const std::size_t width = phi.degree();
    // x^j mod Phi_e for j < e.
    std::vector<std::vector<std::int64_t>> residues(e, std::vector<std::int64_t>(width, 0));
    for (std::uint64_t j = 0; j < e; ++j) {
      IntPoly mono(j + 1, 0);
      mono[j] = 1;
      auto r = poly::divmod_monic(mono, phi.coeffs).remainder;
      for (std::size_t k = 0; k < r.size(); ++k) {
        if (!r[k].fits_slong_p() || abs(r[k]) > 1'000'000) {
          throw UnsupportedStructureError("cyclotomic residue too large for the bitmask kernel");
        }
        residues[j][k] = r[k].get_si();
      }
    }

    offsets_.push_back(table_.size());
    widths_.push_back(width);
    table_.resize(table_.size() + chunks_ * 256 * width, 0);
    std::int32_t* base = table_.data() + offsets_.back();
    for (std::size_t c = 0; c < chunks_; ++c) {
      for (unsigned b = 0; b < 256; ++b) {
        std::int32_t* row = base + (c * 256 + b) * width;
        for (unsigned bit = 0; bit < 8; ++bit) {
          const std::uint64_t x = c * 8 + bit;
          if (!((b >> bit) & 1u) || x >= n) continue;
          const auto& res = residues[x % e];
          for (std::size_t k = 0; k < width; ++k) row[k] += static_cast<std::int32_t>(res[k]);
        }
      }
    }
  }
}

std::size_t ZeroSetKernel::index_of(std::uint64_t e) const {
  auto it = std::lower_bound(divisors_.begin(), divisors_.end(), e);
  if (it == divisors_.end() || *it != e) throw ArgumentError(std::to_string(e) + " is not a divisor > 1 of N");
  return static_cast<std::size_t>(it - divisors_.begin());
}

void ZeroSetKernel::residue(std::uint64_t set_mask, std::size_t index, std::span<std::int32_t> out) const {
  const std::size_t width = widths_[index];
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(width), 0);
  const std::int32_t* base = table_.data() + offsets_[index];
  for (std::size_t c = 0; c < chunks_; ++c) {
    const unsigned b = static_cast<unsigned>((set_mask >> (8 * c)) & 0xffu);
    if (b == 0) continue;
    const std::int32_t* row = base + (c * 256 + b) * width;
    for (std::size_t k = 0; k < width; ++k) out[k] += row[k];
  }
}

bool ZeroSetKernel::divides(std::uint64_t set_mask, std::size_t index) const {
  std::array<std::int32_t, 64> acc{};
  residue(set_mask, index, acc);
  const std::size_t width = widths_[index];
  for (std::size_t k = 0; k < width; ++k) {
    if (acc[k] != 0) return false;
  }
  return true;
}

std::uint64_t ZeroSetKernel::divisor_bits(std::uint64_t set_mask) const {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < divisors_.size(); ++i) {
    if (divides(set_mask, i)) bits |= std::uint64_t{1} << i;
  }
  return bits;
}

std::uint64_t ZeroSetKernel::zero_set_from_divisor_bits(std::uint64_t bits) const {
  std::uint64_t z = 0;
  for (std::size_t i = 0; i < divisors_.size(); ++i) {
    if ((bits >> i) & 1u) z |= classes_[i];
  }
  return z;
}

std::uint64_t ZeroSetKernel::zero_set(std::uint64_t set_mask) const {
  return zero_set_from_divisor_bits(divisor_bits(set_mask));
}

}  // namespace fuglede
