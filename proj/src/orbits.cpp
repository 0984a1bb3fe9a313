#include "fuglede/orbits.hpp"

#include <bit>

#include "fuglede/errors.hpp"
#include "fuglede/spectra.hpp"

namespace fuglede {

namespace {

// a < b when, scanning from the top element down, b has the first element a lacks.
bool less_as_bitmask(const std::vector<char>& a, const std::vector<char>& b) {
  for (std::size_t x = a.size(); x-- > 0;) {
    if (a[x] != b[x]) return b[x] != 0;
  }
  return false;
}

}  // namespace

IndicatorMultiset canonical_form(const IndicatorMultiset& u) {
  if (!u.is_set()) throw ArgumentError("canonical_form needs a set");
  const CyclicGroup& g = u.group();
  const std::uint64_t n = g.modulus();
  if (u.empty()) return u;
  const auto supp = u.support();
  std::vector<char> best;
  std::vector<char> image(n);
  for (Element unit : g.units()) {
    std::vector<Element> dilated;
    for (Element x : supp) dilated.push_back(g.mul(unit, x));
    for (Element t : dilated) {
      std::fill(image.begin(), image.end(), 0);
      for (Element y : dilated) image[g.sub(y, t)] = 1;
      if (best.empty() || less_as_bitmask(image, best)) best = image;
    }
  }
  IndicatorMultiset out(g);
  for (Element x = 0; x < n; ++x) {
    if (best[x]) out.add(x);
  }
  return out;
}

std::uint64_t orbit_size(const IndicatorMultiset& u) {
  if (!u.is_set()) throw ArgumentError("orbit_size needs a set");
  const CyclicGroup& g = u.group();
  std::vector<std::vector<Element>> images;
  for (Element unit : g.units()) {
    for (Element a = 0; a < g.modulus(); ++a) images.push_back(affine_image(u, a, unit).support());
  }
  std::sort(images.begin(), images.end());
  return static_cast<std::uint64_t>(std::unique(images.begin(), images.end()) - images.begin());
}

AffineOrbits::AffineOrbits(const CyclicGroup& g) : n_(g.modulus()) {
  if (n_ > 64) throw UnsupportedStructureError("bitmask orbit enumeration supports N <= 64");
  full_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  chunks_ = (n_ + 7) / 8;
  units_ = g.units();
  dilation_.assign(units_.size() * chunks_ * 256, 0);
  for (std::size_t ui = 0; ui < units_.size(); ++ui) {
    for (std::size_t c = 0; c < chunks_; ++c) {
      for (unsigned b = 0; b < 256; ++b) {
        std::uint64_t out = 0;
        for (unsigned bit = 0; bit < 8; ++bit) {
          const std::uint64_t x = c * 8 + bit;
          if (((b >> bit) & 1u) && x < n_) out |= std::uint64_t{1} << g.mul(units_[ui], x);
        }
        dilation_[(ui * chunks_ + c) * 256 + b] = out;
      }
    }
  }
}

std::uint64_t AffineOrbits::dilate(std::uint64_t mask, std::size_t unit_index) const {
  const std::uint64_t* table = dilation_.data() + unit_index * chunks_ * 256;
  std::uint64_t out = 0;
  for (std::size_t c = 0; c < chunks_; ++c) out |= table[c * 256 + ((mask >> (8 * c)) & 0xffu)];
  return out;
}

bool AffineOrbits::is_canonical(std::uint64_t mask, std::uint64_t* stabilizer) const {
  if (mask == 0) {
    if (stabilizer) *stabilizer = group_order();
    return true;
  }
  if (!(mask & 1u)) return false;
  std::uint64_t stab = 0;
  for (std::size_t ui = 0; ui < units_.size(); ++ui) {
    const std::uint64_t d = ui == 0 && units_[0] == 1 ? mask : dilate(mask, ui);
    std::uint64_t rest = d;
    while (rest) {
      const auto t = static_cast<std::uint64_t>(std::countr_zero(rest));
      rest &= rest - 1;
      const std::uint64_t img = masks::rotate(d, n_ - t, n_);
      if (img < mask) return false;
      stab += img == mask;
    }
  }
  if (stabilizer) *stabilizer = stab;
  return true;
}

std::uint64_t AffineOrbits::canonical(std::uint64_t mask) const {
  if (mask == 0) return 0;
  std::uint64_t best = ~std::uint64_t{0};
  for (std::size_t ui = 0; ui < units_.size(); ++ui) {
    const std::uint64_t d = dilate(mask, ui);
    std::uint64_t rest = d;
    while (rest) {
      const auto t = static_cast<std::uint64_t>(std::countr_zero(rest));
      rest &= rest - 1;
      best = std::min(best, masks::rotate(d, n_ - t, n_));
    }
  }
  return best;
}

std::uint64_t AffineOrbits::orbit_size(std::uint64_t mask) const {
  std::uint64_t stab = 0;
  is_canonical(canonical(mask), &stab);
  return group_order() / stab;
}

}  // namespace fuglede
