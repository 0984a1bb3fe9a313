#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "fuglede/group.hpp"

namespace fuglede {

/// Least bitmask (as an integer, bit i = element i) among all images
/// unit*U + shift. Works for any N; the result is a set on the same group.
IndicatorMultiset canonical_form(const IndicatorMultiset& u);

/// Number of distinct affine images of U.
std::uint64_t orbit_size(const IndicatorMultiset& u);

/// Affine symmetry group of Z_N acting on bitmask subsets, N <= 64.
class AffineOrbits {
 public:
  explicit AffineOrbits(const CyclicGroup& g);

  std::uint64_t modulus() const { return n_; }
  std::size_t unit_count() const { return units_.size(); }
  /// |{x -> u x + a}| = N * phi(N).
  std::uint64_t group_order() const { return n_ * units_.size(); }

  std::uint64_t dilate(std::uint64_t mask, std::size_t unit_index) const;

  /// True iff mask is the least element of its orbit. On success, *stabilizer
  /// receives the number of affine maps fixing mask.
  bool is_canonical(std::uint64_t mask, std::uint64_t* stabilizer = nullptr) const;
  std::uint64_t canonical(std::uint64_t mask) const;
  std::uint64_t orbit_size(std::uint64_t mask) const;

 private:
  std::uint64_t n_;
  std::uint64_t full_;
  std::size_t chunks_;
  std::vector<Element> units_;
  // [unit][chunk][byte]
  std::vector<std::uint64_t> dilation_;
};

/// Runs work(i) for i in [0, count) on up to `workers` threads and returns the
/// results in index order, independent of scheduling.
template <typename Result, typename Work>
std::vector<Result> run_chunks(std::size_t count, unsigned workers, Work work) {
  std::vector<Result> results(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        results[i] = work(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
        return;
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace fuglede
