#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "growthkit/element_set.hpp"

namespace growthkit {

using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection; identical across standard libraries.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// `count` distinct elements drawn uniformly from `pool` (partial Fisher–Yates).
inline ElementSet sample_without_replacement(const ElementSet& pool, std::size_t count, Rng& rng) {
  std::vector<Element> items(pool.begin(), pool.end());
  count = std::min(count, items.size());
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + uniform_below(rng, items.size() - i);
    std::swap(items[i], items[j]);
  }
  items.resize(count);
  return ElementSet(pool.group(), std::move(items));
}

/// Random subset of `pool` with size uniform in [1, max_size].
inline ElementSet random_subset(const ElementSet& pool, std::size_t max_size, Rng& rng) {
  const auto size = 1 + uniform_below(rng, std::min(max_size, pool.size()));
  return sample_without_replacement(pool, size, rng);
}

/// Random subset of the radius-`radius` ball of the standard generators.
inline ElementSet random_set(Group group, std::size_t radius, std::size_t max_size, Rng& rng) {
  return random_subset(power(standard_generating_set(group), radius), max_size, rng);
}

/// As random_set, then closed under inverses with the identity added.
inline ElementSet random_symmetric_set(Group group, std::size_t radius, std::size_t max_size, Rng& rng) {
  return random_set(group, radius, max_size, rng).symmetrized();
}

}  // namespace growthkit
