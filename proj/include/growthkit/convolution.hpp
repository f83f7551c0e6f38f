#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "growthkit/element_set.hpp"

namespace growthkit {

/// 1_A * 1_B (x) for symmetric B, evaluated as |A ∩ xB|.
inline std::uint64_t convolution_value(const ElementSet& a, const ElementSet& b, const Element& x) {
  a.require_same_group(b);
  a.group().check(x);
  if (!b.is_symmetric()) throw PreconditionError("convolution identity needs a symmetric B");
  std::uint64_t count = 0;
  for (const auto& y : b)
    if (a.contains(x * y)) ++count;
  return count;
}

/// All non-zero values x ↦ |A ∩ xB|, x ranging over AB, in canonical order of x.
/// Computed in one pass over A×B: a = x·b exactly when x = a·b⁻¹.
inline std::vector<std::pair<Element, std::uint64_t>> convolution_profile(const ElementSet& a,
                                                                          const ElementSet& b) {
  a.require_same_group(b);
  if (!b.is_symmetric()) throw PreconditionError("convolution identity needs a symmetric B");
  const auto* model = a.group().model();
  detail::CodeMap<std::uint64_t> counts;
  std::vector<Code> b_inverse;
  b_inverse.reserve(b.size());
  for (const auto& y : b) b_inverse.push_back(model->invert(y.code()));
  Code scratch;
  for (const auto& x : a) {
    for (const auto& yi : b_inverse) {
      model->multiply(x.code(), yi, scratch);
      ++counts[scratch];
    }
  }
  std::vector<std::pair<Element, std::uint64_t>> out;
  out.reserve(counts.size());
  for (auto& [code, c] : counts) out.emplace_back(Element(model, code), c);
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return CanonicalLess{}(l.first, r.first); });
  return out;
}

/// Multiplicative energy E(A,B) = Σ_x |A ∩ xB|².
inline BigInt energy(const ElementSet& a, const ElementSet& b) {
  BigInt total = 0;
  for (const auto& [x, c] : convolution_profile(a, b)) total += BigInt(c) * c;
  return total;
}

}  // namespace growthkit
