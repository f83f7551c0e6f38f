#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "growthkit/element_set.hpp"
#include "growthkit/rational.hpp"
#include "growthkit/sampling.hpp"

namespace growthkit {

/// A^{ε1}···A^{εm}, with ε = +1 for A and -1 for A⁻¹.
inline ElementSet signed_product(const ElementSet& a, const std::vector<int>& signs, const Budget& budget = {}) {
  if (signs.empty()) return ElementSet(a.group(), {a.group().identity()});
  const auto inv = a.inverted();
  auto pick = [&](int s) -> const ElementSet& {
    if (s != 1 && s != -1) throw PreconditionError("signs must be +1 or -1");
    return s == 1 ? a : inv;
  };
  ElementSet acc = pick(signs.front());
  for (std::size_t i = 1; i < signs.size(); ++i) acc = product(acc, pick(signs[i]), budget);
  return acc;
}

struct SumsetBound {
  std::uint64_t lhs;
  Rational bound;
  bool holds;
};

/// |mA − nA| against K^{m+n}|A| with K = |A+A|/|A|.
inline SumsetBound pluennecke_check(const ElementSet& a, unsigned m, unsigned n, const Budget& budget = {}) {
  if (!a.group().abelian()) throw PreconditionError("Plünnecke–Ruzsa check needs an abelian group, got " +
                                                    a.group().descriptor());
  if (a.empty()) throw PreconditionError("Plünnecke–Ruzsa check needs a non-empty set");
  const Rational k = ratio(product(a, a, budget).size(), a.size());
  std::vector<int> signs(m, 1);
  signs.insert(signs.end(), n, -1);
  const auto lhs = signed_product(a, signs, budget).size();
  const Rational bound = pow(k, m + n) * a.size();
  return {lhs, bound, Rational(lhs) <= bound};
}

struct PluenneckeViolation {
  std::size_t trial;
  std::vector<std::string> set;
  unsigned m;
  unsigned n;
  std::uint64_t lhs;
  Rational bound;
};

struct PluenneckeReport {
  std::string group;
  std::uint64_t seed;
  std::size_t trials;
  std::size_t checks = 0;
  std::vector<PluenneckeViolation> violations;
};

struct FuzzShape {
  std::size_t radius = 4;
  std::size_t max_size = 8;
  unsigned cap = 4;  // largest m + n
};

inline PluenneckeReport pluennecke_fuzz(Group group, std::size_t trials, std::uint64_t seed, FuzzShape shape = {},
                                        const Budget& budget = {}) {
  if (!group.abelian()) throw PreconditionError("Plünnecke–Ruzsa fuzzing needs an abelian group, got " +
                                                group.descriptor());
  PluenneckeReport report{group.descriptor(), seed, trials, 0, {}};
  if (trials == 0) return report;
  Rng rng(seed);
  const auto pool = power(standard_generating_set(group), shape.radius, budget);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto a = random_subset(pool, shape.max_size, rng);
    for (unsigned total = 1; total <= shape.cap; ++total) {
      for (unsigned m = 0; m <= total; ++m) {
        const auto r = pluennecke_check(a, m, total - m, budget);
        ++report.checks;
        if (!r.holds) report.violations.push_back({t, a.literals(), m, total - m, r.lhs, r.bound});
      }
    }
  }
  return report;
}

struct ChainCheck {
  std::uint64_t lhs;
  Rational tripling;  // |A³| / |A|
  Rational bound;     // K^{3(m-2)} |A|
  bool holds;
};

/// |A^{ε1}···A^{εm}| ≤ K^{3(m−2)}|A| with K = |A³|/|A|, m ≥ 3.
inline ChainCheck product_chain_check(const ElementSet& a, const std::vector<int>& signs, const Budget& budget = {}) {
  if (signs.size() < 3) throw PreconditionError("product chain needs at least three factors");
  if (a.empty()) throw PreconditionError("product chain needs a non-empty set");
  const Rational k = ratio(signed_product(a, {1, 1, 1}, budget).size(), a.size());
  const auto lhs = signed_product(a, signs, budget).size();
  const Rational bound = pow(k, 3 * static_cast<unsigned>(signs.size() - 2)) * a.size();
  return {lhs, k, bound, Rational(lhs) <= bound};
}

}  // namespace growthkit
