#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "growthkit/convolution.hpp"
#include "growthkit/covering.hpp"
#include "growthkit/element_set.hpp"
#include "growthkit/rational.hpp"

namespace growthkit {

// ---------------------------------------------------------------------------
// High-multiplicity sets

/// V = {x : |A ∩ xA| > |A|/2K} together with the growth data that
/// certifies it: |AV^jA| for j = 1, 2, 3.
struct HighMultiplicitySet {
  ElementSet source;
  Rational k;
  ElementSet v;
  std::vector<std::uint64_t> sandwich_sizes;  // |AV^jA|, j = 1..3
};

/// The set V alone, without checking |A²| ≤ K|A|. A must be symmetric.
inline ElementSet high_multiplicity_candidates(const ElementSet& a, const Rational& k) {
  const Rational threshold = Rational(a.size()) / (2 * k);
  std::vector<Element> v;
  for (const auto& [x, overlap] : convolution_profile(a, a))
    if (Rational(overlap) > threshold) v.push_back(x);
  return ElementSet(a.group(), std::move(v));
}

inline HighMultiplicitySet high_multiplicity_set(const ElementSet& a, const Rational& k, const Budget& budget = {}) {
  if (a.empty()) throw PreconditionError("high-multiplicity set needs a non-empty A");
  require_symmetric_with_identity(a, "A");
  const auto square = product(a, a, budget);
  if (Rational(square.size()) > k * a.size())
    throw PreconditionError("|A^2| <= K|A| fails: |A^2|/|A| = " + to_string(ratio(square.size(), a.size())) +
                            " > K = " + to_string(k));

  HighMultiplicitySet out{a, k, high_multiplicity_candidates(a, k), {}};
  const auto& v = out.v;
  if (!v.contains_identity() || !v.is_symmetric() || !v.subset_of(square))
    throw SoundnessError("V must be symmetric, contain the identity and lie in A^2");
  if (2 * k * v.size() < Rational(a.size())) throw SoundnessError("|V| < |A|/2K");

  ElementSet left = product(a, v, budget);  // A V^j
  for (unsigned j = 1; j <= 3; ++j) {
    if (j > 1) left = product(left, v, budget);
    const auto size = product(left, a, budget).size();
    out.sandwich_sizes.push_back(size);
    const Rational bound = pow(Rational(2), j) * pow(k, 2 * j + 1) * a.size();
    if (Rational(size) > bound)
      throw SoundnessError("|AV^" + std::to_string(j) + "A| = " + std::to_string(size) + " exceeds " +
                           to_string(bound));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Doubling to approximate group

struct DoublingApprox {
  HighMultiplicitySet high;
  ElementSet u;                  // V²
  CoverCertificate cover;        // A ⊆ XU, X ⊆ A
  ApproxGroupCertificate approx; // U as an approximate group
};

/// From |A²| ≤ K|A| (A symmetric, e ∈ A): U = V² ⊆ A⁴ is a 2¹²K²⁴-approximate
/// group with |U| ≤ 4K⁵|A|, and A ⊆ XU for some X ⊆ A with |X| ≤ 4K⁴.
inline DoublingApprox doubling_to_approx(const ElementSet& a, const Rational& k, const Budget& budget = {}) {
  auto high = high_multiplicity_set(a, k, budget);
  const auto& v = high.v;
  const auto a_size = Rational(a.size());

  PowerLadder v_powers(v, budget);
  auto u = v_powers.power(2);
  if (Rational(u.size()) > 4 * pow(k, 5) * a_size) throw SoundnessError("|U| > 4K^5|A|");
  if (Rational(v_powers.size_at(3)) > 16 * pow(k, 8) * v.size()) throw SoundnessError("|V^3| > 16K^8|V|");
  if (!u.subset_of(power(a, 4, budget))) throw SoundnessError("U is not contained in A^4");

  const auto av = product(a, v, budget).size();
  if (Rational(av) > 4 * pow(k, 4) * v.size()) throw SoundnessError("|AV| > 4K^4|V|");
  auto cover = ruzsa_cover(a, v, budget);
  if (!(cover.tile == u)) throw SoundnessError("Ruzsa tile VV^-1 differs from V^2");
  if (Rational(cover.centers.size()) > 4 * pow(k, 4)) throw SoundnessError("|X| > 4K^4");

  auto approx = tripling_to_approx(v, budget);
  if (approx.parameter > pow(Rational(2), 12) * pow(k, 24)) throw SoundnessError("approximate-group parameter > 2^12 K^24");
  return {std::move(high), std::move(u), std::move(cover), std::move(approx)};
}

// ---------------------------------------------------------------------------
// Disjoint translates

struct Removal {
  std::size_t depth;
  Element kept;     // the canonical-smaller element of the violating pair
  Element removed;  // the canonical-larger one
};

/// X′ ⊆ X and m with x ∉ yU^{4m} for distinct x, y ∈ X′ and XU ⊆ X′U^m.
struct DisjointTranslatesCertificate {
  std::vector<Element> original;
  std::vector<Element> refined;
  ElementSet tile;
  std::uint64_t exponent = 1;
  std::vector<Removal> removals;
};

namespace detail {

inline std::vector<Element> sorted_unique(std::vector<Element> xs, const char* what) {
  std::sort(xs.begin(), xs.end(), CanonicalLess{});
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
    throw PreconditionError(std::string(what) + " must consist of distinct elements");
  return xs;
}

inline std::uint64_t pow5(std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > UINT64_MAX / 5) throw ResourceError("5^" + std::to_string(e) + " overflows the exponent type", 0);
    r *= 5;
  }
  return r;
}

// Membership of x⁻¹·g in U^j for some center x, via word lengths over U.
inline bool covered_by(const std::vector<Element>& centers, const Element& g, std::size_t j, PowerLadder& ladder) {
  for (const auto& x : centers)
    if (ladder.in_power(inverse(x) * g, j)) return true;
  return false;
}

}  // namespace detail

/// Removes translates until the survivors are 4m-separated. With tile W
/// (initially U): if no distinct x, y have x ∈ yW⁴, stop with exponent 1;
/// otherwise drop the canonical-larger element of the first violating
/// ordered pair, continue with W⁵ and multiply the exponent by 5.
inline DisjointTranslatesCertificate disjointify(const std::vector<Element>& x, const ElementSet& u,
                                                 const Budget& budget = {}) {
  require_symmetric_with_identity(u, "tile U");
  for (const auto& e : x) u.group().check(e);
  DisjointTranslatesCertificate cert{detail::sorted_unique(x, "X"), {}, u, 1, {}};
  PowerLadder ladder(u, budget);

  std::vector<Element> current = cert.original;
  std::uint64_t scale = 1;  // W = U^scale
  std::size_t depth = 0;
  try {
    while (true) {
      std::optional<std::pair<std::size_t, std::size_t>> violation;
      for (std::size_t i = 0; i < current.size() && !violation; ++i)
        for (std::size_t j = 0; j < current.size() && !violation; ++j)
          if (i != j && ladder.in_power(inverse(current[j]) * current[i], 4 * scale)) violation = {i, j};
      if (!violation) break;
      const auto [i, j] = *violation;
      const auto drop = std::max(i, j);
      cert.removals.push_back({depth, current[std::min(i, j)], current[drop]});
      current.erase(current.begin() + static_cast<std::ptrdiff_t>(drop));
      scale = detail::pow5(++depth);
    }
  } catch (const ResourceError& e) {
    throw ResourceError(std::string(e.what()) + " (disjointify at depth " + std::to_string(depth) + ", tile U^" +
                            std::to_string(scale) + ")",
                        e.budget());
  }
  cert.refined = std::move(current);
  cert.exponent = scale;

  if (cert.original.size() > 0 && cert.exponent > detail::pow5(cert.original.size() - 1))
    throw SoundnessError("disjointify exponent exceeds 5^(|X|-1)");
  for (const auto& a : cert.refined)
    for (const auto& b : cert.refined)
      if (!(a == b) && ladder.in_power(inverse(b) * a, 4 * cert.exponent))
        throw SoundnessError("refined centers are not 4m-separated");
  for (const auto& c : cert.original)
    for (const auto& g : u)
      if (!detail::covered_by(cert.refined, c * g, cert.exponent, ladder))
        throw SoundnessError("XU is not contained in X'U^m");
  return cert;
}

/// Re-checks a disjoint-translates certificate from scratch.
inline bool verify_disjoint(const DisjointTranslatesCertificate& cert, const Budget& budget = {}) {
  const auto& u = cert.tile;
  if (!u.contains_identity() || !u.is_symmetric()) return false;
  if (cert.exponent == 0) return false;
  for (const auto& r : cert.refined)
    if (std::find(cert.original.begin(), cert.original.end(), r) == cert.original.end()) return false;
  if (!cert.original.empty()) {
    std::uint64_t bound = 1;
    for (std::size_t i = 1; i < cert.original.size() && bound <= cert.exponent; ++i) bound *= 5;
    if (cert.exponent > bound) return false;
  }
  PowerLadder ladder(u, budget);
  if (cert.refined.size() > 1) {
    const auto far = ladder.power(4 * cert.exponent);
    for (const auto& a : cert.refined)
      for (const auto& b : cert.refined)
        if (!(a == b) && far.contains(inverse(b) * a)) return false;
  }
  const auto near = ladder.power(cert.exponent);
  for (const auto& c : cert.original) {
    for (const auto& g : u) {
      const auto cg = c * g;
      bool hit = false;
      for (const auto& r : cert.refined)
        if (near.contains(inverse(r) * cg)) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Local cosets

/// For all x ∈ X′ and y ∈ X′U^m: y ∈ xU^m ⟺ (yU^m ⊆ xU^{2m} and xU^m ⊆ yU^{2m}).
inline bool local_coset_check(const std::vector<Element>& centers, const ElementSet& u, std::uint64_t m,
                              const Budget& budget = {}) {
  require_symmetric_with_identity(u, "tile U");
  PowerLadder ladder(u, budget);
  const auto near = ladder.power(m);
  const auto far = ladder.power(2 * m);
  const ElementSet xs(u.group(), centers);
  const auto ys = product(xs, near, budget);

  // g U^m ⊆ U^{2m}
  auto absorbed = [&](const Element& g) {
    for (const auto& w : near)
      if (!far.contains(g * w)) return false;
    return true;
  };
  for (const auto& x : xs) {
    const auto xi = inverse(x);
    for (const auto& y : ys) {
      const auto xy = xi * y;
      const bool lhs = near.contains(xy);
      const bool rhs = absorbed(xy) && absorbed(inverse(xy));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Bounded representatives

struct BoundedRepresentatives {
  CoverCertificate cover;           // target S^n, tile U², centers X″
  std::vector<Element> pruned;      // inclusion-minimal X covering S^n
  std::size_t radius_bound = 0;     // k − 1 with k = |pruned|
  std::vector<std::size_t> radii;   // word length of each representative
  std::vector<std::size_t> layers;  // |X_r| for r = 0..n, X_r = {x : xU ∩ S^r ≠ ∅}
};

/// Given S^n ⊆ XU with x ∉ yU⁴ for distinct x, y ∈ X, replaces each center by
/// a representative of xU of word length at most |X| − 1 in S.
inline BoundedRepresentatives bounded_representatives(const ElementSet& s, std::size_t n, const std::vector<Element>& x,
                                                      const ElementSet& u, const Budget& budget = {}) {
  require_symmetric_with_identity(s, "generating set S");
  require_symmetric_with_identity(u, "tile U");
  s.require_same_group(u);
  auto centers = detail::sorted_unique(x, "X");
  for (const auto& c : centers) u.group().check(c);

  PowerLadder s_powers(s, budget);
  PowerLadder u_powers(u, budget);
  const auto ball = s_powers.power(n);

  for (const auto& a : centers)
    for (const auto& b : centers)
      if (!(a == b) && u_powers.in_power(inverse(b) * a, 4))
        throw PreconditionError("centers " + a.str() + " and " + b.str() + " are not 4-separated by U");

  // coverers[i]: indices of centers whose translate covers ball[i]
  std::vector<std::vector<std::uint32_t>> covered(centers.size());
  std::vector<std::uint32_t> multiplicity(ball.size(), 0);
  for (std::uint32_t c = 0; c < centers.size(); ++c) {
    const auto ci = inverse(centers[c]);
    for (std::uint32_t i = 0; i < ball.size(); ++i)
      if (u.contains(ci * ball[i])) {
        covered[c].push_back(i);
        ++multiplicity[i];
      }
  }
  for (std::uint32_t i = 0; i < ball.size(); ++i)
    if (multiplicity[i] == 0) throw PreconditionError("S^n is not covered by XU: " + ball[i].str() + " is missed");

  std::vector<Element> pruned;
  for (std::uint32_t c = 0; c < centers.size(); ++c) {
    const bool redundant =
        std::all_of(covered[c].begin(), covered[c].end(), [&](std::uint32_t i) { return multiplicity[i] >= 2; });
    if (redundant) {
      for (auto i : covered[c]) --multiplicity[i];
    } else {
      pruned.push_back(centers[c]);
    }
  }

  BoundedRepresentatives out;
  out.pruned = pruned;
  out.radius_bound = pruned.size() - 1;
  out.layers.assign(n + 1, 0);
  std::vector<Element> reps;
  for (const auto& c : pruned) {
    std::optional<std::size_t> best_len;
    std::optional<Element> best;
    for (const auto& g : u) {
      const auto candidate = c * g;
      const auto len = s_powers.length(candidate, n);
      if (!len) continue;
      if (!best_len || *len < *best_len || (*len == *best_len && CanonicalLess{}(candidate, *best))) {
        best_len = len;
        best = candidate;
      }
    }
    if (!best_len) throw SoundnessError("center " + c.str() + " has no translate meeting S^n after pruning");
    for (std::size_t r = *best_len; r <= n; ++r) ++out.layers[r];
    if (*best_len > out.radius_bound)
      throw SoundnessError("no representative of " + c.str() + "U within S^" + std::to_string(out.radius_bound));
    reps.push_back(*best);
    out.radii.push_back(*best_len);
  }

  ElementSet rep_set(s.group(), reps);
  if (rep_set.size() != reps.size()) throw SoundnessError("two centers share a representative");
  out.cover = CoverCertificate{ball, product(u, u, budget), {rep_set.begin(), rep_set.end()}};
  if (!verify_cover(out.cover)) throw SoundnessError("S^n is not covered by X''U^2");
  return out;
}

// ---------------------------------------------------------------------------
// Propagation

/// Given X ⊆ S^k and S^{r+k} ⊆ XU, checks S^{mr+k} ⊆ XU^m directly.
inline bool propagate_inclusion(const ElementSet& s, std::size_t k, std::size_t r, const std::vector<Element>& x,
                                const ElementSet& u, std::size_t m, const Budget& budget = {}) {
  require_symmetric_with_identity(s, "generating set S");
  s.require_same_group(u);
  if (m < 1) throw PreconditionError("propagation needs m >= 1");
  PowerLadder s_powers(s, budget);
  for (const auto& c : x)
    if (!s_powers.length(c, k)) throw PreconditionError(c.str() + " is not in S^" + std::to_string(k));

  const auto base_ball = s_powers.power(r + k);
  const std::vector<Element> inv = [&] {
    std::vector<Element> out;
    for (const auto& c : x) out.push_back(inverse(c));
    return out;
  }();
  for (const auto& g : base_ball) {
    const bool hit = std::any_of(inv.begin(), inv.end(), [&](const Element& ci) { return u.contains(ci * g); });
    if (!hit) throw PreconditionError("S^(r+k) is not covered by XU: " + g.str() + " is missed");
  }

  const auto target = s_powers.power(m * r + k);
  if (u.contains_identity()) {
    PowerLadder u_powers(u, budget);
    for (const auto& g : target)
      if (!detail::covered_by(x, g, m, u_powers)) return false;
    return true;
  }
  const auto um = power(u, m, budget);
  for (const auto& g : target) {
    const bool hit = std::any_of(inv.begin(), inv.end(), [&](const Element& ci) { return um.contains(ci * g); });
    if (!hit) return false;
  }
  return true;
}

}  // namespace growthkit
