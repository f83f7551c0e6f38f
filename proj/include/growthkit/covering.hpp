#pragma once

#include <string>
#include <vector>

#include "growthkit/element_set.hpp"
#include "growthkit/rational.hpp"

namespace growthkit {

/// Witness for target ⊆ centers · tile (left translates).
struct CoverCertificate {
  ElementSet target;
  ElementSet tile;
  std::vector<Element> centers;  // distinct, canonical order
};

/// Witness that `base` is a `parameter`-approximate group: base is symmetric,
/// contains the identity, and base² ⊆ centers · base with at most
/// `parameter` centers.
struct ApproxGroupCertificate {
  ElementSet base;
  Rational parameter;
  CoverCertificate cover;
};

/// Every target element lies in some center·tile. Brute-force membership.
inline bool verify_cover(const CoverCertificate& cert) {
  for (const auto& c : cert.centers)
    if (!cert.target.group().contains(c)) return false;
  std::vector<Element> inverse_centers;
  inverse_centers.reserve(cert.centers.size());
  for (const auto& c : cert.centers) inverse_centers.push_back(inverse(c));
  for (const auto& a : cert.target) {
    bool covered = false;
    for (const auto& ci : inverse_centers) {
      if (cert.tile.contains(ci * a)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

namespace detail {

// Scans `a` in canonical order, keeping x whenever xB misses every kept translate.
inline std::vector<Element> disjoint_translates_scan(const ElementSet& a, const ElementSet& b) {
  const auto* model = a.group().model();
  CodeSet occupied;
  std::vector<Element> kept;
  std::vector<Code> translate;
  translate.reserve(b.size());
  for (const auto& x : a) {
    translate.clear();
    bool disjoint = true;
    for (const auto& y : b) {
      Code xy;
      model->multiply(x.code(), y.code(), xy);
      if (occupied.contains(xy)) {
        disjoint = false;
        break;
      }
      translate.push_back(std::move(xy));
    }
    if (!disjoint) continue;
    kept.push_back(x);
    occupied.insert(translate.begin(), translate.end());
  }
  return kept;
}

}  // namespace detail

/// Ruzsa covering: X ⊆ A maximal with {xB} pairwise disjoint, so that
/// A ⊆ X·BB⁻¹ and |X| ≤ |AB|/|B|. The certificate tile is BB⁻¹.
inline CoverCertificate ruzsa_cover(const ElementSet& a, const ElementSet& b, const Budget& budget = {}) {
  a.require_same_group(b);
  if (b.empty()) throw PreconditionError("Ruzsa covering needs a non-empty B");
  CoverCertificate cert{a, product(b, b.inverted(), budget), detail::disjoint_translates_scan(a, b)};
  if (!verify_cover(cert)) throw SoundnessError("Ruzsa cover does not cover its target");
  return cert;
}

/// Small tripling gives an approximate group: with K = |A³|/|A| for symmetric
/// A ∋ e, A² is a K³-approximate group. X ⊆ A⁴ is a maximal set with
/// {xA} disjoint, so A⁴ ⊆ XA² and |X| ≤ |A⁵|/|A| ≤ K³.
inline ApproxGroupCertificate tripling_to_approx(const ElementSet& a, const Budget& budget = {}) {
  require_symmetric_with_identity(a, "tripling set");
  PowerLadder ladder(a, budget);
  const auto a_size = a.size();
  const Rational k = ratio(ladder.size_at(3), a_size);
  const auto k3 = pow(k, 3);
  const auto fifth = ladder.size_at(5);
  if (Rational(fifth) > k3 * a_size)
    throw SoundnessError("|A^5| = " + std::to_string(fifth) + " exceeds K^3|A| = " + to_string(k3 * a_size));

  const auto square = ladder.power(2);
  const auto fourth = ladder.power(4);
  CoverCertificate cover{fourth, square, detail::disjoint_translates_scan(fourth, a)};
  if (Rational(cover.centers.size() * a_size) > Rational(fifth))
    throw SoundnessError("disjoint translates of A inside A^5 exceed |A^5|");
  if (!verify_cover(cover)) throw SoundnessError("A^4 is not covered by X A^2");
  return {square, k3, std::move(cover)};
}

/// Independent check of an approximate-group certificate; recomputes base².
inline bool verify_approx_group(const ApproxGroupCertificate& cert, const Budget& budget = {}) {
  if (!cert.base.contains_identity() || !cert.base.is_symmetric()) return false;
  if (Rational(cert.cover.centers.size()) > cert.parameter) return false;
  if (!(cert.cover.tile == cert.base)) return false;
  if (!(cert.cover.target == product(cert.base, cert.base, budget))) return false;
  return verify_cover(cert.cover);
}

/// |base^m| ≤ K^{m−1}|base| for a valid K-approximate group certificate.
inline bool approx_power_growth_check(const ApproxGroupCertificate& cert, unsigned m, const Budget& budget = {}) {
  if (m < 1) throw PreconditionError("approximate-group growth needs m >= 1");
  if (!verify_approx_group(cert, budget)) throw PreconditionError("approximate-group certificate does not verify");
  const auto lhs = power(cert.base, m, budget).size();
  return Rational(lhs) <= pow(cert.parameter, m - 1) * cert.base.size();
}

}  // namespace growthkit
