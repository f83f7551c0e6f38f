#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "growthkit/covering.hpp"
#include "growthkit/element_set.hpp"
#include "growthkit/structure.hpp"

namespace growthkit {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Set specifications. A certificate names its sets by how to rebuild them:
//   {"elements": [literals]}
//   {"ball": {"generators": [literals], "radius": n}}
//   {"power": {"base": <spec>, "exponent": j}}

inline json elements_json(const std::vector<Element>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

inline json explicit_spec(const ElementSet& s) { return json{{"elements", s.literals()}}; }

inline json ball_spec(const ElementSet& generators, std::size_t radius) {
  return json{{"ball", {{"generators", generators.literals()}, {"radius", radius}}}};
}

inline json power_spec(json base, std::uint64_t exponent) {
  return json{{"power", {{"base", std::move(base)}, {"exponent", exponent}}}};
}

inline std::vector<Element> parse_elements(Group group, const json& literals) {
  std::vector<Element> out;
  for (const auto& lit : literals) out.push_back(group.parse_element(lit.get<std::string>()));
  return out;
}

inline ElementSet materialize(Group group, const json& spec, const Budget& budget = {}) {
  if (spec.contains("elements")) return ElementSet(group, parse_elements(group, spec.at("elements")));
  if (spec.contains("ball")) {
    const auto& b = spec.at("ball");
    const ElementSet gens(group, parse_elements(group, b.at("generators")));
    return power(gens, b.at("radius").get<std::size_t>(), budget);
  }
  if (spec.contains("power")) {
    const auto& p = spec.at("power");
    return power(materialize(group, p.at("base"), budget), p.at("exponent").get<std::uint64_t>(), budget);
  }
  throw PreconditionError("unrecognised set specification: " + spec.dump());
}

// ---------------------------------------------------------------------------
// Certificate documents

inline json cover_json(const CoverCertificate& cert, json target_spec, json tile_spec) {
  return json{{"kind", "cover"},
              {"group", cert.target.group().descriptor()},
              {"target_spec", std::move(target_spec)},
              {"tile_spec", std::move(tile_spec)},
              {"centers", elements_json(cert.centers)}};
}

/// base is the tile; the cover's target is base².
inline json approx_group_json(const ApproxGroupCertificate& cert, json base_spec) {
  json target = power_spec(base_spec, 2);
  if (base_spec.contains("power")) {
    const auto& p = base_spec.at("power");
    target = power_spec(p.at("base"), 2 * p.at("exponent").get<std::uint64_t>());
  }
  return json{{"kind", "approximate_group"},
              {"group", cert.base.group().descriptor()},
              {"target_spec", std::move(target)},
              {"tile_spec", std::move(base_spec)},
              {"centers", elements_json(cert.cover.centers)},
              {"parameter", to_string(cert.parameter)}};
}

inline json high_multiplicity_json(const HighMultiplicitySet& h, json source_spec) {
  return json{{"kind", "high_multiplicity"},
              {"group", h.source.group().descriptor()},
              {"source_spec", std::move(source_spec)},
              {"K", to_string(h.k)},
              {"v", h.v.literals()},
              {"sandwich_sizes", h.sandwich_sizes}};
}

inline json disjoint_json(const DisjointTranslatesCertificate& cert, json tile_spec) {
  json removals = json::array();
  for (const auto& r : cert.removals)
    removals.push_back({{"depth", r.depth}, {"kept", r.kept.str()}, {"removed", r.removed.str()}});
  return json{{"kind", "disjoint_translates"},
              {"group", cert.tile.group().descriptor()},
              {"original_centers", elements_json(cert.original)},
              {"refined_centers", elements_json(cert.refined)},
              {"tile_spec", std::move(tile_spec)},
              {"exponent", cert.exponent},
              {"exponent_bound_power_of_5", cert.original.empty() ? 0 : cert.original.size() - 1},
              {"removals", std::move(removals)}};
}

inline json representatives_json(const BoundedRepresentatives& reps, const ElementSet& generators, std::size_t n,
                                  std::size_t original_count, json tile_spec) {
  json out = cover_json(reps.cover, ball_spec(generators, n), std::move(tile_spec));
  out["kind"] = "representatives";
  out["generators"] = generators.literals();
  out["radius_bound"] = reps.radius_bound;
  out["original_count"] = original_count;
  out["pruned_centers"] = elements_json(reps.pruned);
  out["radii"] = reps.radii;
  out["layer_sizes"] = reps.layers;
  return out;
}

/// target ⊆ centers · tile^exponent, checked by word length over the tile.
inline json inclusion_json(Group group, json target_spec, json tile_spec, std::uint64_t exponent,
                           const std::vector<Element>& centers) {
  return json{{"kind", "inclusion"},     {"group", group.descriptor()},  {"target_spec", std::move(target_spec)},
              {"tile_spec", std::move(tile_spec)}, {"exponent", exponent}, {"centers", elements_json(centers)}};
}

inline json propagation_json(Group group, const ElementSet& generators, std::size_t k, std::size_t r, std::size_t m,
                             const std::vector<Element>& centers, json tile_spec, bool holds) {
  return json{{"kind", "propagation"},
              {"group", group.descriptor()},
              {"generators", generators.literals()},
              {"k", k},
              {"r", r},
              {"m", m},
              {"centers", elements_json(centers)},
              {"tile_spec", std::move(tile_spec)},
              {"holds", holds}};
}

// ---------------------------------------------------------------------------
// Verification from documents

enum class VerifyStatus { verified, failed, unverified_at_scale };

inline const char* to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::verified:
      return "verified";
    case VerifyStatus::failed:
      return "failed";
    case VerifyStatus::unverified_at_scale:
      return "unverified_at_scale";
  }
  return "failed";
}

namespace detail {

inline bool verify_high_multiplicity_doc(Group group, const json& doc, const Budget& budget) {
  const auto a = materialize(group, doc.at("source_spec"), budget);
  const auto k = parse_rational(doc.at("K").get<std::string>());
  const ElementSet v(group, parse_elements(group, doc.at("v")));
  const Rational threshold = Rational(a.size()) / (2 * k);
  std::vector<Element> expected;
  for (const auto& x : product(a, a, budget)) {
    const auto xi = inverse(x);
    std::uint64_t overlap = 0;
    for (const auto& g : a)
      if (a.contains(xi * g)) ++overlap;
    if (Rational(overlap) > threshold) expected.push_back(x);
  }
  if (!(ElementSet(group, expected) == v)) return false;
  if (2 * k * v.size() < Rational(a.size())) return false;
  const auto sizes = doc.at("sandwich_sizes").get<std::vector<std::uint64_t>>();
  ElementSet left = a;
  for (unsigned j = 1; j <= sizes.size(); ++j) {
    left = product(left, v, budget);
    const auto size = product(left, a, budget).size();
    if (size != sizes[j - 1]) return false;
    if (Rational(size) > pow(Rational(2), j) * pow(k, 2 * j + 1) * a.size()) return false;
  }
  return true;
}

inline bool verify_inclusion_doc(Group group, const json& doc, const Budget& budget) {
  const auto target = materialize(group, doc.at("target_spec"), budget);
  const auto tile = materialize(group, doc.at("tile_spec"), budget);
  const auto exponent = doc.at("exponent").get<std::uint64_t>();
  const auto centers = parse_elements(group, doc.at("centers"));
  if (!tile.contains_identity()) {
    CoverCertificate cert{target, power(tile, exponent, budget), centers};
    return verify_cover(cert);
  }
  PowerLadder ladder(tile, budget);
  for (const auto& g : target) {
    bool hit = false;
    for (const auto& c : centers)
      if (ladder.in_power(inverse(c) * g, exponent)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

}  // namespace detail

/// Rebuilds every set a certificate names and re-checks its defining
/// inclusions. Exceeding the budget yields unverified_at_scale.
inline VerifyStatus verify_document(const json& doc, const Budget& budget = {}) {
  try {
    const auto group = Group::parse(doc.at("group").get<std::string>());
    const auto kind = doc.at("kind").get<std::string>();
    bool ok = false;
    if (kind == "cover" || kind == "representatives" || kind == "approximate_group") {
      CoverCertificate cert{materialize(group, doc.at("target_spec"), budget),
                            materialize(group, doc.at("tile_spec"), budget),
                            parse_elements(group, doc.at("centers"))};
      ok = verify_cover(cert);
      if (ok && kind == "approximate_group") {
        ApproxGroupCertificate ag{cert.tile, parse_rational(doc.at("parameter").get<std::string>()), cert};
        ok = verify_approx_group(ag, budget);
      }
      if (ok && kind == "representatives") {
        const ElementSet gens(group, parse_elements(group, doc.at("generators")));
        const auto reach = power(gens, doc.at("radius_bound").get<std::size_t>(), budget);
        for (const auto& c : cert.centers) ok = ok && reach.contains(c);
        ok = ok && cert.centers.size() <= doc.at("original_count").get<std::size_t>();
      }
    } else if (kind == "high_multiplicity") {
      ok = detail::verify_high_multiplicity_doc(group, doc, budget);
    } else if (kind == "disjoint_translates") {
      DisjointTranslatesCertificate cert{parse_elements(group, doc.at("original_centers")),
                                         parse_elements(group, doc.at("refined_centers")),
                                         materialize(group, doc.at("tile_spec"), budget),
                                         doc.at("exponent").get<std::uint64_t>(),
                                         {}};
      ok = verify_disjoint(cert, budget);
    } else if (kind == "inclusion") {
      ok = detail::verify_inclusion_doc(group, doc, budget);
    } else if (kind == "propagation") {
      const ElementSet gens(group, parse_elements(group, doc.at("generators")));
      ok = propagate_inclusion(gens, doc.at("k").get<std::size_t>(), doc.at("r").get<std::size_t>(),
                               parse_elements(group, doc.at("centers")),
                               materialize(group, doc.at("tile_spec"), budget), doc.at("m").get<std::size_t>(),
                               budget) == doc.at("holds").get<bool>() &&
           doc.at("holds").get<bool>();
    } else {
      return VerifyStatus::failed;
    }
    return ok ? VerifyStatus::verified : VerifyStatus::failed;
  } catch (const ResourceError&) {
    return VerifyStatus::unverified_at_scale;
  } catch (const std::exception&) {
    return VerifyStatus::failed;
  }
}

}  // namespace growthkit
