#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "growthkit/convolution.hpp"
#include "growthkit/covering.hpp"
#include "growthkit/inequalities.hpp"
#include "growthkit/sampling.hpp"
#include "growthkit/serialize.hpp"
#include "growthkit/structure.hpp"

namespace growthkit {

/// A group, a symmetric generating set containing the identity, and a radius.
struct Instance {
  std::string name;
  Group group;
  ElementSet generators;
  std::size_t n = 1;
  Budget budget;

  /// Generators given as literals are closed under inverses and the identity
  /// is added; no literals means the family's standard generators.
  static Instance make(std::string name, const std::string& group_descriptor,
                       const std::vector<std::string>& generator_literals, std::size_t n, Budget budget = {}) {
    const auto group = Group::parse(group_descriptor);
    ElementSet gens = generator_literals.empty() ? standard_generating_set(group)
                                                 : ElementSet::parse(group, generator_literals).symmetrized();
    return Instance{std::move(name), group, std::move(gens), n, budget};
  }
};

/// Theorem-pipeline outcome for one instance. `document` is the full JSON
/// report; the other fields summarise it.
struct PipelineReport {
  json document;
  Rational k;
  std::optional<Rational> realized_tripling;
  std::optional<Rational> realized_bound;
  std::optional<std::size_t> representatives;
  std::optional<std::uint64_t> exponent;
  bool inclusion_verified = false;
  bool unverified_at_scale = false;
  bool failed = false;

  std::string status() const {
    if (failed) return "failed";
    if (unverified_at_scale) return "inclusion unverified at scale";
    return inclusion_verified ? "verified" : "failed";
  }
};

namespace detail {

inline json closed_form_bound(const Rational& prefactor, const Rational& base, unsigned coefficient,
                        const Rational& power_of_five) {
  return json{{"prefactor", to_string(prefactor)},
              {"base", to_string(base)},
              {"exponent", {{"coefficient", coefficient}, {"power_of_5", to_string(power_of_five)}}}};
}

}  // namespace detail

/// Runs the doubling ⇒ tripling argument on A = S^n with realized constants:
/// high-multiplicity set and approximate group U, disjoint translates,
/// bounded representatives, then propagation with k = ⌊n/2⌋, r = ⌈n/2⌉
/// concluding S^{3n} ⊆ X″U^{10m}. Every certificate is re-verified from its
/// JSON form.
inline PipelineReport verify_theorem(const Instance& inst, std::size_t work_budget = 200'000'000) {
  if (inst.n < 1) throw PreconditionError("verify-theorem needs n >= 1");
  require_symmetric_with_identity(inst.generators, "generating set S");
  const auto& s = inst.generators;
  const auto n = inst.n;
  const auto& budget = inst.budget;

  PipelineReport report;
  json& doc = report.document;
  doc["instance"] = {{"name", inst.name}, {"group", inst.group.descriptor()}, {"generators", s.literals()}};
  doc["n"] = n;
  doc["budget"] = budget.max_elements;
  json stages = json::object();
  json reverified = json::object();
  json completed = json::array();
  json realized = json::object();

  auto record = [&](const std::string& name, json cert) {
    const auto status = verify_document(json::parse(cert.dump()), budget);
    reverified[name] = to_string(status);
    if (status == VerifyStatus::failed) report.failed = true;
    if (status == VerifyStatus::unverified_at_scale) report.unverified_at_scale = true;
    stages[name] = std::move(cert);
    completed.push_back(name);
  };

  auto finish = [&]() -> PipelineReport& {
    doc["stages"] = stages;
    doc["reverified"] = reverified;
    doc["completed_stages"] = completed;
    doc["realized"] = realized;
    doc["flags"] = {{"inclusion_verified", report.inclusion_verified},
                    {"inclusion_unverified_at_scale", report.unverified_at_scale},
                    {"failed", report.failed}};
    doc["status"] = report.status();
    return report;
  };

  PowerLadder s_powers(s, budget);
  const json s_n = ball_spec(s, n);
  try {
    const auto beta_n = s_powers.size_at(n);
    const auto beta_2n = s_powers.size_at(2 * n);
    report.k = ratio(beta_2n, beta_n);
    const auto& k = report.k;
    doc["beta"] = {{"n", beta_n}, {"2n", beta_2n}};
    doc["K"] = to_string(k);
    doc["hypothesis"] = {{"discrete_threshold_2K2", to_string(2 * k * k)},
                         {"discrete_n_ge_2K2", Rational(n) >= 2 * k * k},
                         {"lc_threshold_8K4", to_string(8 * pow(k, 4))},
                         {"lc_n_ge_8K4", Rational(n) >= 8 * pow(k, 4)}};
    const auto base = pow(Rational(3), 9) * pow(k, 18);
    const auto lc_base = pow(Rational(2), 12) * pow(k, 24);
    doc["closed_form_bounds"] = {{"discrete_tripling", detail::closed_form_bound(pow(k, 3), base, 10, k * k)},
                           {"discrete_approximate_group", detail::closed_form_bound(pow(k, 9), base, 30, k * k)},
                           {"lc_tripling", detail::closed_form_bound(1, lc_base, 10, 4 * pow(k, 4))},
                           {"lc_approximate_group", detail::closed_form_bound(1, lc_base, 30, 4 * pow(k, 4))}};

    // Small doubling ⇒ approximate group U with S^n ⊆ XU.
    const auto a = s_powers.power(n);
    const auto approx = doubling_to_approx(a, k, budget);
    const json v_spec = explicit_spec(approx.high.v);
    const json u_spec = power_spec(v_spec, 2);
    record("high_multiplicity", high_multiplicity_json(approx.high, s_n));
    record("ruzsa_cover", cover_json(approx.cover, s_n, u_spec));
    record("approximate_group_U", approx_group_json(approx.approx, u_spec));
    realized["V"] = approx.high.v.size();
    realized["U"] = approx.u.size();
    realized["X"] = approx.cover.centers.size();
    realized["U_parameter"] = to_string(approx.approx.parameter);

    // Strongly disjoint translates.
    const auto dis = disjointify(approx.cover.centers, approx.u, budget);
    const auto m0 = dis.exponent;
    report.exponent = m0;
    record("disjointify", disjoint_json(dis, u_spec));
    realized["m0"] = m0;
    realized["X_refined"] = dis.refined.size();

    PowerLadder u_powers(approx.u, budget);
    try {
      realized["local_coset"] = local_coset_check(dis.refined, approx.u, m0, budget);
      if (!realized["local_coset"].get<bool>()) report.failed = true;
    } catch (const ResourceError&) {
      realized["local_coset"] = nullptr;
    }

    // Representatives in S^{|X'|-1}.
    const auto um = u_powers.power(m0);
    const auto reps = bounded_representatives(s, n, dis.refined, um, budget);
    report.representatives = reps.cover.centers.size();
    record("representatives", representatives_json(reps, s, n, dis.refined.size(), power_spec(v_spec, 4 * m0)));
    realized["X_representatives"] = reps.cover.centers.size();

    // Propagation with k = floor(n/2), r = ceil(n/2), five steps.
    const std::size_t k_rad = n / 2, r_rad = n - n / 2;
    std::size_t reach = 0;
    for (auto len : reps.radii) reach = std::max(reach, len);
    realized["representative_radius"] = reach;
    const auto& centers = reps.cover.centers;
    if (reach <= k_rad) {
      const auto tile = u_powers.power(2 * m0);
      const bool holds = propagate_inclusion(s, k_rad, r_rad, centers, tile, 5, budget);
      record("propagation", propagation_json(inst.group, s, k_rad, r_rad, 5, centers, power_spec(v_spec, 4 * m0), holds));
      if (!holds) report.failed = true;
    } else {
      realized["propagation_hypothesis_met"] = false;
    }

    // S^{3n} ⊆ X''U^{10 m0}.
    record("final_inclusion", inclusion_json(inst.group, ball_spec(s, 3 * n), u_spec, 10 * m0, centers));
    report.inclusion_verified = reverified["final_inclusion"] == "verified";

    const auto beta_3n = s_powers.size_at(3 * n);
    doc["beta"]["3n"] = beta_3n;
    report.realized_tripling = ratio(beta_3n, beta_n);
    realized["tripling"] = to_string(*report.realized_tripling);
    realized["below_closed_form_tripling_bound"] = *report.realized_tripling <= pow(k, 3) * base;

    // |U^{10 m0}| only when the enclosing ball S^{10 m0 L} (L the longest
    // word in U) keeps the layered power computation within work_budget
    // element products.
    std::size_t u_reach = 0;
    for (const auto& g : approx.u) u_reach = std::max(u_reach, *s_powers.length(g, 4 * n));
    try {
      const Budget probe{std::min(budget.max_elements, work_budget / std::max<std::size_t>(1, approx.u.size())), 1};
      PowerLadder enclosing(s, probe);
      enclosing.size_at(10 * m0 * u_reach);
      const auto big = u_powers.size_at(10 * m0);
      report.realized_bound = Rational(centers.size() * big) / beta_n;
      realized["U_power_size"] = big;
      realized["bound"] = to_string(*report.realized_bound);
      if (*report.realized_tripling > *report.realized_bound) report.failed = true;
    } catch (const ResourceError&) {
      realized["bound"] = nullptr;
    }

    // S^{2n} as an approximate group from the tripling of S^n.
    const auto tripling = tripling_to_approx(a, budget);
    record("approximate_group_S2n", approx_group_json(tripling, ball_spec(s, 2 * n)));
    realized["S2n_parameter"] = to_string(tripling.parameter);
  } catch (const ResourceError& e) {
    report.unverified_at_scale = true;
    doc["resource_limit"] = e.what();
  }
  return finish();
}

// ---------------------------------------------------------------------------
// Corpus configuration

/// INI-style corpus file:
///   [name]
///   group = lattice(2)
///   generators = (1,0) | (0,1)     # optional
///   n = 6
///   budget = 1000000               # optional
inline std::vector<Instance> parse_corpus(std::istream& in) {
  struct Pending {
    std::string name;
    std::size_t line;
    std::optional<std::string> group;
    std::vector<std::string> generators;
    std::optional<std::size_t> n;
    Budget budget;
  };
  std::vector<Pending> pending;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  auto number = [](const std::string& v, std::size_t line) {
    std::size_t used = 0;
    unsigned long long x = 0;
    try {
      x = std::stoull(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != v.size() || v.empty() || v[0] == '-') throw ConfigError("expected a non-negative integer, got '" + v + "'", line);
    return static_cast<std::size_t>(x);
  };

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto text = trim(raw);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']' || text.size() < 3) throw ConfigError("malformed section header", line);
      pending.push_back({trim(text.substr(1, text.size() - 2)), line, {}, {}, {}, {}});
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    if (pending.empty()) throw ConfigError("key outside of an instance section", line);
    const auto key = trim(text.substr(0, eq));
    const auto value = trim(text.substr(eq + 1));
    auto& cur = pending.back();
    if (key == "group") {
      try {
        Group::parse(value);
      } catch (const ParseError& e) {
        throw ConfigError(e.what(), line);
      }
      cur.group = value;
    } else if (key == "generators") {
      std::stringstream ss(value);
      std::string lit;
      while (std::getline(ss, lit, '|'))
        if (auto t = trim(lit); !t.empty()) cur.generators.push_back(t);
    } else if (key == "n") {
      cur.n = number(value, line);
    } else if (key == "budget") {
      cur.budget.max_elements = number(value, line);
    } else {
      throw ConfigError("unknown key '" + key + "'", line);
    }
  }

  std::vector<Instance> out;
  for (auto& p : pending) {
    if (!p.group) throw ConfigError("instance '" + p.name + "' has no group", p.line);
    if (!p.n) throw ConfigError("instance '" + p.name + "' has no n", p.line);
    try {
      out.push_back(Instance::make(p.name, *p.group, p.generators, *p.n, p.budget));
    } catch (const ParseError& e) {
      throw ConfigError(std::string("instance '") + p.name + "': " + e.what(), p.line);
    }
  }
  return out;
}

inline void write_atomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

struct CorpusResult {
  std::vector<PipelineReport> reports;
  std::string summary_csv;
  bool any_failed = false;
};

/// One JSON report per instance plus summary.csv in `out_dir`.
inline CorpusResult run_corpus(const std::vector<Instance>& instances, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  CorpusResult result;
  result.summary_csv = "instance,n,K,realized_tripling,X_reps,m0,verified\n";
  for (const auto& inst : instances) {
    auto report = verify_theorem(inst);
    write_atomically(out_dir / (inst.name + ".json"), report.document.dump(2) + "\n");
    result.summary_csv += inst.name + "," + std::to_string(inst.n) + "," +
                          (report.document.contains("K") ? to_string(report.k) : "") + "," +
                          (report.realized_tripling ? to_string(*report.realized_tripling) : "") + "," +
                          (report.representatives ? std::to_string(*report.representatives) : "") + "," +
                          (report.exponent ? std::to_string(*report.exponent) : "") + "," + report.status() + "\n";
    result.any_failed = result.any_failed || report.failed;
    result.reports.push_back(std::move(report));
  }
  write_atomically(out_dir / "summary.csv", result.summary_csv);
  return result;
}

// ---------------------------------------------------------------------------
// Fuzzing of the growth inequalities and convolution identities

struct FuzzConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 100;
};

struct PairCheck {
  bool sum_identity;  // Σ_x |A ∩ xB| = |A||B|
  bool energy_bound;  // E(A,B)|AB| ≥ |A|²|B|²
};

inline PairCheck convolution_identities(const ElementSet& a, const ElementSet& b, const Budget& budget = {}) {
  const auto profile = convolution_profile(a, b);
  BigInt sum = 0, e = 0;
  for (const auto& [x, c] : profile) {
    sum += c;
    e += BigInt(c) * c;
  }
  const BigInt sa = a.size(), sb = b.size();
  const BigInt ab = product(a, b, budget).size();
  return {sum == sa * sb && ab == profile.size(), e * ab >= sa * sa * sb * sb};
}

inline json fuzz(const FuzzConfig& config, const Budget& budget = {}) {
  json report{{"seed", config.seed}, {"trials", config.trials}};
  json checks = {{"pluennecke", 0}, {"product_chain", 0}, {"convolution_sum", 0}, {"energy_bound", 0}};
  json violations = json::array();
  if (config.trials == 0) {
    report["checks"] = checks;
    report["violations"] = violations;
    return report;
  }

  const std::vector<std::string> abelian = {"cyclic(50)", "lattice(1)", "lattice(2)"};
  for (std::size_t i = 0; i < abelian.size(); ++i) {
    const auto group = Group::parse(abelian[i]);
    const auto r = pluennecke_fuzz(group, config.trials, detail::mix64(config.seed + i), {4, 8, 4}, budget);
    checks["pluennecke"] = checks["pluennecke"].get<std::size_t>() + r.checks;
    for (const auto& v : r.violations)
      violations.push_back({{"check", "pluennecke"},
                            {"group", abelian[i]},
                            {"trial", v.trial},
                            {"set", v.set},
                            {"m", v.m},
                            {"n", v.n},
                            {"lhs", v.lhs},
                            {"bound", to_string(v.bound)}});
  }

  struct Family {
    const char* group;
    std::size_t radius;
    std::size_t max_size;
  };
  const std::vector<Family> families = {{"cyclic(50)", 25, 8}, {"dihedral(16)", 8, 6}, {"lattice(1)", 20, 8},
                                        {"heisenberg", 2, 5},  {"lamplighter", 2, 4},  {"free(2)", 2, 4}};
  for (std::size_t i = 0; i < families.size(); ++i) {
    const auto& fam = families[i];
    const auto group = Group::parse(fam.group);
    Rng rng(detail::mix64(config.seed ^ (0x51ed27ULL * (i + 1))));
    const auto pool = power(standard_generating_set(group), fam.radius, budget);
    for (std::size_t t = 0; t < config.trials; ++t) {
      const auto a = random_subset(pool, fam.max_size, rng).symmetrized();
      std::vector<int> signs(3 + uniform_below(rng, 2));
      for (auto& sgn : signs) sgn = uniform_below(rng, 2) ? 1 : -1;
      const auto chain = product_chain_check(a, signs, budget);
      checks["product_chain"] = checks["product_chain"].get<std::size_t>() + 1;
      if (!chain.holds)
        violations.push_back({{"check", "product_chain"},
                              {"group", fam.group},
                              {"trial", t},
                              {"set", a.literals()},
                              {"signs", signs},
                              {"lhs", chain.lhs},
                              {"bound", to_string(chain.bound)}});

      const auto b = random_subset(pool, fam.max_size, rng).symmetrized();
      const auto a2 = random_subset(pool, fam.max_size, rng);
      const auto pc = convolution_identities(a2, b, budget);
      checks["convolution_sum"] = checks["convolution_sum"].get<std::size_t>() + 1;
      checks["energy_bound"] = checks["energy_bound"].get<std::size_t>() + 1;
      if (!pc.sum_identity || !pc.energy_bound)
        violations.push_back({{"check", !pc.sum_identity ? "convolution_sum" : "energy_bound"},
                              {"group", fam.group},
                              {"trial", t},
                              {"A", a2.literals()},
                              {"B", b.literals()}});
    }
  }
  report["checks"] = checks;
  report["violations"] = violations;
  return report;
}

}  // namespace growthkit
