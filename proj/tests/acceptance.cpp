// Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic
// throughout. Exit status is nonzero if any criterion fails.
//
//   acceptance [corpus.ini] [scratch-dir]

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "oracles.hpp"

namespace gk = growthkit;
namespace fs = std::filesystem;
using oracle::integers;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = "first failure: " + what;
    pass = pass && ok;
  }
};

// Everything criteria 5-10 produce, in order; criterion 12 compares two runs.
struct Log {
  std::string text;
  void add(const std::string& tag, const gk::json& j) { text += tag + " " + j.dump() + "\n"; }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

gk::Rational q(std::uint64_t n) { return gk::Rational(n); }

// Families where V^5 and A^4 stay small for random radius-2 sets.
const std::vector<std::string> kStructureFamilies = {"lattice(1)", "lattice(2)", "heisenberg", "cyclic(60)",
                                                     "dihedral(30)", "product(lattice(1),cyclic(5))"};

// ---------------------------------------------------------------------------

Outcome closed_form_growth() {
  Outcome out;
  const auto z = gk::growth_profile(gk::standard_generating_set(gk::Group::lattice(1)), 50).values;
  for (std::uint64_t n = 0; n <= 50; ++n) out.require(z[n] == 2 * n + 1, "Z at n=" + std::to_string(n));
  const auto z2 = gk::growth_profile(gk::standard_generating_set(gk::Group::lattice(2)), 20).values;
  for (std::uint64_t n = 0; n <= 20; ++n)
    out.require(z2[n] == 2 * n * n + 2 * n + 1, "Z^2 at n=" + std::to_string(n));
  const auto f = gk::growth_profile(gk::standard_generating_set(gk::Group::free(2)), 8).values;
  std::uint64_t three = 1;
  for (std::uint64_t n = 0; n <= 8; ++n, three *= 3)
    out.require(f[n] == 2 * three - 1, "free(2) at n=" + std::to_string(n));
  if (out.pass)
    out.detail = "beta_Z(50)=" + std::to_string(z[50]) + ", beta_Z2(20)=" + std::to_string(z2[20]) +
                 ", beta_F2(8)=" + std::to_string(f[8]);
  return out;
}

Outcome heisenberg_oracle() {
  Outcome out;
  const auto got = gk::growth_profile(gk::standard_generating_set(gk::Group::heisenberg()), 10).values;
  const auto want = oracle::heisenberg_ball_sizes(10);
  for (std::size_t n = 0; n <= 10; ++n) out.require(got[n] == want[n], "n=" + std::to_string(n));
  if (out.pass) out.detail = "beta(0..10) agree with matrix BFS, beta(10)=" + std::to_string(got[10]);
  return out;
}

struct PairStats {
  Outcome sum, energy;
};

PairStats convolution_pairs() {
  PairStats st;
  const std::vector<std::pair<std::string, std::shared_ptr<oracle::Model>>> fams = {
      {"cyclic(50)", std::make_shared<oracle::Additive>(50)},
      {"dihedral(16)", std::make_shared<oracle::Permutations>(16)},
      {"lattice(1)", std::make_shared<oracle::Additive>(0)}};
  gk::Rng rng(2101);
  std::size_t equalities = 0;
  for (int i = 0; i < 500; ++i) {
    const auto& [name, model] = fams[i % 3];
    const auto g = gk::Group::parse(name);
    const auto radius = 1 + gk::uniform_below(rng, 20);
    const auto a = gk::random_set(g, radius, 16, rng);
    const auto b = gk::random_symmetric_set(g, radius, 8, rng);
    const auto profile = gk::convolution_profile(a, b);
    const auto expected = oracle::convolution(*model, a, b);
    gk::BigInt total = 0, e = 0;
    bool agrees = profile.size() == expected.size();
    for (const auto& [x, c] : profile) {
      total += c;
      e += gk::BigInt(c) * c;
      auto it = expected.find(model->embed(x));
      agrees = agrees && it != expected.end() && it->second == c;
    }
    const std::string where = name + " pair " + std::to_string(i);
    st.sum.require(agrees, where + " differs from the pair-counting oracle");
    st.sum.require(total == gk::BigInt(a.size()) * b.size(), where);
    const gk::BigInt ab = gk::product(a, b).size();
    const gk::BigInt lhs = gk::energy(a, b) * ab, rhs = gk::BigInt(a.size() * a.size()) * (b.size() * b.size());
    st.energy.require(gk::energy(a, b) == e && lhs >= rhs, where);
    if (lhs == rhs) ++equalities;
  }
  if (st.sum.pass) st.sum.detail = "500 pairs over cyclic(50), dihedral(16), Z";
  if (st.energy.pass) st.energy.detail = "500 pairs, " + std::to_string(equalities) + " with equality";
  return st;
}

struct StructureInstance {
  std::string family;
  gk::ElementSet a;
  gk::Rational k;
};

std::vector<StructureInstance> structure_instances() {
  std::vector<StructureInstance> out;
  gk::Rng rng(5150);
  for (int i = 0; i < 100; ++i) {
    const auto& family = kStructureFamilies[i % kStructureFamilies.size()];
    const auto g = gk::Group::parse(family);
    const auto a = gk::random_symmetric_set(g, 2, 6, rng);
    out.push_back({family, a, gk::ratio(gk::product(a, a).size(), a.size())});
  }
  return out;
}

Outcome high_multiplicity(const std::vector<StructureInstance>& cases, Log& log) {
  Outcome out;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [family, a, k] = cases[i];
    const auto where = family + " instance " + std::to_string(i);
    const auto h = gk::high_multiplicity_set(a, k);
    const auto& v = h.v;
    const auto a2 = gk::product(a, a);
    out.require(v.is_symmetric() && v.contains_identity() && v.subset_of(a2), where + ": V shape");
    out.require(2 * k * v.size() >= q(a.size()), where + ": 2K|V| >= |A|");
    auto left = a;
    for (unsigned j = 1; j <= 3; ++j) {
      left = gk::product(left, v);
      const auto size = gk::product(left, a).size();
      out.require(q(size) <= gk::pow(gk::Rational(2), j) * gk::pow(k, 2 * j + 1) * a.size(),
                  where + ": |AV^jA| at j=" + std::to_string(j));
    }
    log.add("high_multiplicity", gk::high_multiplicity_json(h, gk::explicit_spec(a)));
  }
  if (out.pass) out.detail = "100 instances over " + std::to_string(kStructureFamilies.size()) + " families";
  return out;
}

Outcome doubling_to_approx(const std::vector<StructureInstance>& cases, Log& log) {
  Outcome out;
  gk::Rational worst_x = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [family, a, k] = cases[i];
    const auto where = family + " instance " + std::to_string(i);
    const auto r = gk::doubling_to_approx(a, k);
    const auto u = gk::product(r.high.v, r.high.v);
    out.require(r.u == u, where + ": U = V^2");
    out.require(u.subset_of(gk::power(a, 4)), where + ": U in A^4");
    out.require(q(u.size()) <= 4 * gk::pow(k, 5) * a.size(), where + ": |U| <= 4K^5|A|");
    out.require(q(r.cover.centers.size()) <= 4 * gk::pow(k, 4), where + ": |X| <= 4K^4");
    out.require(gk::verify_cover({a, u, r.cover.centers}), where + ": A in XU");
    out.require(gk::verify_approx_group(r.approx), where + ": approximate-group certificate");
    out.require(r.approx.parameter <= gk::pow(gk::Rational(2), 12) * gk::pow(k, 24), where + ": parameter");
    worst_x = std::max(worst_x, q(r.cover.centers.size()) / (4 * gk::pow(k, 4)));
    const auto v_spec = gk::explicit_spec(r.high.v);
    log.add("cover", gk::cover_json(r.cover, gk::explicit_spec(a), gk::power_spec(v_spec, 2)));
    log.add("approximate_group", gk::approx_group_json(r.approx, gk::power_spec(v_spec, 2)));
  }
  if (out.pass) out.detail = "100 instances, largest |X|/4K^4 = " + gk::to_string(worst_x);
  return out;
}

// Checks the three certificate invariants with materialised powers.
bool disjoint_invariants(const gk::DisjointTranslatesCertificate& c, const std::vector<gk::Element>& x,
                         const gk::ElementSet& u) {
  std::uint64_t bound = 1;
  for (std::size_t i = 1; i < x.size(); ++i) bound *= 5;
  if (c.exponent > bound) return false;
  const auto far = gk::power(u, 4 * c.exponent);
  for (const auto& p : c.refined)
    for (const auto& r : c.refined)
      if (!(p == r) && far.contains(gk::inverse(r) * p)) return false;
  const auto xu = gk::product(gk::ElementSet(u.group(), x), u);
  return gk::verify_cover({xu, gk::power(u, c.exponent), c.refined});
}

Outcome disjointify(Log& log) {
  Outcome out;
  const auto z = gk::Group::lattice(1);
  const std::vector<gk::Element> traced = {z.make({0}), z.make({1}), z.make({10})};
  const auto hand = gk::disjointify(traced, integers(z, -1, 1));
  out.require(hand.exponent == 25 && oracle::values(hand.refined) == std::vector<std::int64_t>{0},
              "hand-traced Z example");
  out.require(disjoint_invariants(hand, traced, integers(z, -1, 1)), "hand-traced invariants");
  log.add("disjointify", gk::disjoint_json(hand, gk::explicit_spec(integers(z, -1, 1))));

  gk::Rng rng(7007);
  const std::vector<std::string> fams = {"lattice(1)", "cyclic(50)", "dihedral(16)", "cyclic(60)"};
  std::uint64_t largest = 1;
  for (int i = 0; i < 100; ++i) {
    const auto g = gk::Group::parse(fams[i % fams.size()]);
    const auto u = gk::random_symmetric_set(g, 2, 3, rng);
    const auto xs = gk::random_set(g, 40, 5, rng).elements();
    const auto cert = gk::disjointify(xs, u);
    out.require(disjoint_invariants(cert, xs, u), g.descriptor() + " instance " + std::to_string(i));
    largest = std::max(largest, cert.exponent);
    log.add("disjointify", gk::disjoint_json(cert, gk::explicit_spec(u)));
  }
  if (out.pass)
    out.detail = "(m=25, X'={0}) for X={0,1,10}; 100 random instances, largest m = " + std::to_string(largest);
  return out;
}

struct RepInstance {
  std::string label;
  gk::ElementSet s;
  std::size_t n;
  std::vector<gk::Element> x;
  gk::ElementSet u;
};

std::vector<RepInstance> representative_instances() {
  std::vector<RepInstance> out;
  const auto c12 = gk::Group::cyclic(12);
  out.push_back({"cyclic(12) cosets", integers(c12, {0, 1, 11}), 5,
                 integers(c12, {0, 1, 2, 3}).elements(), integers(c12, {0, 4, 8})});
  // Coset decompositions of cyclic groups by subgroups of index d.
  for (std::int64_t order : {12, 30, 60})
    for (std::int64_t d : {2, 3, 4, 5, 6}) {
      if (order % d) continue;
      const auto g = gk::Group::cyclic(order);
      std::vector<std::int64_t> sub, reps;
      for (std::int64_t i = 0; i < order; i += d) sub.push_back(i);
      for (std::int64_t i = 0; i < d; ++i) reps.push_back(order / 2 + i);  // far from the origin on purpose
      out.push_back({g.descriptor() + " index " + std::to_string(d), integers(g, {0, 1, order - 1}),
                     static_cast<std::size_t>(order / 3), integers(g, reps).elements(), integers(g, sub)});
    }
  // Pipeline outputs: S^n ⊆ X'U^m from doubling-to-approx and disjointify.
  for (const auto& [family, n] : std::vector<std::pair<std::string, std::size_t>>{
           {"lattice(1)", 8}, {"lattice(1)", 3}, {"lattice(2)", 3}, {"heisenberg", 1}, {"dihedral(30)", 6},
           {"cyclic(60)", 12}, {"product(lattice(1),cyclic(5))", 4}}) {
    const auto g = gk::Group::parse(family);
    const auto s = gk::standard_generating_set(g);
    const auto a = gk::power(s, n);
    const auto approx = gk::doubling_to_approx(a, gk::ratio(gk::power(s, 2 * n).size(), a.size()));
    const auto dis = gk::disjointify(approx.cover.centers, approx.u);
    out.push_back({family + " pipeline n=" + std::to_string(n), s, n, dis.refined,
                   gk::power(approx.u, dis.exponent)});
  }
  // One offset center whose translate swallows the ball; the representative
  // moves to the origin.
  const auto z = gk::Group::lattice(1);
  for (std::int64_t n : {4, 7, 11})
    for (std::int64_t c : {-3, 5, 9})
      out.push_back({"Z n=" + std::to_string(n) + " c=" + std::to_string(c), integers(z, -1, 1),
                     static_cast<std::size_t>(n), {z.make({c})}, integers(z, -(n + std::abs(c)), n + std::abs(c))});
  return out;
}

Outcome bounded_representatives(Log& log) {
  Outcome out;
  std::string cyclic_reps;
  std::size_t run = 0;
  for (const auto& inst : representative_instances()) {
    // Skip constructions whose translates are not 4-separated or do not cover.
    bool usable = true;
    const auto u4 = gk::power(inst.u, 4);
    for (const auto& p : inst.x)
      for (const auto& r : inst.x)
        if (!(p == r) && u4.contains(gk::inverse(r) * p)) usable = false;
    const auto ball = gk::power(inst.s, inst.n);
    usable = usable && gk::verify_cover({ball, inst.u, inst.x});
    if (!usable) continue;
    ++run;
    const auto reps = gk::bounded_representatives(inst.s, inst.n, inst.x, inst.u);
    const auto k = reps.pruned.size();
    const auto reach = gk::power(inst.s, k - 1);
    const auto& centers = reps.cover.centers;
    bool inside = true;
    for (const auto& c : centers) inside = inside && reach.contains(c);
    out.require(inside, inst.label + ": X'' in S^(k-1)");
    out.require(centers.size() <= inst.x.size(), inst.label + ": |X''| <= |X|");
    out.require(gk::verify_cover({ball, gk::product(inst.u, inst.u), centers}), inst.label + ": S^n in X''U^2");
    if (inst.label == "cyclic(12) cosets") {
      const auto c12 = inst.s.group();
      const auto same_cosets = gk::product(gk::ElementSet(c12, centers), inst.u) ==
                               gk::product(integers(c12, {0, 1, 2, 3}), inst.u);
      out.require(same_cosets && centers.size() == 4, "cyclic(12): X''U = {0,1,2,3}U");
      for (const auto& c : centers) cyclic_reps += (cyclic_reps.empty() ? "" : ",") + c.str();
    }
    log.add("representatives", gk::representatives_json(reps, inst.s, inst.n, inst.x.size(),
                                                        gk::power_spec(gk::explicit_spec(inst.u), 2)));
  }
  out.require(run >= 20, "fewer than 20 usable instances");
  if (out.pass)
    out.detail = std::to_string(run) + " instances; cyclic(12) X''={" + cyclic_reps + "}, cosets of {0,1,2,3}";
  return out;
}

Outcome propagation(Log& log) {
  Outcome out;
  std::size_t count = 0;
  auto check = [&](const std::string& label, const gk::ElementSet& s, std::size_t k, std::size_t r,
                   const std::vector<gk::Element>& x, const gk::ElementSet& u) {
    ++count;
    for (std::size_t m = 1; m <= 4; ++m) {
      const bool direct = gk::propagate_inclusion(s, k, r, x, u, m);
      const bool brute = gk::verify_cover({gk::power(s, m * r + k), gk::power(u, m), x});
      out.require(direct && brute, label + " at m=" + std::to_string(m));
      log.add("propagation", gk::propagation_json(s.group(), s, k, r, m, x, gk::explicit_spec(u), direct));
    }
  };
  const auto z = gk::Group::lattice(1);
  for (std::size_t k = 0; k <= 5; ++k)
    for (std::size_t r = std::max<std::size_t>(k, 1); r <= k + 3; ++r) {
      std::vector<std::int64_t> xs = {-static_cast<std::int64_t>(k), static_cast<std::int64_t>(k)};
      const auto rr = static_cast<std::int64_t>(r);
      check("Z k=" + std::to_string(k) + " r=" + std::to_string(r), integers(z, -1, 1), k, r,
            integers(z, xs).elements(), integers(z, -rr, rr));
    }
  for (std::int64_t order : {12, 20, 30}) {
    const auto g = gk::Group::cyclic(order);
    for (std::int64_t d : {2, 3, 4, 5}) {
      if (order % d) continue;
      std::vector<std::int64_t> sub, reps;
      for (std::int64_t i = 0; i < order; i += d) sub.push_back(i);
      for (std::int64_t i = 0; i < d; ++i) reps.push_back(i <= d / 2 ? i : i - d);
      const auto k = static_cast<std::size_t>(d / 2);
      check(g.descriptor() + " index " + std::to_string(d), integers(g, {0, 1, order - 1}), k, 2,
            integers(g, reps).elements(), integers(g, sub));
    }
  }
  for (const char* family : {"heisenberg", "dihedral(30)", "lattice(2)", "lamplighter", "free(2)"})
    for (std::size_t k : {0, 1})
      for (std::size_t r : {1, 2}) {
        const auto g = gk::Group::parse(family);
        const auto s = gk::standard_generating_set(g);
        if (std::string(family) == "free(2)" && r + k > 2) continue;
        check(std::string(family) + " k=" + std::to_string(k), s, k, r, {g.identity()}, gk::power(s, r + k));
      }
  out.require(count >= 50, "only " + std::to_string(count) + " instances");
  if (out.pass) out.detail = std::to_string(count) + " instances, m = 1..4 each";
  return out;
}

Outcome corpus(const fs::path& config, const fs::path& dir, Log& log) {
  Outcome out;
  std::ifstream in(config);
  const auto instances = gk::parse_corpus(in);
  const auto result = gk::run_corpus(instances, dir);
  out.require(!result.any_failed, "a corpus instance failed");
  for (const auto& inst : instances) {
    std::ifstream file(dir / (inst.name + ".json"));
    const auto doc = gk::json::parse(file);
    out.require(doc["status"] == "verified", inst.name + " status " + doc["status"].dump());
    for (const auto& [stage, cert] : doc["stages"].items())
      out.require(gk::verify_document(cert, inst.budget) == gk::VerifyStatus::verified,
                  inst.name + " stage " + stage + " re-verification from disk");
    if (!doc["realized"]["bound"].is_null())
      out.require(gk::parse_rational(doc["realized"]["tripling"].get<std::string>()) <=
                      gk::parse_rational(doc["realized"]["bound"].get<std::string>()),
                  inst.name + ": realized tripling above realized bound");
    if (inst.name == "integers") {
      out.require(doc["K"] == "33/17", "Z: K");
      out.require(doc["realized"]["tripling"] == "49/17", "Z: tripling");
      out.require(doc["flags"]["inclusion_verified"].get<bool>(), "Z: inclusion chain");
    }
  }
  log.text += slurp(dir / "summary.csv");
  if (out.pass)
    out.detail = std::to_string(instances.size()) + " instances verified; Z n=8: K=33/17, tripling 49/17";
  return out;
}

Outcome pluennecke() {
  Outcome out;
  std::size_t checks = 0, violations = 0;
  const std::vector<std::pair<const char*, std::size_t>> plan = {
      {"cyclic(50)", 400}, {"lattice(1)", 300}, {"lattice(2)", 300}};
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const auto report = gk::pluennecke_fuzz(gk::Group::parse(plan[i].first), plan[i].second, 1000 + i);
    checks += report.checks;
    violations += report.violations.size();
  }
  out.require(violations == 0, std::to_string(violations) + " violations");
  out.detail = "1000 instances, " + std::to_string(checks) + " (m,n) checks, " + std::to_string(violations) +
               " violations";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path config = argc > 1 ? fs::path(argv[1]) : fs::path(GROWTHKIT_DATA_DIR "/default_corpus.ini");
  const fs::path scratch = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "growthkit_acceptance";
  fs::remove_all(scratch);

  bool all = true;
  auto report = [&](int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_s > 0 && secs > limit_s) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(limit_s)) + " s limit)";
    }
    all = all && o.pass;
    std::printf("criterion %2d  %s  %s: %s [%.2f s]\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str(), secs);
    std::fflush(stdout);
  };

  report(1, "closed-form growth", 5, closed_form_growth);
  report(2, "Heisenberg matrix oracle", 30, heisenberg_oracle);

  PairStats pairs;
  report(3, "convolution sums to |A||B|", 30, [&] {
    pairs = convolution_pairs();
    return pairs.sum;
  });
  report(4, "energy bound E(A,B)|AB| >= |A|^2|B|^2", 0, [&] { return pairs.energy; });

  // Criteria 5-10 write to a log so that criterion 12 can rerun them.
  auto structure_run = [&](Log& log, const fs::path& corpus_dir, std::vector<Outcome>* outcomes) {
    const auto cases = structure_instances();
    std::vector<Outcome> os;
    os.push_back(high_multiplicity(cases, log));
    os.push_back(doubling_to_approx(cases, log));
    os.push_back(disjointify(log));
    os.push_back(bounded_representatives(log));
    os.push_back(propagation(log));
    os.push_back(corpus(config, corpus_dir, log));
    if (outcomes) *outcomes = std::move(os);
  };

  Log first;
  const auto cases = structure_instances();
  report(5, "high-multiplicity set conclusions", 120, [&] { return high_multiplicity(cases, first); });
  report(6, "doubling to approximate group", 0, [&] { return doubling_to_approx(cases, first); });
  report(7, "disjoint translates certificates", 0, [&] { return disjointify(first); });
  report(8, "bounded representatives", 0, [&] { return bounded_representatives(first); });
  report(9, "propagation m <= 4", 0, [&] { return propagation(first); });
  report(10, "end-to-end corpus", 300, [&] { return corpus(config, scratch / "corpus_a", first); });
  report(11, "Pluennecke-Ruzsa fuzz", 60, pluennecke);

  report(12, "determinism", 0, [&] {
    Outcome o;
    Log second;
    std::vector<Outcome> rerun;
    structure_run(second, scratch / "corpus_b", &rerun);
    o.require(first.text == second.text, "logs of criteria 5-10 differ");
    for (const auto& entry : fs::directory_iterator(scratch / "corpus_a")) {
      const auto name = entry.path().filename();
      o.require(slurp(entry.path()) == slurp(scratch / "corpus_b" / name), name.string() + " differs");
    }
    if (o.pass)
      o.detail = "criteria 5-10 rerun: " + std::to_string(first.text.size()) + " bytes of certificates and " +
                 "corpus files identical";
    return o;
  });

  std::printf("%s\n", all ? "all criteria PASS" : "some criteria FAIL");
  return all ? 0 : 1;
}
