#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "growthkit/growthkit.hpp"

namespace gk = growthkit;

namespace {

struct InstanceArgs {
  std::string group;
  std::vector<std::string> generators;
  std::size_t budget = 10'000'000;

  void add(CLI::App* cmd) {
    cmd->add_option("instance", group, "group descriptor, e.g. lattice(2), heisenberg, free(2)")->required();
    cmd->add_option("--gen", generators, "generator literal (repeatable); closed under inverses, identity added");
    cmd->add_option("--budget", budget, "largest set size any computation may build");
  }

  gk::Instance make(std::size_t n) const {
    return gk::Instance::make(group, group, generators, n, gk::Budget{budget, 1});
  }
};

void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  gk::write_atomically(p, content);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"growthkit: exact ball growth and doubling-to-tripling certificates"};
  app.require_subcommand(1);

  InstanceArgs growth_args;
  std::size_t radius = 0;
  std::string csv_path;
  auto* growth = app.add_subcommand("growth", "growth profile |S^0|..|S^N| as CSV");
  growth_args.add(growth);
  growth->add_option("--radius", radius, "largest radius N")->required();
  growth->add_option("--csv", csv_path, "output CSV path (stdout when omitted)");

  InstanceArgs doubling_args;
  std::size_t doubling_n = 1;
  auto* doubling = app.add_subcommand("doubling", "doubling ratio |S^2n|/|S^n|");
  doubling_args.add(doubling);
  doubling->add_option("--n", doubling_n, "radius n")->required();

  InstanceArgs extract_args;
  std::size_t extract_n = 1;
  std::string extract_json;
  auto* extract = app.add_subcommand("extract", "approximate group U and cover S^n ⊆ XU");
  extract_args.add(extract);
  extract->add_option("--n", extract_n, "radius n")->required();
  extract->add_option("--json", extract_json, "output JSON path")->required();

  InstanceArgs verify_args;
  std::size_t verify_n = 1;
  std::string verify_json;
  auto* verify = app.add_subcommand("verify", "full doubling-to-tripling pipeline with certificates");
  verify_args.add(verify);
  verify->add_option("--n", verify_n, "radius n")->required();
  verify->add_option("--json", verify_json, "output JSON report path")->required();

  std::string corpus_config, corpus_out;
  auto* corpus = app.add_subcommand("corpus", "run the pipeline on every instance of a corpus file");
  corpus->add_option("config", corpus_config, "corpus configuration file")->required()->check(CLI::ExistingFile);
  corpus->add_option("--out", corpus_out, "output directory")->required();

  gk::FuzzConfig fuzz_config;
  std::string fuzz_out;
  auto* fuzz = app.add_subcommand("fuzz", "randomised checks of the growth inequalities");
  fuzz->add_option("--seed", fuzz_config.seed, "random seed");
  fuzz->add_option("--trials", fuzz_config.trials, "trials per family");
  fuzz->add_option("--out", fuzz_out, "output JSON path")->required();

  std::string check_path;
  auto* check = app.add_subcommand("check", "re-verify a certificate or pipeline report from disk");
  check->add_option("file", check_path, "JSON file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*growth) {
      const auto inst = growth_args.make(1);
      const auto profile = gk::growth_profile(inst.generators, radius, inst.budget);
      if (csv_path.empty())
        std::cout << profile.to_csv();
      else
        write_file(csv_path, profile.to_csv());
    } else if (*doubling) {
      const auto inst = doubling_args.make(doubling_n);
      gk::PowerLadder ladder(inst.generators, inst.budget);
      const auto small = ladder.size_at(doubling_n), big = ladder.size_at(2 * doubling_n);
      std::cout << "|S^" << doubling_n << "| = " << small << "\n|S^" << 2 * doubling_n << "| = " << big
                << "\nK = " << gk::to_string(gk::ratio(big, small)) << "\n";
    } else if (*extract) {
      const auto inst = extract_args.make(extract_n);
      const auto k = gk::doubling_ratio(inst.generators, extract_n, inst.budget);
      const auto a = gk::power(inst.generators, extract_n, inst.budget);
      const auto out = gk::doubling_to_approx(a, k, inst.budget);
      const auto s_n = gk::ball_spec(inst.generators, extract_n);
      const auto v_spec = gk::explicit_spec(out.high.v);
      const auto u_spec = gk::power_spec(v_spec, 2);
      gk::json doc{{"group", inst.group.descriptor()},
                   {"generators", inst.generators.literals()},
                   {"n", extract_n},
                   {"K", gk::to_string(k)},
                   {"high_multiplicity", gk::high_multiplicity_json(out.high, s_n)},
                   {"ruzsa_cover", gk::cover_json(out.cover, s_n, u_spec)},
                   {"approximate_group_U", gk::approx_group_json(out.approx, u_spec)}};
      write_file(extract_json, doc.dump(2) + "\n");
      std::cout << "K = " << gk::to_string(k) << ", |V| = " << out.high.v.size() << ", |U| = " << out.u.size()
                << ", |X| = " << out.cover.centers.size() << ", U parameter = " << gk::to_string(out.approx.parameter)
                << "\n";
    } else if (*verify) {
      const auto inst = verify_args.make(verify_n);
      const auto report = gk::verify_theorem(inst);
      write_file(verify_json, report.document.dump(2) + "\n");
      std::cout << "K = " << gk::to_string(report.k) << ", status: " << report.status() << "\n";
      return report.failed ? 1 : 0;
    } else if (*corpus) {
      std::ifstream in(corpus_config);
      const auto instances = gk::parse_corpus(in);
      const auto result = gk::run_corpus(instances, corpus_out);
      std::cout << result.summary_csv;
      return result.any_failed ? 1 : 0;
    } else if (*fuzz) {
      const auto report = gk::fuzz(fuzz_config);
      write_file(fuzz_out, report.dump(2) + "\n");
      std::cout << report["violations"].size() << " violations\n";
      return report["violations"].empty() ? 0 : 1;
    } else if (*check) {
      std::ifstream in(check_path);
      const auto doc = gk::json::parse(in);
      bool ok = true;
      if (doc.contains("stages")) {
        for (const auto& [name, cert] : doc.at("stages").items()) {
          const auto status = gk::verify_document(cert);
          std::cout << name << ": " << gk::to_string(status) << "\n";
          ok = ok && status != gk::VerifyStatus::failed;
        }
      } else {
        const auto status = gk::verify_document(doc);
        std::cout << gk::to_string(status) << "\n";
        ok = status != gk::VerifyStatus::failed;
      }
      return ok ? 0 : 1;
    }
  } catch (const gk::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const gk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const gk::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const gk::PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
