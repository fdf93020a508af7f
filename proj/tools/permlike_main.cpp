#include <chrono>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "permlike/io.hpp"
#include "permlike/pipeline.hpp"
#include "permlike/selftest.hpp"

namespace {

using namespace permlike;

VerifyTier parse_tier(const std::string& s) {
  if (s == "fast") return VerifyTier::Fast;
  if (s == "dense") return VerifyTier::Dense;
  if (s == "both") return VerifyTier::Both;
  throw ParseError("unknown tier: " + s + " (expected fast|dense|both)");
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

int cmd_check(const std::string& spec_path, const std::string& tier_name,
              const std::string& out_path) {
  Timer timer;
  GroupSpec spec = load_group_spec(spec_path);
  CheckResult res = run_check(spec, parse_tier(tier_name));

  std::cout << "relation subgroup: " << res.vg.H.label() << "\n";
  if (res.analysis) std::cout << "group order: " << res.analysis->order << "\n";
  for (const auto& d : res.vg.derivations) std::cout << "canonical generator: " << d << "\n";

  switch (res.status) {
    case CheckStatus::Certified: {
      std::cout << "result: certified permutation-like\n";
      const VerificationReport& v = *res.verification;
      std::cout << "verification: " << v.elements_checked << " elements checked"
                << (v.fast_ran ? ", fast tier" : "") << (v.dense_ran ? ", dense tier" : "");
      if (!v.note.empty()) std::cout << " (" << v.note << ")";
      std::cout << "\n";
      for (const auto& line : res.cert->trace) std::cout << "trace: " << line << "\n";
      if (!out_path.empty()) {
        save_certificate(*res.cert, out_path);
        std::cout << "certificate written to " << out_path << "\n";
      }
      break;
    }
    case CheckStatus::NotPermutationLike: {
      std::cout << "result: not permutation-like\n";
      const Witness& w = *res.analysis->witness;
      std::cout << "witness element: " << w.word << "\n";
      std::cout << "char factors: " << w.factors.to_string() << "\n";
      std::cout << "violation: " << w.verdict.reason << "\n";
      break;
    }
    case CheckStatus::OutsideScope: {
      std::cout << "result: outside scope\n";
      std::cout << "reason: " << *res.vg.scope_violation << "\n";
      if (res.analysis) {
        std::cout << "closure scan: order " << res.analysis->order << ", "
                  << (res.analysis->permutation_like ? "no gate violation found"
                                                     : "gate violation at " +
                                                           res.analysis->witness->word)
                  << "\n";
      }
      break;
    }
    case CheckStatus::Failed: break;
  }
  std::cerr << "check took " << timer.ms() << " ms\n";
  return static_cast<int>(res.status);
}

int cmd_enumerate(int n, const std::string& twists, const std::string& tier_name,
                  const std::string& out_path) {
  Timer timer;
  GridOptions opt;
  opt.tier = parse_tier(tier_name);
  if (!twists.empty()) {
    // "seeded:SEED:COUNT"
    std::string head = "seeded:";
    if (twists.compare(0, head.size(), head) != 0)
      throw ParseError("twist policy must be 'seeded:SEED:COUNT'");
    std::string rest = twists.substr(head.size());
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw ParseError("twist policy must be 'seeded:SEED:COUNT'");
    try {
      opt.seed = std::stoull(rest.substr(0, colon));
      opt.twists_per_presentation = std::stoi(rest.substr(colon + 1));
    } catch (const std::exception&) {
      throw ParseError("twist policy must be 'seeded:SEED:COUNT' with decimal integers");
    }
    if (opt.twists_per_presentation < 0 || opt.twists_per_presentation > 100000)
      throw ParseError("twist count out of range");
  }
  std::vector<GridRow> rows = run_grid(n, opt);
  std::string tsv = grid_to_tsv(rows);
  if (out_path.empty()) {
    std::cout << tsv;
  } else {
    write_text_file(out_path, tsv);
    std::cout << rows.size() << " rows written to " << out_path << "\n";
  }
  std::size_t certified = 0, witnesses = 0;
  for (const auto& r : rows) {
    certified += r.certified;
    witnesses += !r.witness_word.empty();
  }
  std::cout << "rows: " << rows.size() << ", certified: " << certified
            << ", gate violations: " << witnesses << "\n";
  std::cerr << "enumerate took " << timer.ms() << " ms\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permutation-likeness checker for monomial matrix groups over 2-power roots"};
  app.require_subcommand(1);

  std::string spec_path, cert_out, tier = "both";
  auto* check = app.add_subcommand("check", "analyze one group spec and certify or refute");
  check->add_option("spec", spec_path, "group spec JSON file")->required();
  check->add_option("--tier", tier, "verification tier: fast|dense|both (default both)");
  check->add_option("--out", cert_out, "write the certificate JSON here");

  int n = 3;
  std::string twists, grid_out, grid_tier = "both";
  auto* enumerate = app.add_subcommand("enumerate", "run the canonical presentation grid");
  enumerate->add_option("--n", n, "index exponent (dimension 2^n)")->required();
  enumerate->add_option("--twists", twists, "seeded twist policy, e.g. seeded:42:100");
  enumerate->add_option("--tier", grid_tier, "verification tier: fast|dense|both");
  enumerate->add_option("--out", grid_out, "write the TSV table here");

  auto* selftest = app.add_subcommand("selftest", "run the functional scoreboard");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(spec_path, tier, cert_out);
    if (enumerate->parsed()) return cmd_enumerate(n, twists, grid_tier, grid_out);
    if (selftest->parsed()) return run_selftest(std::cout) == 0 ? 0 : 1;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const ScopeError& e) {
    std::cerr << "scope error: " << e.what() << "\n";
    return 3;
  } catch (const ContradictionError& e) {
    std::cerr << "internal contradiction (theory violation): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
