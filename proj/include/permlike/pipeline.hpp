#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permlike/group.hpp"
#include "permlike/oracle.hpp"
#include "permlike/presets.hpp"
#include "permlike/synth.hpp"

namespace permlike {

// Process exit codes double as result states.
enum class CheckStatus : int {
  Certified = 0,
  Failed = 1,
  NotPermutationLike = 2,
  OutsideScope = 3,
};

struct CheckResult {
  CheckStatus status = CheckStatus::Failed;
  ValidatedGroup vg;
  std::optional<GroupAnalysis> analysis;   // absent when the closure scan is infeasible
  std::optional<PermBasisCertificate> cert;
  std::optional<VerificationReport> verification;
};

// validate -> element scan -> (certify + verify | witness | scope report).
// A verification failure on a fresh certificate is a ContradictionError: the
// synthesizer proved something the verifier rejects, so one of them is wrong.
CheckResult run_check(const GroupSpec& spec, VerifyTier tier);

struct GridRow {
  int n = 0;
  std::string h_label;
  std::string torsion_label;
  std::string twist;  // "-" or the seed
  std::uint64_t order = 0;
  bool permutation_like = false;
  bool certified = false;
  bool verified = false;
  std::string witness_word;    // first gate violation, when any
  std::string witness_reason;
};

struct GridOptions {
  int twists_per_presentation = 0;
  std::uint64_t seed = 1;
  VerifyTier tier = VerifyTier::Both;
};

// Canonical presentations at this n, plus seeded same-group twists of each.
// Work items run through the worker pool; results keep deterministic order.
std::vector<GridRow> run_grid(int n, const GridOptions& opt);

std::string grid_to_tsv(const std::vector<GridRow>& rows);

}  // namespace permlike
