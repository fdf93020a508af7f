#include "permlike/pipeline.hpp"

#include <sstream>

namespace permlike {

CheckResult run_check(const GroupSpec& spec, VerifyTier tier) {
  CheckResult out;
  out.vg = validate(spec);

  if (out.vg.scope_violation) {
    out.status = CheckStatus::OutsideScope;
    try {
      out.analysis = permutation_like_scan(out.vg);
    } catch (const ScopeError&) {
      // Closure too large to scan; the scope verdict stands on its own.
    }
    return out;
  }

  out.analysis = permutation_like_scan(out.vg);
  if (!out.analysis->permutation_like) {
    out.status = CheckStatus::NotPermutationLike;
    return out;
  }

  SynthesisResult synth = synthesize(out.vg);
  VerificationReport rep = verify_certificate(out.vg, synth.cert, tier);
  if (!rep.ok)
    throw ContradictionError("fresh certificate failed verification: " + rep.failure);
  out.cert = std::move(synth.cert);
  out.verification = std::move(rep);
  out.status = CheckStatus::Certified;
  return out;
}

std::vector<GridRow> run_grid(int n, const GridOptions& opt) {
  struct Item {
    const Presentation* pres;
    std::optional<std::uint64_t> seed;
  };
  std::vector<Presentation> presentations = canonical_presentations(n);
  std::vector<Item> items;
  for (const auto& p : presentations) {
    items.push_back({&p, std::nullopt});
    for (int i = 0; i < opt.twists_per_presentation; ++i) {
      // Mix the row index in so every presentation gets distinct twists.
      std::uint64_t s = opt.seed + 0x9e3779b97f4a7c15ULL * (items.size() + 1);
      items.push_back({&p, s});
    }
  }

  std::vector<GridRow> rows(items.size());
  parallel_for(items.size(), [&](std::size_t idx) {
    const Item& it = items[idx];
    GridRow row;
    row.n = n;
    row.h_label = it.pres->h_label;
    row.torsion_label = it.pres->torsion_label;
    row.twist = it.seed ? std::to_string(*it.seed) : "-";
    GroupSpec spec = it.seed ? seeded_twist(it.pres->spec, *it.seed) : it.pres->spec;
    CheckResult res = run_check(spec, opt.tier);
    if (res.vg.H.kind != it.pres->H.kind || res.vg.H.a != it.pres->H.a)
      throw ContradictionError("grid row classified off its presentation shape");
    if (res.analysis) {
      row.order = res.analysis->order;
      row.permutation_like = res.analysis->permutation_like;
      if (res.analysis->witness) {
        row.witness_word = res.analysis->witness->word;
        row.witness_reason = res.analysis->witness->verdict.reason;
      }
    }
    row.certified = res.status == CheckStatus::Certified;
    row.verified = res.verification && res.verification->ok;
    rows[idx] = std::move(row);
  });
  return rows;
}

std::string grid_to_tsv(const std::vector<GridRow>& rows) {
  std::ostringstream out;
  out << "n\tsubgroup\ttorsion\ttwist\torder\tpermutation_like\tcertified\tverified\twitness"
      << "\treason\n";
  for (const auto& r : rows) {
    out << r.n << '\t' << r.h_label << '\t' << r.torsion_label << '\t' << r.twist << '\t'
        << r.order << '\t' << (r.permutation_like ? "yes" : "no") << '\t'
        << (r.certified ? "yes" : "no") << '\t' << (r.verified ? "yes" : "no") << '\t'
        << (r.witness_word.empty() ? "-" : r.witness_word) << '\t'
        << (r.witness_reason.empty() ? "-" : r.witness_reason) << '\n';
  }
  return out.str();
}

}  // namespace permlike
