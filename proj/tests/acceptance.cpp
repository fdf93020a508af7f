// Acceptance gate: one self-contained check per shipped guarantee, each with a
// wall-clock budget pinned next to it. Exit status is the number of failures.
//
// Every expected value below is recomputed here from scratch (integer series,
// closed-form tables, dense linear algebra, exhaustive search), never read
// back from the library layer under test.

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "permlike/cyclotomic.hpp"
#include "permlike/group.hpp"
#include "permlike/monomial.hpp"
#include "permlike/oracle.hpp"
#include "permlike/pipeline.hpp"
#include "permlike/presets.hpp"
#include "permlike/residue.hpp"
#include "permlike/synth.hpp"
#include "permlike/util.hpp"

using namespace permlike;

namespace {

struct Failure {
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_ < 8) {
      detail_ += (detail_.empty() ? "" : "; ") + what;
      ++failures_;
    } else if (!ok) {
      ++failures_;
    }
  }
  bool ok() const { return failures_ == 0; }
  std::uint64_t count() const { return checks_; }
  std::string detail() const {
    return detail_ + (failures_ > 8 ? " (+" + std::to_string(failures_ - 8) + " more)" : "");
  }

 private:
  std::uint64_t checks_ = 0;
  std::uint64_t failures_ = 0;
  std::string detail_;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Full-period geometric sum valuations against the directly summed series.

void criterion_geom_sum(Check& ck) {
  for (int n = 3; n <= 12; ++n) {
    const std::uint32_t m = pow2(n);
    const std::uint32_t minus_one = m - 1;
    std::vector<std::uint32_t> rs;
    for (std::uint32_t r = 3; r < m; r += 2) {
      std::uint64_t ord = unit_order(r, n);
      if (ord >= 2 && ord <= pow2(n - 2)) rs.push_back(r);
    }
    std::vector<std::string> errors(rs.size());
    parallel_for(rs.size(), [&](std::size_t i) {
      const std::uint32_t r = rs[i];
      const std::uint64_t ord = unit_order(r, n);
      mpz_class sum = 0, power = 1;
      for (std::uint64_t t = 0; t < ord; ++t) {
        sum += power;
        power *= r;
      }
      mpz_class modulus = mpz_class(1) << n;
      mpz_class residue = sum % modulus;
      GeomSumValuation gv = geom_sum_valuation(r, n);

      if (gv.zero != (r == minus_one)) {
        errors[i] = fmt("n=%d r=%u: zero flag %d", n, r, int(gv.zero));
        return;
      }
      if (r == minus_one) {
        if (residue != 0) errors[i] = fmt("n=%d r=%u: series not divisible by 2^n", n, r);
        return;
      }
      if (residue == 0) {
        errors[i] = fmt("n=%d r=%u: series vanished unexpectedly", n, r);
        return;
      }
      int val = static_cast<int>(mpz_scan1(sum.get_mpz_t(), 0));
      if (gv.valuation != val) {
        errors[i] = fmt("n=%d r=%u: valuation %d, series has %d", n, r, gv.valuation, val);
        return;
      }
      mpz_class odd = (residue >> val) % (mpz_class(1) << (n - val));
      if (odd != static_cast<unsigned long>(gv.odd_part)) {
        errors[i] = fmt("n=%d r=%u: odd part mismatch", n, r);
        return;
      }
      if (geom_sum(r, ord, n) != residue.get_ui())
        errors[i] = fmt("n=%d r=%u: modular sum mismatch", n, r);
    });
    for (const std::string& e : errors) ck.expect(e.empty(), e);
    ck.expect(!rs.empty(), fmt("n=%d: no admissible residues enumerated", n));
  }
}

// ---------------------------------------------------------------------------
// 2. Splitting identity for 2-power cyclotomics, plus the binomial shape.

void criterion_product_identity(Check& ck) {
  for (int a = 0; a + 1 <= 12; ++a)
    for (int k = 1; a + k <= 12; ++k)
      ck.expect(primitive_product_identity(a, k), fmt("identity failed at a=%d k=%d", a, k));

  for (int a = 0; a <= 11; ++a) {
    std::vector<CycloNum> coeffs((std::size_t{1} << a) + 1, CycloNum::zero(1));
    coeffs.front() = CycloNum::one(1);
    coeffs.back() = CycloNum::one(1);
    ck.expect(cyclotomic_poly_2power(a + 1, 1) == CycloPoly::from_coeffs(coeffs, 1),
              fmt("cyclotomic polynomial shape wrong at order exponent %d", a + 1));
  }
}

// ---------------------------------------------------------------------------
// 3. Characteristic factors of A C^k on the unit coordinates, for every
// relation with collapsed torsion, against the three-case closed form.

CharPolyFactors expected_unit_factors(int n, int a_exp, int sign, std::uint32_t k) {
  const std::uint64_t block = std::uint64_t{1} << a_exp;
  const std::size_t copies = std::size_t{1} << (n - a_exp - 1);
  CharPolyFactors out;
  auto fill = [&](RootOfUnity corner) { out.factors.assign(copies, {block, corner}); };

  if (sign < 0) {
    // Inverting-type relation: parity of k decides the corner sign.
    fill((k & 1u) ? RootOfUnity::minus_one() : RootOfUnity::one());
    return out;
  }
  if (k == 0 || v2(k) >= n - a_exp) {
    fill(RootOfUnity::one());
    return out;
  }
  const int nu = v2(k);
  const int c = n - a_exp - nu;  // corners are the primitive 2^c-th roots
  for (std::uint64_t u = 1; u < (std::uint64_t{1} << c); u += 2)
    for (std::uint64_t copy = 0; copy < (std::uint64_t{1} << nu); ++copy)
      out.factors.push_back({block, RootOfUnity::make(c, u)});
  std::sort(out.factors.begin(), out.factors.end(), [](const CharFactor& x, const CharFactor& y) {
    return x.block != y.block ? x.block < y.block : x.corner < y.corner;
  });
  return out;
}

void criterion_unit_char_factors(Check& ck) {
  for (int n = 4; n <= 6; ++n) {
    const std::uint32_t m = pow2(n);
    std::vector<std::uint32_t> units;
    for (std::uint32_t j = 1; j < m; j += 2) units.push_back(j);
    const std::vector<std::uint32_t> zeros(m, 0);

    for (std::uint32_t r = 1; r < m; r += 2) {
      if (r == m - 1) continue;  // pure inversion is the dihedral criterion's turf
      UnitDecomposition ud = unit_decompose(r, n);
      const int a_exp = n - ud.b;  // order of r is 2^(n-b)
      MonomialMatrix A = mult_map_matrix(n, n, r, zeros);
      for (std::uint32_t k = 0; k < m; ++k) {
        MonomialMatrix M = restrict_to(compose(A, cycle_power(n, n, k)), units, n - 1);
        CharPolyFactors got = char_factors(M);
        CharPolyFactors want = expected_unit_factors(n, a_exp, ud.sign, k);
        ck.expect(got == want, fmt("n=%d r=%u k=%u: factor multiset mismatch", n, r, k));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 4. Inverting relation: both dihedral coefficient classes match their parity
// table, the quaternion class is rejected with the pinned witness polynomial.

CycloPoly dihedral_table_poly(int n, int level, bool two_fixed_lines) {
  CycloPoly p = CycloPoly::constant(CycloNum::one(level));
  const std::size_t pairs = (std::size_t{1} << (n - 1)) - (two_fixed_lines ? 1 : 0);
  if (two_fixed_lines) {
    p.mul_binomial_factor(1, RootOfUnity::one());
    p.mul_binomial_factor(1, RootOfUnity::one());
  }
  for (std::size_t i = 0; i < pairs; ++i) p.mul_binomial_factor(2, RootOfUnity::one());
  return p;
}

void criterion_dihedral_quaternion(Check& ck) {
  for (int n = 3; n <= 6; ++n) {
    const int level = n;
    CycloPoly split = dihedral_table_poly(n, level, true);
    CycloPoly paired = dihedral_table_poly(n, level, false);

    for (const Presentation& p : canonical_presentations(n)) {
      if (p.H.kind != SubgroupDescriptor::Kind::MinusOne) continue;
      if (p.torsion_label == "quaternion") {
        CheckResult res = run_check(p.spec, VerifyTier::Fast);
        ck.expect(res.status == CheckStatus::NotPermutationLike,
                  fmt("n=%d: quaternion presentation was not rejected", n));
        if (res.analysis && res.analysis->witness) {
          CycloPoly witness = expand_factors(res.analysis->witness->factors, level);
          CycloPoly want = CycloPoly::constant(CycloNum::one(level));
          want.mul_binomial_factor(1, RootOfUnity::one());
          want.mul_binomial_factor(1, RootOfUnity::one());
          want.mul_binomial_factor(2, RootOfUnity::minus_one());
          for (std::size_t i = 0; i < (std::size_t{1} << (n - 2)) - 1; ++i)
            want.mul_binomial_factor(4, RootOfUnity::one());
          ck.expect(witness == want, fmt("n=%d: quaternion witness polynomial mismatch", n));
        } else {
          ck.expect(false, fmt("n=%d: quaternion rejection carries no witness", n));
        }
        continue;
      }

      // Both remaining classes are dihedral; the flipped coefficient swaps the
      // k parities of the two table rows.
      ValidatedGroup vg = validate(p.spec);
      bool flipped = p.torsion_label == "dihedral-flip";
      const MonomialMatrix& A = vg.gen_matrices.at(0);
      for (std::uint32_t k = 0; k < pow2(n); ++k) {
        CycloPoly got = expand_factors(char_factors(compose(A, cycle_power(n, level, k))), level);
        bool even = (k & 1u) == 0;
        const CycloPoly& want = (even != flipped) ? split : paired;
        ck.expect(got == want, fmt("n=%d %s k=%u: table row mismatch", n,
                                   p.torsion_label.c_str(), k));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 5 and 6. Full certification sweep: canonical presentation plus 100 seeded
// twists each, everything permutation-like must come back certified and
// re-verified, the quaternion classes must come back rejected with a witness.

void grid_sweep(Check& ck, bool product_side) {
  GridOptions opt;
  opt.twists_per_presentation = 100;
  opt.seed = product_side ? 0xB0ull : 0xA0ull;
  opt.tier = VerifyTier::Both;  // dense tier engages automatically at n <= 4

  for (int n = 3; n <= 6; ++n) {
    std::vector<GridRow> rows = run_grid(n, opt);
    std::size_t seen = 0;
    for (const GridRow& row : rows) {
      bool is_product = row.h_label.rfind("product", 0) == 0;
      if (is_product != product_side) continue;
      ++seen;
      bool quaternion = row.torsion_label.find("quaternion") != std::string::npos;
      if (quaternion) {
        ck.expect(!row.permutation_like && !row.certified && !row.witness_word.empty(),
                  fmt("n=%d %s/%s twist=%s: quaternion row not rejected", n,
                      row.h_label.c_str(), row.torsion_label.c_str(), row.twist.c_str()));
      } else {
        ck.expect(row.permutation_like && row.certified && row.verified,
                  fmt("n=%d %s/%s twist=%s: row not fully certified", n, row.h_label.c_str(),
                      row.torsion_label.c_str(), row.twist.c_str()));
      }
    }
    std::size_t presentations = 0;
    for (const Presentation& p : canonical_presentations(n))
      if ((p.H.kind == SubgroupDescriptor::Kind::Product) == product_side) ++presentations;
    ck.expect(seen == presentations * 101,
              fmt("n=%d: expected %zu rows, saw %zu", n, presentations * 101, seen));
  }
}

void criterion_cyclic_sweep(Check& ck) { grid_sweep(ck, false); }

void criterion_product_sweep(Check& ck) {
  grid_sweep(ck, true);

  // The reflection must come out fixing both pinned lines exactly, and the
  // twisted systems must exercise the commuting adjustment visibly.
  std::size_t commuting_adjustments = 0;
  for (int n = 3; n <= 6; ++n) {
    const std::uint32_t half = pow2(n) / 2;
    for (const Presentation& p : canonical_presentations(n)) {
      if (p.H.kind != SubgroupDescriptor::Kind::Product) continue;
      if (p.torsion_label.find("quaternion") != std::string::npos) continue;
      SplitMix64 rng{0x6eedull + static_cast<std::uint64_t>(n)};
      for (int round = 0; round < 6; ++round) {
        GroupSpec spec = round == 0 ? p.spec : seeded_twist(p.spec, rng.next());
        SynthesisResult res = synthesize(validate(spec));
        bool b_ok = res.B && res.B->perm[half] == half && res.B->coeffs[half] == 0 &&
                    res.B->perm[0] == 0 && res.B->coeffs[0] == 0;
        ck.expect(b_ok, fmt("n=%d %s round=%d: reflection does not fix the pinned lines", n,
                            p.torsion_label.c_str(), round));
        std::vector<std::uint32_t> minus = mult_permutation(n, neg_mod(reduce(1, n), n));
        bool image_ok = false;
        for (const auto& [name, image] : res.cert.generator_permutations)
          if (name == "B" && image == minus) image_ok = true;
        ck.expect(image_ok, fmt("n=%d %s round=%d: reflection image is not inversion", n,
                                p.torsion_label.c_str(), round));
        for (const std::string& s : res.cert.substitutions)
          if (s.rfind("B:=", 0) == 0) ++commuting_adjustments;
      }
    }
  }
  ck.expect(commuting_adjustments > 0,
            "no twisted system exercised the commuting adjustment");
}

// ---------------------------------------------------------------------------
// 7. Oracle independence: factored char polys against dense trace-recurrence
// char polys, and literal eigenline conjugation on every certified element.

void criterion_oracle_independence(Check& ck) {
  for (int n = 1; n <= 4; ++n)
    for (const Presentation& p : canonical_presentations(n)) {
      ValidatedGroup vg = validate(p.spec);
      std::vector<Element> els = enumerate_elements(vg);

      std::vector<std::string> errors(els.size());
      parallel_for(els.size(), [&](std::size_t i) {
        const MonomialMatrix& m = els[i].m;
        if (!(expand_factors(char_factors(m), m.level) == brute_char_poly(dense_expand(m))))
          errors[i] = fmt("n=%d %s el=%s: char poly mismatch", n, p.torsion_label.c_str(),
                          els[i].word.c_str());
      });
      for (const std::string& e : errors) ck.expect(e.empty(), e);

      if (p.torsion_label.find("quaternion") != std::string::npos) continue;
      PermBasisCertificate cert = synthesize(vg).cert;
      std::vector<std::string> dense_errors(els.size());
      parallel_for(els.size(), [&](std::size_t i) {
        MonomialMatrix w = rescaled(els[i].m, cert.rescale);
        DenseMatrix conj = vandermonde_conjugate(dense_expand(w), n);
        if (!as_permutation_matrix(conj))
          dense_errors[i] = fmt("n=%d %s el=%s: conjugate is not a literal 0/1 matrix", n,
                                p.torsion_label.c_str(), els[i].word.c_str());
      });
      for (const std::string& e : dense_errors) ck.expect(e.empty(), e);
    }
}

// ---------------------------------------------------------------------------
// 8. The eigenvalue-multiset similarity test against exhaustive decomposition.
// The maximal-order eigenvalue pins the next cycle length at every step, so
// the exhaustive search is a forced subtraction loop: no branching exists.

std::optional<std::vector<std::uint64_t>> cycle_search(const CharPolyFactors& f) {
  int top = 0;
  for (const CharFactor& fac : f.factors) {
    if (fac.block == 0 || (fac.block & (fac.block - 1))) return std::nullopt;
    RootOfUnity w = fac.corner.normalized();
    top = std::max(top, w.level + v2(fac.block));
  }
  std::map<std::uint64_t, std::int64_t> count;
  for (const CharFactor& fac : f.factors) {
    RootOfUnity w = fac.corner.normalized();
    const int beta = v2(fac.block);
    const std::uint64_t base = std::uint64_t{w.exp} << (top - w.level - beta);
    for (std::uint64_t t = 0; t < fac.block; ++t)
      ++count[(base + (t << (top - beta))) & ((std::uint64_t{1} << top) - 1)];
  }
  std::vector<std::uint64_t> cycles;
  while (!count.empty()) {
    int best = 0;
    for (const auto& [e, c] : count)
      best = std::max(best, e == 0 ? 0 : top - v2(e));
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << best); ++i) {
      auto it = count.find(i << (top - best));
      if (it == count.end() || it->second <= 0) return std::nullopt;
      if (--it->second == 0) count.erase(it);
    }
    if (cycles.size() <= static_cast<std::size_t>(best)) cycles.resize(best + 1, 0);
    ++cycles[static_cast<std::size_t>(best)];
  }
  return cycles;
}

void compare_similarity(Check& ck, const CharPolyFactors& f, const std::string& where) {
  std::optional<std::vector<std::uint64_t>> search = cycle_search(f);
  PermVerdict verdict = perm_similarity(f);
  ck.expect(search.has_value() == verdict.permutation_type,
            where + ": verdicts disagree (search says " +
                (search ? "similar" : "not similar") + ")");
  if (search && verdict.permutation_type) {
    std::vector<std::uint64_t> a = *search, b = verdict.cycle_counts;
    while (!a.empty() && a.back() == 0) a.pop_back();
    while (!b.empty() && b.back() == 0) b.pop_back();
    ck.expect(a == b, where + ": cycle types disagree");
  }
}

void criterion_similarity_search(Check& ck) {
  std::set<std::string> seen;
  for (int n = 1; n <= 5; ++n)
    for (const Presentation& p : canonical_presentations(n)) {
      ValidatedGroup vg = validate(p.spec);
      for (const Element& el : enumerate_elements(vg)) {
        CharPolyFactors f = char_factors(el.m);
        std::string sig = std::to_string(n);
        for (const CharFactor& fac : f.factors) {
          RootOfUnity w = fac.corner.normalized();
          sig += "|" + std::to_string(fac.block) + ":" + std::to_string(w.level) + ":" +
                 std::to_string(w.exp);
        }
        if (!seen.insert(sig).second) continue;
        compare_similarity(ck, f, fmt("n=%d element %s", n, el.word.c_str()));
      }
    }

  SplitMix64 rng{0x5ea4c4ull};
  for (int round = 0; round < 1000; ++round) {
    CharPolyFactors f;
    std::uint64_t degree_left = 1 + rng.below(32);
    if (round % 3 == 0) {
      // Planted positive: a genuine permutation spectrum.
      while (degree_left > 0) {
        int d = static_cast<int>(rng.below(6));
        std::uint64_t block = std::uint64_t{1} << d;
        if (block > degree_left) continue;
        f.factors.push_back({block, RootOfUnity::one()});
        degree_left -= block;
      }
    } else {
      while (degree_left > 0) {
        int d = static_cast<int>(rng.below(6));
        std::uint64_t block = std::uint64_t{1} << d;
        if (block > degree_left) continue;
        int level = static_cast<int>(rng.below(5));
        RootOfUnity corner = RootOfUnity::make(level, rng.below(std::uint64_t{1} << level));
        f.factors.push_back({block, corner});
        degree_left -= block;
      }
    }
    std::sort(f.factors.begin(), f.factors.end(),
              [](const CharFactor& x, const CharFactor& y) {
                return x.block != y.block ? x.block < y.block : x.corner < y.corner;
              });
    compare_similarity(ck, f, fmt("seeded multiset %d", round));
  }
}

// ---------------------------------------------------------------------------
// 9. Single-field certificate corruption is always rejected.

void criterion_mutation_rejection(Check& ck) {
  for (int n : {3, 4}) {
    struct Prepared {
      ValidatedGroup vg;
      PermBasisCertificate cert;
    };
    std::vector<Prepared> pool;
    for (const Presentation& p : canonical_presentations(n)) {
      if (p.torsion_label.find("quaternion") != std::string::npos) continue;
      ValidatedGroup vg = validate(p.spec);
      PermBasisCertificate cert = synthesize(vg).cert;
      ck.expect(verify_certificate(vg, cert, VerifyTier::Both).ok,
                fmt("n=%d %s: pristine certificate failed", n, p.torsion_label.c_str()));
      pool.push_back({std::move(vg), std::move(cert)});
    }

    SplitMix64 rng{0xbadc0deull + static_cast<std::uint64_t>(n)};
    const std::uint32_t dim = pow2(n);
    for (int round = 0; round < 100; ++round) {
      Prepared& pick = pool[round % pool.size()];
      PermBasisCertificate mutated = pick.cert;
      const std::uint32_t mask = pow2(mutated.level) - 1;
      std::string what;
      if (rng.next() & 1) {
        std::uint32_t idx = static_cast<std::uint32_t>(rng.below(dim));
        std::uint32_t delta = 1 + static_cast<std::uint32_t>(rng.below(mask));
        mutated.rescale[idx] = (mutated.rescale[idx] + delta) & mask;
        what = fmt("rescale[%u] += %u", idx, delta);
      } else {
        std::size_t gi = rng.below(mutated.generator_permutations.size());
        auto& image = mutated.generator_permutations[gi].second;
        std::uint32_t idx = static_cast<std::uint32_t>(rng.below(dim));
        std::uint32_t shift = 1 + static_cast<std::uint32_t>(rng.below(dim - 1));
        image[idx] = (image[idx] + shift) % dim;
        what = fmt("image %s[%u] += %u", mutated.generator_permutations[gi].first.c_str(),
                   idx, shift);
      }
      VerificationReport rep = verify_certificate(pick.vg, mutated, VerifyTier::Both);
      ck.expect(!rep.ok, fmt("n=%d round=%d: mutation survived (%s)", n, round, what.c_str()));
    }
  }
}

// ---------------------------------------------------------------------------

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  void (*run)(Check&);
};

const Criterion kCriteria[] = {
    {1, "geometric-sum-valuation", 5.0, criterion_geom_sum},
    {2, "cyclotomic-splitting-identity", 5.0, criterion_product_identity},
    {3, "restricted-char-poly-closed-forms", 30.0, criterion_unit_char_factors},
    {4, "dihedral-quaternion-dichotomy", 10.0, criterion_dihedral_quaternion},
    {5, "cyclic-quotient-certification", 300.0, criterion_cyclic_sweep},
    {6, "product-quotient-certification", 300.0, criterion_product_sweep},
    {7, "oracle-independence", 600.0, criterion_oracle_independence},
    {8, "similarity-test-vs-search", 60.0, criterion_similarity_search},
    {9, "certificate-mutation-rejection", 60.0, criterion_mutation_rejection},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) {
    try {
      wanted.insert(std::stoi(argv[i]));
    } catch (...) {
      std::fprintf(stderr, "usage: %s [criterion numbers]\n", argv[0]);
      return 64;
    }
  }

  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    Check ck;
    auto start = std::chrono::steady_clock::now();
    std::string crash;
    try {
      c.run(ck);
    } catch (const std::exception& e) {
      crash = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool ok = crash.empty() && ck.ok() && secs <= c.budget_seconds;
    std::printf("[%s] %d %s  (%llu checks, %.2fs, budget %.0fs)\n", ok ? "PASS" : "FAIL", c.id,
                c.name, static_cast<unsigned long long>(ck.count()), secs, c.budget_seconds);
    if (!crash.empty()) std::printf("       threw: %s\n", crash.c_str());
    if (!ck.ok()) std::printf("       %s\n", ck.detail().c_str());
    if (crash.empty() && ck.ok() && secs > c.budget_seconds)
      std::printf("       over budget by %.2fs\n", secs - c.budget_seconds);
    if (!ok) ++failures;
    std::fflush(stdout);
  }
  return failures;
}
