#include "permlike/selftest.hpp"

#include <functional>
#include <string>
#include <vector>

#include "permlike/cyclotomic.hpp"
#include "permlike/kernels.hpp"
#include "permlike/oracle.hpp"
#include "permlike/pipeline.hpp"

namespace permlike {

namespace {

struct Check {
  const char* key;
  std::function<bool()> body;
};

bool unit_decompose_roundtrip() {
  for (int n = 1; n <= 10; ++n) {
    for (std::uint32_t r = 1; r < pow2(n); r += 2) {
      UnitDecomposition d = unit_decompose(r, n);
      // Additive normal form: r = sign + 2^b * v with b = v2(r - sign).
      std::uint64_t sign_residue = d.sign == 1 ? reduce(1, n) : neg_mod(reduce(1, n), n);
      std::uint64_t rebuilt = sign_residue + (std::uint64_t{d.v} << d.b);
      if (reduce(rebuilt, n) != r) return false;
      if (d.order != unit_order(r, n)) return false;
    }
  }
  return true;
}

bool subgroup_shapes() {
  for (int n = 3; n <= 8; ++n) {
    for (int a = 1; a <= n - 2; ++a) {
      std::uint32_t rp = canonical_plus_generator(n, a);
      std::uint32_t rm = canonical_minus_generator(n, a);
      std::uint32_t m1 = neg_mod(reduce(1, n), n);
      SubgroupDescriptor p = subgroup_classify(std::vector<std::uint32_t>{rp}, n);
      if (p.kind != SubgroupDescriptor::Kind::CyclicPlus || p.a != a) return false;
      SubgroupDescriptor m = subgroup_classify(std::vector<std::uint32_t>{rm}, n);
      if (m.kind != SubgroupDescriptor::Kind::CyclicMinus || m.a != a) return false;
      SubgroupDescriptor pr = subgroup_classify(std::vector<std::uint32_t>{rp, m1}, n);
      if (pr.kind != SubgroupDescriptor::Kind::Product || pr.a != a) return false;
    }
  }
  return true;
}

bool geom_sum_closed_form() {
  for (int n = 1; n <= 10; ++n) {
    for (std::uint32_t r = 1; r < pow2(n); r += 2) {
      GeomSumValuation gv = geom_sum_valuation(r, n);
      std::uint32_t literal = geom_sum(r, unit_order(r, n), n);
      if (gv.zero != (literal == 0)) return false;
      if (!gv.zero && v2(literal) != gv.valuation) return false;
    }
  }
  return true;
}

bool kernel_equivalence() {
  const kernels::Backend& scalar = kernels::scalar();
  const kernels::Backend* backends[] = {kernels::avx2(), kernels::neon()};
  SplitMix64 rng{0x5eed5eedULL};
  for (const kernels::Backend* b : backends) {
    if (!b) continue;
    for (int round = 0; round < 20; ++round) {
      std::size_t count = 1 + rng.below(300);
      std::uint32_t mask = pow2(1 + static_cast<int>(rng.below(24))) - 1u;
      std::vector<std::uint32_t> x(count), y(count), idx(count);
      for (auto& v : x) v = static_cast<std::uint32_t>(rng.next()) & mask;
      for (auto& v : y) v = static_cast<std::uint32_t>(rng.next()) & mask;
      for (auto& v : idx) v = static_cast<std::uint32_t>(rng.below(count));
      std::vector<std::uint32_t> o1(count), o2(count);

      scalar.add_mod(x.data(), y.data(), o1.data(), count, mask);
      b->add_mod(x.data(), y.data(), o2.data(), count, mask);
      if (o1 != o2) return false;

      scalar.gather(x.data(), idx.data(), o1.data(), count);
      b->gather(x.data(), idx.data(), o2.data(), count);
      if (o1 != o2) return false;

      scalar.gather_add_mod(x.data(), y.data(), idx.data(), o1.data(), count, mask);
      b->gather_add_mod(x.data(), y.data(), idx.data(), o2.data(), count, mask);
      if (o1 != o2) return false;

      std::uint32_t step = static_cast<std::uint32_t>(rng.next()) & mask;
      scalar.add_ramp_mod(x.data(), o1.data(), count, step, mask);
      b->add_ramp_mod(x.data(), o2.data(), count, step, mask);
      if (o1 != o2) return false;

      scalar.rescale_mod(x.data(), y.data(), idx.data(), o1.data(), count, mask);
      b->rescale_mod(x.data(), y.data(), idx.data(), o2.data(), count, mask);
      if (o1 != o2) return false;

      if (scalar.all_zero(x.data(), count) != b->all_zero(x.data(), count)) return false;
      std::vector<std::uint32_t> z(count, 0);
      if (!b->all_zero(z.data(), count)) return false;
    }
  }
  return true;
}

bool cyclotomic_inverse() {
  SplitMix64 rng{42};
  for (int level = 1; level <= 6; ++level) {
    for (int round = 0; round < 5; ++round) {
      CycloNum x = CycloNum::zero(level);
      for (int t = 0; t < 3; ++t) {
        mpq_class q(1 + static_cast<long>(rng.below(9)), 1 + static_cast<long>(rng.below(7)));
        q.canonicalize();
        x += CycloNum::from_root(RootOfUnity::make(level, rng.below(pow2(level))), level)
                 .scaled(q);
      }
      if (x.is_zero()) continue;
      if (!(x * x.inverse() == CycloNum::one(level))) return false;
    }
  }
  return true;
}

bool product_identity_small() {
  for (int a = 0; a <= 4; ++a)
    for (int k = 1; k <= 3; ++k)
      if (!primitive_product_identity(a, k)) return false;
  return true;
}

bool char_poly_oracle_agreement() {
  SplitMix64 rng{7};
  for (int n = 1; n <= 3; ++n) {
    for (int round = 0; round < 4; ++round) {
      const std::uint32_t dim = pow2(n);
      MonomialMatrix m = mono_identity(n, n + 1);
      // Random monomial matrix: random permutation + random coefficients.
      for (std::uint32_t j = dim; j > 1; --j) {
        std::uint32_t k = static_cast<std::uint32_t>(rng.below(j));
        std::swap(m.perm[j - 1], m.perm[k]);
      }
      for (auto& c : m.coeffs) c = static_cast<std::uint32_t>(rng.below(pow2(n + 1)));
      CycloPoly via_factors = expand_factors(char_factors(m), m.level);
      CycloPoly via_traces = brute_char_poly(dense_expand(m));
      if (!(via_factors == via_traces)) return false;
    }
  }
  return true;
}

bool grid_small_certified() {
  GridOptions opt;
  opt.twists_per_presentation = 2;
  opt.seed = 11;
  for (int n = 2; n <= 4; ++n) {
    std::vector<GridRow> rows = run_grid(n, opt);
    if (rows.empty()) return false;
    for (const auto& row : rows) {
      bool quaternionic = row.torsion_label.find("quaternion") != std::string::npos;
      if (quaternionic) {
        if (row.permutation_like || row.certified) return false;
        if (row.witness_word.empty()) return false;
      } else {
        if (!row.permutation_like || !row.certified || !row.verified) return false;
      }
    }
  }
  return true;
}

bool mutation_detected() {
  std::vector<Presentation> pres = canonical_presentations(3);
  for (const auto& p : pres) {
    if (p.torsion_label.find("quaternion") != std::string::npos) continue;
    ValidatedGroup vg = validate(p.spec);
    SynthesisResult synth = synthesize(vg);
    if (!verify_certificate(vg, synth.cert, VerifyTier::Both).ok) return false;
    if (!synth.cert.rescale.empty()) {
      PermBasisCertificate bad = synth.cert;
      bad.rescale[bad.rescale.size() / 2] ^= 1u << (p.spec.level - 1);
      bool rejected = false;
      try {
        rejected = !verify_certificate(vg, bad, VerifyTier::Both).ok;
      } catch (const Error&) {
        rejected = true;
      }
      if (!rejected) return false;
    }
  }
  return true;
}

}  // namespace

int run_selftest(std::ostream& out) {
  std::vector<Check> checks = {
      {"residue/unit-decompose-roundtrip", unit_decompose_roundtrip},
      {"residue/subgroup-shapes", subgroup_shapes},
      {"residue/geom-sum-valuation", geom_sum_closed_form},
      {"kernels/backend-equivalence", kernel_equivalence},
      {"cyclotomic/inverse", cyclotomic_inverse},
      {"cyclotomic/product-identity", product_identity_small},
      {"oracle/char-poly-agreement", char_poly_oracle_agreement},
      {"pipeline/small-grid-certified", grid_small_certified},
      {"certificate/mutation-detected", mutation_detected},
  };
  int failures = 0;
  for (const auto& c : checks) {
    bool ok = false;
    std::string err;
    try {
      ok = c.body();
    } catch (const std::exception& e) {
      err = e.what();
    }
    if (ok) {
      out << "PASS " << c.key << "\n";
    } else {
      ++failures;
      out << "FAIL " << c.key << (err.empty() ? "" : ": " + err) << "\n";
    }
  }
  out << (failures == 0 ? "selftest: all checks passed\n"
                        : "selftest: " + std::to_string(failures) + " check(s) failed\n");
  return failures;
}

}  // namespace permlike
