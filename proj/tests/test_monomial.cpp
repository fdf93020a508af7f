#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "permlike/monomial.hpp"
#include "permlike/oracle.hpp"
#include "permlike/residue.hpp"
#include "permlike/util.hpp"

using namespace permlike;

namespace {

MonomialMatrix random_monomial(SplitMix64& rng, int n, int level) {
  std::uint32_t dim = pow2(n);
  std::vector<std::uint32_t> perm(dim);
  for (std::uint32_t i = 0; i < dim; ++i) perm[i] = i;
  for (std::uint32_t i = dim; i > 1; --i)
    std::swap(perm[i - 1], perm[rng.below(i)]);
  MonomialMatrix m;
  m.n = n;
  m.level = level;
  m.perm = perm;
  m.coeffs.resize(dim);
  for (auto& c : m.coeffs)
    c = static_cast<std::uint32_t>(rng.next()) & ((std::uint32_t{1} << level) - 1);
  return m;
}

}  // namespace

TEST_CASE("monomial: identity and maximal cycle basics") {
  for (int n = 0; n <= 4; ++n) {
    MonomialMatrix id = mono_identity(n, std::max(n, 1));
    CHECK(is_identity(id));
    CHECK(is_permutation_matrix(id));
    MonomialMatrix c = maximal_cycle(n, std::max(n, 1));
    CHECK(mono_order(c) == pow2(n));
    CHECK(relation_of(c) == reduce(1, n));
    CHECK(as_cycle_power(c) == reduce(1, n));
    for (std::uint32_t j = 0; j < c.dim(); ++j) {
      CHECK(c.perm[j] == j);
      CHECK(c.coeffs[j] == (j << (std::max(n, 1) - n)));
    }
  }
}

TEST_CASE("monomial: cycle powers compose additively") {
  const int n = 4, level = 6;
  for (std::uint32_t a = 0; a < pow2(n); a += 3)
    for (std::uint32_t b = 0; b < pow2(n); b += 5) {
      MonomialMatrix lhs = compose(cycle_power(n, level, a), cycle_power(n, level, b));
      CHECK(lhs == cycle_power(n, level, reduce(std::uint64_t{a} + b, n)));
      CHECK(as_cycle_power(lhs) == reduce(std::uint64_t{a} + b, n));
    }
  CHECK(cycle_power(n, level, 0) == mono_identity(n, level));
  CHECK(cycle_power(n, level, 1) == maximal_cycle(n, level));
}

TEST_CASE("monomial: composition agrees with the dense expansion") {
  SplitMix64 rng{31u};
  for (int n = 0; n <= 3; ++n)
    for (int round = 0; round < 12; ++round) {
      int level = std::max(n, 1) + static_cast<int>(rng.below(2));
      MonomialMatrix a = random_monomial(rng, n, level);
      MonomialMatrix b = random_monomial(rng, n, level);
      CHECK(dense_expand(compose(a, b)) == dense_mul(dense_expand(a), dense_expand(b)));
    }
}

TEST_CASE("monomial: inverse, power, order") {
  SplitMix64 rng{32u};
  for (int n = 0; n <= 3; ++n)
    for (int round = 0; round < 10; ++round) {
      MonomialMatrix m = random_monomial(rng, n, std::max(n, 1) + 1);
      MonomialMatrix inv = mono_inverse(m);
      CHECK(is_identity(compose(m, inv)));
      CHECK(is_identity(compose(inv, m)));

      MonomialMatrix acc = mono_identity(m.n, m.level);
      for (std::uint64_t e = 0; e <= 6; ++e) {
        CHECK(mono_power(m, e) == acc);
        acc = compose(acc, m);
      }

      std::uint64_t ord = mono_order(m);
      CHECK(is_identity(mono_power(m, ord)));
      for (std::uint64_t d = 1; d < ord; ++d)
        if (ord % d == 0) CHECK(!is_identity(mono_power(m, d)));
    }
}

TEST_CASE("monomial: relation extraction") {
  const int n = 3, level = 4;
  std::vector<std::uint32_t> zeros(pow2(n), 0);
  for (std::uint32_t r = 1; r < pow2(n); r += 2) {
    MonomialMatrix m = mult_map_matrix(n, level, r, zeros);
    CHECK(relation_of(m) == r);
    for (std::uint32_t j = 0; j < m.dim(); ++j) CHECK(m.perm[j] == mul_mod(r, j, n));
  }
  MonomialMatrix odd = mult_map_matrix(n, level, 3, zeros);
  std::swap(odd.perm[1], odd.perm[2]);
  CHECK(!relation_of(odd).has_value());
  CHECK(!as_cycle_power(mult_map_matrix(n, level, 3, zeros)).has_value());
}

TEST_CASE("monomial: rescaling is a diagonal conjugation") {
  SplitMix64 rng{77u};
  for (int n = 1; n <= 3; ++n)
    for (int round = 0; round < 10; ++round) {
      int level = n + 1;
      MonomialMatrix m = random_monomial(rng, n, level);
      std::vector<std::uint32_t> t(m.dim());
      for (auto& x : t) x = static_cast<std::uint32_t>(rng.next()) & m.coeff_mask();

      MonomialMatrix w = rescaled(m, t);
      CHECK(w.perm == m.perm);

      std::vector<std::uint32_t> neg(t.size());
      for (std::size_t i = 0; i < t.size(); ++i)
        neg[i] = (~t[i] + 1u) & m.coeff_mask();
      CHECK(rescaled(w, neg) == m);

      // Conjugation is an algebra map: rescale of a product is the product of
      // rescales, and char factors are invariant.
      MonomialMatrix m2 = random_monomial(rng, n, level);
      CHECK(rescaled(compose(m, m2), t) == compose(rescaled(m, t), rescaled(m2, t)));
      CHECK(char_factors(w) == char_factors(m));
    }
}

TEST_CASE("monomial: restriction to invariant coordinates") {
  const int n = 4, level = 5;
  std::vector<std::uint32_t> coeffs(pow2(n));
  SplitMix64 rng{42u};
  for (auto& c : coeffs) c = static_cast<std::uint32_t>(rng.next()) & ((1u << level) - 1);
  for (std::uint32_t r : {1u, 5u, 7u, 9u, 15u}) {
    MonomialMatrix m = mult_map_matrix(n, level, r, coeffs);

    MonomialMatrix ev = restrict_even(m);
    CHECK(ev.dim() == pow2(n - 1));
    CHECK(ev.level == level);
    CHECK(relation_of(ev) == reduce(r, n - 1));
    for (std::uint32_t tt = 0; tt < ev.dim(); ++tt)
      CHECK(ev.coeffs[tt] == m.coeffs[2 * tt]);

    std::vector<std::uint32_t> units;
    for (std::uint32_t j = 1; j < pow2(n); j += 2) units.push_back(j);
    MonomialMatrix us = restrict_to(m, units, n - 1);
    CHECK(us.dim() == units.size());
    for (std::size_t i = 0; i < units.size(); ++i) {
      CHECK(us.coeffs[i] == m.coeffs[units[i]]);
      std::uint32_t image = m.perm[units[i]];
      std::size_t pos = std::lower_bound(units.begin(), units.end(), image) - units.begin();
      CHECK(us.perm[i] == pos);
    }
  }
  MonomialMatrix c = maximal_cycle(n, level);
  std::vector<std::uint32_t> not_closed = {0, 1};
  CHECK_THROWS_AS(restrict_to(compose(c, mult_map_matrix(n, level, 3,
                                                         std::vector<std::uint32_t>(16, 0))),
                              not_closed, 1),
                  Error);
}

TEST_CASE("monomial: char factors walk the permutation cycles") {
  const int n = 3, level = 3;
  std::vector<std::uint32_t> coeffs = {0, 1, 2, 3, 4, 5, 6, 7};
  MonomialMatrix m = mult_map_matrix(n, level, 3, coeffs);
  // mult-by-3 cycles on Z_8: {0}, {4}, {1,3}, {2,6}, {5,7}
  CharPolyFactors f = char_factors(m);
  CHECK(f.degree() == 8);
  std::uint64_t n_block1 = 0, n_block2 = 0;
  for (const CharFactor& fac : f.factors) {
    if (fac.block == 1) ++n_block1;
    if (fac.block == 2) ++n_block2;
  }
  CHECK(n_block1 == 2);
  CHECK(n_block2 == 3);
  // Cycle {1,3} collects both coefficient exponents: corner lambda^(1+3).
  bool found = false;
  for (const CharFactor& fac : f.factors)
    if (fac.block == 2 && fac.corner == RootOfUnity::make(level, 4)) found = true;
  CHECK(found);
  CHECK(f.to_string().size() > 0);
}

TEST_CASE("monomial: eigenvalue multiset counts every factor root") {
  // The multiset is defined for 2-power block sizes only, so sample from
  // multiplication maps (whose orbits are always 2-power cycles) rather than
  // arbitrary permutations.
  SplitMix64 rng{4242u};
  const int n = 3, level = 4;
  for (int round = 0; round < 30; ++round) {
    std::uint32_t r = 1 + 2 * static_cast<std::uint32_t>(rng.below(pow2(n - 1)));
    std::vector<std::uint32_t> coeffs(pow2(n));
    for (auto& c : coeffs) c = static_cast<std::uint32_t>(rng.below(pow2(level)));
    MonomialMatrix m =
        compose(mult_map_matrix(n, level, r, coeffs),
                cycle_power(n, level, static_cast<std::uint32_t>(rng.below(pow2(n)))));
    CharPolyFactors f = char_factors(m);
    EigenMultiset e = eigen_multiset(f);
    CHECK(e.total() == f.degree());
    // Every eigenvalue, raised to the matrix order, is 1.
    std::uint64_t ord = mono_order(m);
    for (const auto& [exp, count] : e.mult) {
      CHECK(count >= 1);
      CHECK(root_pow(RootOfUnity::make(e.level, exp), static_cast<std::int64_t>(ord)).is_one());
    }
  }
}

TEST_CASE("monomial: permutation similarity accepts real permutation matrices") {
  SplitMix64 rng{808u};
  for (int n = 1; n <= 4; ++n)
    for (int round = 0; round < 25; ++round) {
      MonomialMatrix p = random_monomial(rng, n, n);
      for (auto& c : p.coeffs) c = 0;
      std::vector<std::uint64_t> expect_counts;
      std::vector<bool> seen(p.dim(), false);
      for (std::uint32_t s = 0; s < p.dim(); ++s) {
        if (seen[s]) continue;
        std::uint64_t len = 0;
        std::uint32_t j = s;
        while (!seen[j]) {
          seen[j] = true;
          j = p.perm[j];
          ++len;
        }
        // Random permutations here have 2-power cycle lengths only when the
        // sample happens that way; skip the sample otherwise.
        if (len & (len - 1)) {
          expect_counts.clear();
          break;
        }
        std::size_t d = static_cast<std::size_t>(v2(len));
        if (expect_counts.size() <= d) expect_counts.resize(d + 1, 0);
        ++expect_counts[d];
      }
      if (expect_counts.empty()) continue;
      PermVerdict v = perm_similarity(char_factors(p));
      CHECK(v.permutation_type);
      CHECK(v.cycle_counts == expect_counts);
    }
}

TEST_CASE("monomial: permutation similarity rejects skewed multisets") {
  // x^2 + 1 alone: the primitive 4th roots appear without the 1, -1 they would
  // ride with in any permutation spectrum.
  CharPolyFactors f;
  f.factors.push_back({2, RootOfUnity::minus_one()});
  PermVerdict v = perm_similarity(f);
  CHECK(!v.permutation_type);
  CHECK(v.reason.size() > 0);

  // (x-1)(x+1) = x^2 - 1 is the 2-cycle.
  CharPolyFactors g;
  g.factors.push_back({1, RootOfUnity::one()});
  g.factors.push_back({1, RootOfUnity::minus_one()});
  PermVerdict w = perm_similarity(g);
  CHECK(w.permutation_type);
  CHECK(w.cycle_counts == std::vector<std::uint64_t>{0, 1});
  CHECK(cycle_type_string(w.cycle_counts).size() > 0);

  // (x^4-1)(x^2+1): the primitive 4th roots outnumber -1, so the multiplicity
  // chain fails the monotone step even though every level is balanced.
  CharPolyFactors h;
  h.factors.push_back({4, RootOfUnity::one()});
  h.factors.push_back({2, RootOfUnity::minus_one()});
  PermVerdict x = perm_similarity(h);
  CHECK(!x.permutation_type);
}

TEST_CASE("monomial: expand_factors multiplies the binomials") {
  CharPolyFactors f;
  f.factors.push_back({1, RootOfUnity::one()});
  f.factors.push_back({2, RootOfUnity::minus_one()});
  CycloPoly p = expand_factors(f, 2);
  // (x - 1)(x^2 + 1) = x^3 - x^2 + x - 1
  CycloPoly expect = CycloPoly::binomial_factor(1, RootOfUnity::one(), 2);
  expect.mul_binomial_factor(2, RootOfUnity::minus_one());
  CHECK(p == expect);
  CHECK(p.degree() == 3);
}
