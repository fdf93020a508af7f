#include <gmpxx.h>

#include <vector>

#include "doctest.h"
#include "permlike/cyclotomic.hpp"
#include "permlike/residue.hpp"
#include "permlike/util.hpp"

using namespace permlike;

TEST_CASE("roots: normalization and special values") {
  CHECK(RootOfUnity::one().is_one());
  CHECK(RootOfUnity::minus_one().is_minus_one());
  CHECK(RootOfUnity::make(5, 0) == RootOfUnity::one());
  CHECK(RootOfUnity::make(5, 16) == RootOfUnity::minus_one());
  CHECK(RootOfUnity::make(3, 2) == RootOfUnity::make(2, 1));
  CHECK(RootOfUnity::make(3, 2).normalized().level == 2);
  CHECK(RootOfUnity::make(4, 3).order() == 16);
  CHECK(RootOfUnity::make(4, 4).order() == 4);
  CHECK(RootOfUnity::one().order() == 1);
}

TEST_CASE("roots: group laws") {
  SplitMix64 rng{7u};
  for (int round = 0; round < 200; ++round) {
    int la = static_cast<int>(rng.below(7));
    int lb = static_cast<int>(rng.below(7));
    RootOfUnity a = RootOfUnity::make(la, rng.below(std::uint64_t{1} << la));
    RootOfUnity b = RootOfUnity::make(lb, rng.below(std::uint64_t{1} << lb));
    CHECK(root_mul(a, b) == root_mul(b, a));
    CHECK(root_mul(a, root_inv(a)).is_one());
    CHECK(root_pow(a, 3) == root_mul(a, root_mul(a, a)));
    CHECK(root_pow(a, -1) == root_inv(a));
    CHECK(root_pow(a, static_cast<std::int64_t>(a.order())).is_one());
    RootOfUnity lifted = root_lift(a, 8);
    CHECK(lifted.level == 8);
    CHECK(lifted == a);
  }
  CHECK_THROWS_AS(root_lift(RootOfUnity::make(4, 1), 2), Error);
}

TEST_CASE("cyclo numbers: ring identities on random values") {
  SplitMix64 rng{99u};
  const int level = 4;
  auto random_num = [&] {
    CycloNum x = CycloNum::zero(level);
    for (int t = 0; t < 3; ++t) {
      std::size_t i = rng.below(x.length());
      mpq_class q(static_cast<long>(rng.below(9)) - 4, static_cast<long>(rng.below(3)) + 1);
      q.canonicalize();
      x.coeff(i) = q;
    }
    return x;
  };
  for (int round = 0; round < 60; ++round) {
    CycloNum a = random_num(), b = random_num(), c = random_num();
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == CycloNum::zero(level));
    CHECK(a * CycloNum::one(level) == a);
    if (!a.is_zero()) {
      CHECK(a * a.inverse() == CycloNum::one(level));
    }
  }
  CHECK_THROWS_AS(CycloNum::zero(level).inverse(), Error);
}

TEST_CASE("cyclo numbers: the generator really has 2-power order") {
  for (int level = 1; level <= 6; ++level) {
    CycloNum lambda = CycloNum::from_root(RootOfUnity::make(level, 1), level);
    CycloNum p = CycloNum::one(level);
    std::uint64_t half = std::uint64_t{1} << (level - 1);
    for (std::uint64_t i = 0; i < half; ++i) p = p * lambda;
    CHECK(p == -CycloNum::one(level));
    CHECK(p * p == CycloNum::one(level));
  }
}

TEST_CASE("cyclo numbers: root embedding is multiplicative") {
  SplitMix64 rng{1234u};
  const int level = 5;
  for (int round = 0; round < 100; ++round) {
    RootOfUnity a = RootOfUnity::make(level, rng.below(32));
    RootOfUnity b = RootOfUnity::make(level, rng.below(32));
    CHECK(CycloNum::from_root(a, level) * CycloNum::from_root(b, level) ==
          CycloNum::from_root(root_mul(a, b), level));
    CycloNum x = CycloNum::from_root(a, level);
    CHECK(x.mul_root(b) == x * CycloNum::from_root(b, level));
  }
}

TEST_CASE("cyclo numbers: conjugation is a ring map permuting the roots") {
  SplitMix64 rng{555u};
  const int level = 4;
  for (std::uint32_t k = 1; k < 16; k += 2) {
    for (int round = 0; round < 20; ++round) {
      RootOfUnity r = RootOfUnity::make(level, rng.below(16));
      RootOfUnity rk = root_pow(r, static_cast<std::int64_t>(k));
      CHECK(CycloNum::from_root(r, level).conjugate(k) == CycloNum::from_root(rk, level));
      CycloNum a = CycloNum::from_root(r, level) + CycloNum::from_rational(mpq_class(3, 2), level);
      CycloNum b = CycloNum::from_root(root_inv(r), level);
      CHECK((a * b).conjugate(k) == a.conjugate(k) * b.conjugate(k));
      CHECK((a + b).conjugate(k) == a.conjugate(k) + b.conjugate(k));
    }
  }
}

TEST_CASE("cyclo numbers: lifting preserves value") {
  CycloNum x = CycloNum::from_root(RootOfUnity::make(2, 1), 2) +
               CycloNum::from_rational(mpq_class(1, 3), 2);
  CycloNum y = x.lifted(5);
  CHECK(y.level() == 5);
  CHECK(y.lifted(5) == y);
  CHECK(y * y.inverse() == CycloNum::one(5));
  CHECK(y == x.lifted(5));
  CHECK_THROWS_AS(y.lifted(2), Error);
  CHECK(x.is_rational() == false);
  CHECK(CycloNum::from_rational(mpq_class(7), 3).is_rational());
}

TEST_CASE("cyclo polys: construction, expansion, arithmetic") {
  const int level = 3;
  CycloPoly x2m1 = CycloPoly::binomial_factor(2, RootOfUnity::one(), level);
  CHECK(x2m1.degree() == 2);
  CHECK(x2m1.coeff(0) == -CycloNum::one(level));
  CHECK(x2m1.coeff(1) == CycloNum::zero(level));
  CHECK(x2m1.coeff(2) == CycloNum::one(level));

  CycloPoly prod = x2m1 * x2m1;
  CycloPoly via_inplace = x2m1;
  via_inplace.mul_binomial_factor(2, RootOfUnity::one());
  CHECK(prod == via_inplace);
  CHECK(prod.degree() == 4);

  std::vector<CycloNum> coeffs = {CycloNum::one(level), CycloNum::zero(level),
                                  -(CycloNum::one(level) + CycloNum::one(level)),
                                  CycloNum::zero(level), CycloNum::one(level)};
  CHECK(prod == CycloPoly::from_coeffs(coeffs, level));

  CycloPoly zero(level);
  CHECK(zero.is_zero());
  CHECK(zero.degree() == -1);
  CHECK((zero + prod) == prod);
}

TEST_CASE("cyclo polys: 2-power cyclotomics") {
  CHECK(cyclotomic_poly_2power(0, 2) ==
        CycloPoly::binomial_factor(1, RootOfUnity::one(), 2));
  for (int k = 1; k <= 8; ++k) {
    CycloPoly phi = cyclotomic_poly_2power(k, 2);
    std::vector<CycloNum> coeffs((std::size_t{1} << (k - 1)) + 1, CycloNum::zero(2));
    coeffs.front() = CycloNum::one(2);
    coeffs.back() = CycloNum::one(2);
    CHECK(phi == CycloPoly::from_coeffs(coeffs, 2));
  }
}

TEST_CASE("cyclo polys: splitting identity small cases") {
  for (int a = 0; a <= 4; ++a)
    for (int k = 1; k <= 4; ++k) CHECK(primitive_product_identity(a, k));
  CHECK_THROWS_AS(primitive_product_identity(0, 0), Error);
  CHECK_THROWS_AS(primitive_product_identity(-1, 1), Error);
}
