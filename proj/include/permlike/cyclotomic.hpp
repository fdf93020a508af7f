#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "permlike/util.hpp"

namespace permlike {

// A root of unity of 2-power order: lambda^exp where lambda = exp(2*pi*i / 2^level).
// Comparison and ordering go through normalized(), which strips common factors
// of two, so the same value at different levels compares equal.
struct RootOfUnity {
  int level = 0;           // in [0, 30]
  std::uint32_t exp = 0;   // reduced mod 2^level

  static RootOfUnity one() { return {0, 0}; }
  static RootOfUnity minus_one() { return {1, 1}; }
  static RootOfUnity make(int level, std::uint64_t exp);

  RootOfUnity normalized() const;
  std::uint64_t order() const;
  bool is_one() const { return normalized().exp == 0; }
  bool is_minus_one() const;
  std::string to_string() const;  // "1", "-1", "i", "-i", "zeta8^3", ...

  friend bool operator==(const RootOfUnity& a, const RootOfUnity& b) {
    RootOfUnity x = a.normalized(), y = b.normalized();
    return x.level == y.level && x.exp == y.exp;
  }
  friend bool operator<(const RootOfUnity& a, const RootOfUnity& b) {
    RootOfUnity x = a.normalized(), y = b.normalized();
    return x.level != y.level ? x.level < y.level : x.exp < y.exp;
  }
};

RootOfUnity root_mul(RootOfUnity a, RootOfUnity b);
RootOfUnity root_pow(RootOfUnity a, std::int64_t e);
RootOfUnity root_inv(RootOfUnity a);
RootOfUnity root_lift(RootOfUnity a, int level);  // throws if level < a.normalized().level

// An element of Q(lambda) for lambda a primitive 2^level-th root of unity,
// stored on the power basis 1, lambda, ..., lambda^(2^(level-1) - 1) with exact
// rational coordinates. lambda^(2^(level-1)) = -1 folds products back.
class CycloNum {
 public:
  CycloNum() : CycloNum(1) {}
  explicit CycloNum(int level);
  static CycloNum zero(int level) { return CycloNum(level); }
  static CycloNum one(int level);
  static CycloNum from_rational(const mpq_class& q, int level);
  static CycloNum from_root(RootOfUnity r, int level);

  int level() const { return level_; }
  std::size_t length() const { return c_.size(); }
  const mpq_class& coeff(std::size_t i) const { return c_[i]; }
  mpq_class& coeff(std::size_t i) { return c_[i]; }
  bool is_zero() const;
  bool is_rational() const;   // only the constant coordinate may be nonzero
  mpq_class rational_part() const { return c_[0]; }
  std::size_t term_count() const;

  CycloNum lifted(int level) const;

  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
  friend bool operator==(const CycloNum& a, const CycloNum& b) = default;

  CycloNum scaled(const mpq_class& q) const;
  CycloNum mul_root(RootOfUnity r) const;  // signed cyclic shift, O(length)
  CycloNum conjugate(std::uint32_t k) const;  // lambda -> lambda^k, k odd
  CycloNum inverse() const;                   // throws Error on zero

  std::string to_string() const;

 private:
  int level_;
  std::vector<mpq_class> c_;
};

// Dense polynomial over Q(lambda). Coefficient index = degree.
class CycloPoly {
 public:
  explicit CycloPoly(int level = 1) : level_(level) {}
  static CycloPoly constant(CycloNum c);
  static CycloPoly binomial_factor(std::uint64_t m, RootOfUnity corner, int level);  // x^m - corner
  static CycloPoly from_coeffs(std::vector<CycloNum> coeffs, int level);

  int level() const { return level_; }
  std::int64_t degree() const;  // -1 for the zero polynomial
  const CycloNum& coeff(std::size_t i) const;
  bool is_zero() const { return degree() < 0; }

  CycloPoly& operator+=(const CycloPoly& o);
  friend CycloPoly operator+(CycloPoly a, const CycloPoly& b) { return a += b; }
  friend CycloPoly operator*(const CycloPoly& a, const CycloPoly& b);
  friend bool operator==(const CycloPoly& a, const CycloPoly& b);

  // In-place multiply by x^m - corner; the workhorse for expanding factor lists.
  void mul_binomial_factor(std::uint64_t m, RootOfUnity corner);

  std::string to_string() const;

 private:
  void trim();
  int level_;
  std::vector<CycloNum> c_;
};

// The 2^k-th cyclotomic polynomial: x - 1 for k = 0, x^(2^(k-1)) + 1 for k >= 1.
CycloPoly cyclotomic_poly_2power(int k, int level);

// Checks the splitting identity: the product of (x^(2^a) - w) over all
// primitive 2^k-th roots w equals the 2^(a+k)-th cyclotomic polynomial (k >= 1).
// Always compared on root multisets; additionally by literal polynomial
// expansion when the degree is small enough to afford it.
bool primitive_product_identity(int a, int k);

}  // namespace permlike
