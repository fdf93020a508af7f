#include "permlike/cyclotomic.hpp"

#include <algorithm>
#include <map>

#include "permlike/residue.hpp"

namespace permlike {

RootOfUnity RootOfUnity::make(int level, std::uint64_t exp) {
  if (level < 0 || level > 30) throw Error("root level out of range");
  RootOfUnity r;
  r.level = level;
  r.exp = static_cast<std::uint32_t>(exp & ((std::uint64_t{1} << level) - 1));
  return r;
}

RootOfUnity RootOfUnity::normalized() const {
  RootOfUnity r = *this;
  while (r.level > 0 && (r.exp & 1u) == 0) {
    r.exp >>= 1;
    if (r.exp == 0) {
      r.level = 0;
      return r;
    }
    r.level -= 1;
  }
  if (r.level == 0) r.exp = 0;
  return r;
}

std::uint64_t RootOfUnity::order() const {
  RootOfUnity r = normalized();
  return std::uint64_t{1} << r.level;
}

bool RootOfUnity::is_minus_one() const {
  RootOfUnity r = normalized();
  return r.level == 1 && r.exp == 1;
}

std::string RootOfUnity::to_string() const {
  RootOfUnity r = normalized();
  if (r.level == 0) return "1";
  if (r.level == 1) return "-1";
  if (r.level == 2) return r.exp == 1 ? "i" : "-i";
  return "zeta" + std::to_string(std::uint64_t{1} << r.level) + "^" + std::to_string(r.exp);
}

RootOfUnity root_mul(RootOfUnity a, RootOfUnity b) {
  int level = std::max(a.level, b.level);
  std::uint64_t ea = static_cast<std::uint64_t>(a.exp) << (level - a.level);
  std::uint64_t eb = static_cast<std::uint64_t>(b.exp) << (level - b.level);
  return RootOfUnity::make(level, ea + eb).normalized();
}

RootOfUnity root_pow(RootOfUnity a, std::int64_t e) {
  std::uint64_t mod = std::uint64_t{1} << a.level;
  std::uint64_t ee = static_cast<std::uint64_t>(e % static_cast<std::int64_t>(mod) +
                                                static_cast<std::int64_t>(mod));
  return RootOfUnity::make(a.level, a.exp * (ee % mod)).normalized();
}

RootOfUnity root_inv(RootOfUnity a) {
  std::uint64_t mod = std::uint64_t{1} << a.level;
  return RootOfUnity::make(a.level, mod - a.exp).normalized();
}

RootOfUnity root_lift(RootOfUnity a, int level) {
  RootOfUnity r = a.normalized();
  if (level < r.level) throw Error("cannot lift root below its intrinsic level");
  return RootOfUnity::make(level, static_cast<std::uint64_t>(r.exp) << (level - r.level));
}

CycloNum::CycloNum(int level) : level_(level) {
  if (level < 1 || level > 24) throw Error("cyclotomic level out of range [1, 24]");
  c_.assign(std::size_t{1} << (level - 1), mpq_class(0));
}

CycloNum CycloNum::one(int level) {
  CycloNum x(level);
  x.c_[0] = 1;
  return x;
}

CycloNum CycloNum::from_rational(const mpq_class& q, int level) {
  CycloNum x(level);
  x.c_[0] = q;
  return x;
}

CycloNum CycloNum::from_root(RootOfUnity r, int level) {
  RootOfUnity n = r.normalized();
  if (n.level > level) throw Error("root level exceeds field level");
  CycloNum x(level);
  std::uint64_t e = static_cast<std::uint64_t>(n.exp) << (level - n.level);
  std::size_t half = x.c_.size();
  if (e >= half) {
    x.c_[e - half] = -1;
  } else {
    x.c_[e] = 1;
  }
  return x;
}

bool CycloNum::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

bool CycloNum::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

std::size_t CycloNum::term_count() const {
  std::size_t k = 0;
  for (const auto& q : c_)
    if (q != 0) ++k;
  return k;
}

CycloNum CycloNum::lifted(int level) const {
  if (level == level_) return *this;
  if (level < level_) throw Error("cannot lower cyclotomic level");
  CycloNum x(level);
  std::size_t stride = std::size_t{1} << (level - level_);
  for (std::size_t i = 0; i < c_.size(); ++i) x.c_[i * stride] = c_[i];
  return x;
}

CycloNum CycloNum::operator-() const {
  CycloNum x = *this;
  for (auto& q : x.c_) q = -q;
  return x;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  if (o.level_ != level_) throw Error("cyclotomic level mismatch in addition");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) {
  if (o.level_ != level_) throw Error("cyclotomic level mismatch in subtraction");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
  if (a.level_ != b.level_) throw Error("cyclotomic level mismatch in product");
  const std::size_t m = a.c_.size();
  CycloNum out(a.level_);
  // Negacyclic convolution; iterate only the nonzero terms of the sparser side.
  const CycloNum* sparse = &a;
  const CycloNum* dense = &b;
  if (a.term_count() > b.term_count()) std::swap(sparse, dense);
  for (std::size_t i = 0; i < m; ++i) {
    const mpq_class& si = sparse->c_[i];
    if (si == 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      const mpq_class& dj = dense->c_[j];
      if (dj == 0) continue;
      std::size_t k = i + j;
      if (k < m) {
        out.c_[k] += si * dj;
      } else {
        out.c_[k - m] -= si * dj;
      }
    }
  }
  return out;
}

CycloNum CycloNum::scaled(const mpq_class& q) const {
  CycloNum x = *this;
  for (auto& v : x.c_) v *= q;
  return x;
}

CycloNum CycloNum::mul_root(RootOfUnity r) const {
  RootOfUnity n = r.normalized();
  if (n.level > level_) throw Error("root level exceeds field level");
  std::uint64_t e = static_cast<std::uint64_t>(n.exp) << (level_ - n.level);
  const std::size_t m = c_.size();
  CycloNum out(level_);
  bool negate = e >= m;
  std::size_t shift = negate ? static_cast<std::size_t>(e) - m : static_cast<std::size_t>(e);
  for (std::size_t i = 0; i < m; ++i) {
    if (c_[i] == 0) continue;
    std::size_t k = i + shift;
    bool neg = negate;
    if (k >= m) {
      k -= m;
      neg = !neg;
    }
    out.c_[k] = neg ? mpq_class(-c_[i]) : c_[i];
  }
  return out;
}

CycloNum CycloNum::conjugate(std::uint32_t k) const {
  if ((k & 1u) == 0) throw Error("cyclotomic conjugation index must be odd");
  const std::size_t m = c_.size();
  const std::uint64_t full = 2 * m;
  CycloNum out(level_);
  for (std::size_t i = 0; i < m; ++i) {
    if (c_[i] == 0) continue;
    std::uint64_t e = (static_cast<std::uint64_t>(i) * k) % full;
    if (e >= m) {
      out.c_[e - m] -= c_[i];
    } else {
      out.c_[e] += c_[i];
    }
  }
  return out;
}

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw Error("division by zero in cyclotomic field");
  if (is_rational()) return from_rational(mpq_class(1) / c_[0], level_);
  // Multiply all other Galois conjugates; the full product is the rational norm.
  const std::size_t m = c_.size();
  CycloNum prod = CycloNum::one(level_);
  for (std::uint32_t k = 3; k < 2 * m; k += 2) prod = prod * conjugate(k);
  CycloNum norm = *this * prod;
  if (!norm.is_rational() || norm.c_[0] == 0)
    throw ContradictionError("norm of nonzero cyclotomic element must be a nonzero rational");
  return prod.scaled(mpq_class(1) / norm.c_[0]);
}

std::string CycloNum::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    std::string term = c_[i].get_str();
    if (i > 0) {
      term += "*L^" + std::to_string(i);
    }
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out;
}

CycloPoly CycloPoly::constant(CycloNum c) {
  CycloPoly p(c.level());
  p.c_.push_back(std::move(c));
  p.trim();
  return p;
}

CycloPoly CycloPoly::binomial_factor(std::uint64_t m, RootOfUnity corner, int level) {
  if (m == 0) throw Error("binomial factor needs positive degree");
  CycloPoly p(level);
  p.c_.assign(m + 1, CycloNum::zero(level));
  p.c_[m] = CycloNum::one(level);
  p.c_[0] = -CycloNum::from_root(corner, level);
  return p;
}

CycloPoly CycloPoly::from_coeffs(std::vector<CycloNum> coeffs, int level) {
  CycloPoly p(level);
  for (const auto& c : coeffs)
    if (c.level() != level) throw Error("polynomial coefficient level mismatch");
  p.c_ = std::move(coeffs);
  p.trim();
  return p;
}

std::int64_t CycloPoly::degree() const {
  for (std::size_t i = c_.size(); i-- > 0;)
    if (!c_[i].is_zero()) return static_cast<std::int64_t>(i);
  return -1;
}

const CycloNum& CycloPoly::coeff(std::size_t i) const {
  if (i < c_.size()) return c_[i];
  // Out-of-range coefficients are zero; hand back a zero at our level.
  thread_local std::map<int, CycloNum> zeros;
  auto it = zeros.find(level_);
  if (it == zeros.end()) it = zeros.emplace(level_, CycloNum::zero(level_)).first;
  return it->second;
}

CycloPoly& CycloPoly::operator+=(const CycloPoly& o) {
  if (o.level_ != level_) throw Error("cyclotomic level mismatch in polynomial sum");
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), CycloNum::zero(level_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

CycloPoly operator*(const CycloPoly& a, const CycloPoly& b) {
  if (a.level_ != b.level_) throw Error("cyclotomic level mismatch in polynomial product");
  CycloPoly out(a.level_);
  if (a.is_zero() || b.is_zero()) return out;
  out.c_.assign(a.c_.size() + b.c_.size() - 1, CycloNum::zero(a.level_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      out.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  out.trim();
  return out;
}

bool operator==(const CycloPoly& a, const CycloPoly& b) {
  if (a.level_ != b.level_) return false;
  std::int64_t da = a.degree(), db = b.degree();
  if (da != db) return false;
  for (std::int64_t i = 0; i <= da; ++i)
    if (!(a.c_[static_cast<std::size_t>(i)] == b.c_[static_cast<std::size_t>(i)])) return false;
  return true;
}

void CycloPoly::mul_binomial_factor(std::uint64_t m, RootOfUnity corner) {
  if (is_zero()) return;
  std::vector<CycloNum> out(c_.size() + m, CycloNum::zero(level_));
  RootOfUnity neg = root_mul(corner, RootOfUnity::minus_one());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    out[i + m] += c_[i];
    out[i] += c_[i].mul_root(neg);
  }
  c_ = std::move(out);
  trim();
}

std::string CycloPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c_[i].to_string() + ")";
    if (i > 0) out += "*x^" + std::to_string(i);
  }
  return out;
}

void CycloPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

CycloPoly cyclotomic_poly_2power(int k, int level) {
  if (k < 0) throw Error("cyclotomic index must be nonnegative");
  if (k == 0) return CycloPoly::binomial_factor(1, RootOfUnity::one(), level);
  CycloPoly p = CycloPoly::binomial_factor(std::uint64_t{1} << (k - 1),
                                           RootOfUnity::minus_one(), level);
  return p;
}

bool primitive_product_identity(int a, int k) {
  if (a < 0 || k < 1) throw Error("identity domain is a >= 0, k >= 1");
  if (a + k > 26) throw Error("identity degree too large");

  // Root-multiset route: left side contributes, for each primitive 2^k-th root
  // w = zeta_{2^k}^e, the 2^a solutions of z^(2^a) = w, i.e. exponents
  // (e + m*2^k) at level a+k. The union must be exactly the odd exponents at
  // level a+k, each once.
  const int L = a + k;
  std::vector<std::uint32_t> count(std::size_t{1} << L, 0);
  for (std::uint64_t e = 1; e < (std::uint64_t{1} << k); e += 2)
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << a); ++m)
      count[static_cast<std::size_t>(e + (m << k))] += 1;
  for (std::uint64_t u = 0; u < (std::uint64_t{1} << L); ++u) {
    std::uint32_t expect = (u & 1u) ? 1u : 0u;
    if (count[static_cast<std::size_t>(u)] != expect) return false;
  }

  // Literal expansion when affordable: about 2^(a + 3(k-1)) coefficient ops.
  if (a + 3 * (k - 1) <= 24 && L <= 20) {
    int level = std::max(k, 1);
    CycloPoly prod = CycloPoly::constant(CycloNum::one(level));
    for (std::uint64_t e = 1; e < (std::uint64_t{1} << k); e += 2)
      prod.mul_binomial_factor(std::uint64_t{1} << a, RootOfUnity::make(k, e));
    CycloPoly target = cyclotomic_poly_2power(L, level);
    if (!(prod == target)) return false;
  }
  return true;
}

}  // namespace permlike
