#include "permlike/monomial.hpp"

#include <algorithm>
#include <numeric>

#include "permlike/kernels.hpp"
#include "permlike/residue.hpp"

namespace permlike {

namespace {

void check_shape(int n, int level) {
  if (n < 0 || n > 16) throw Error("dimension exponent out of range [0, 16]");
  if (level < std::max(n, 1) || level > 24)
    throw Error("coefficient level must lie in [max(n,1), 24]");
}

void check_matrix(const MonomialMatrix& m) {
  check_shape(m.n, m.level);
  const std::size_t d = std::size_t{1} << m.n;
  if (m.perm.size() != d || m.coeffs.size() != d)
    throw Error("monomial matrix arrays must have length 2^n");
}

}  // namespace

MonomialMatrix mono_identity(int n, int level) {
  check_shape(n, level);
  MonomialMatrix m;
  m.n = n;
  m.level = level;
  m.perm.resize(std::size_t{1} << n);
  std::iota(m.perm.begin(), m.perm.end(), 0u);
  m.coeffs.assign(std::size_t{1} << n, 0u);
  return m;
}

MonomialMatrix maximal_cycle(int n, int level) { return cycle_power(n, level, 1); }

MonomialMatrix cycle_power(int n, int level, std::uint32_t k) {
  MonomialMatrix m = mono_identity(n, level);
  const std::uint32_t step =
      reduce(static_cast<std::uint64_t>(k) << (level - n), level);
  kernels::active().add_ramp_mod(m.coeffs.data(), m.coeffs.data(), m.coeffs.size(), step,
                                 m.coeff_mask());
  return m;
}

MonomialMatrix mult_map_matrix(int n, int level, std::uint32_t r,
                               std::span<const std::uint32_t> coeff_exps) {
  check_shape(n, level);
  if ((r & 1u) == 0) throw Error("multiplication map needs an odd multiplier");
  MonomialMatrix m;
  m.n = n;
  m.level = level;
  const std::size_t d = std::size_t{1} << n;
  if (coeff_exps.size() != d) throw Error("coefficient array must have length 2^n");
  m.perm.resize(d);
  for (std::size_t j = 0; j < d; ++j) m.perm[j] = reduce(static_cast<std::uint64_t>(r) * j, n);
  m.coeffs.assign(coeff_exps.begin(), coeff_exps.end());
  for (auto& c : m.coeffs) c &= m.coeff_mask();
  return m;
}

MonomialMatrix compose(const MonomialMatrix& m, const MonomialMatrix& n) {
  check_matrix(m);
  check_matrix(n);
  if (m.n != n.n || m.level != n.level)
    throw Error("monomial composition needs matching shape and level");
  MonomialMatrix out;
  out.n = m.n;
  out.level = m.level;
  const std::size_t d = m.dim();
  out.perm.resize(d);
  out.coeffs.resize(d);
  // (m*n) e_j = m (lambda^{cn[j]} e_{pn[j]}) = lambda^{cn[j] + cm[pn[j]]} e_{pm[pn[j]]}
  kernels::active().gather(m.perm.data(), n.perm.data(), out.perm.data(), d);
  kernels::active().gather_add_mod(n.coeffs.data(), m.coeffs.data(), n.perm.data(),
                                   out.coeffs.data(), d, m.coeff_mask());
  return out;
}

MonomialMatrix mono_inverse(const MonomialMatrix& m) {
  check_matrix(m);
  MonomialMatrix out;
  out.n = m.n;
  out.level = m.level;
  const std::size_t d = m.dim();
  out.perm.resize(d);
  out.coeffs.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    out.perm[m.perm[j]] = static_cast<std::uint32_t>(j);
    out.coeffs[m.perm[j]] = (0u - m.coeffs[j]) & m.coeff_mask();
  }
  return out;
}

MonomialMatrix mono_power(const MonomialMatrix& m, std::uint64_t e) {
  check_matrix(m);
  MonomialMatrix acc = mono_identity(m.n, m.level);
  MonomialMatrix base = m;
  while (e) {
    if (e & 1) acc = compose(acc, base);
    base = compose(base, base);
    e >>= 1;
  }
  return acc;
}

std::uint64_t mono_order(const MonomialMatrix& m) {
  check_matrix(m);
  // Permutation order first; the residual diagonal's order divides 2^level.
  const std::size_t d = m.dim();
  std::vector<bool> seen(d, false);
  std::uint64_t perm_order = 1;
  for (std::size_t j = 0; j < d; ++j) {
    if (seen[j]) continue;
    std::uint64_t len = 0;
    for (std::uint32_t x = static_cast<std::uint32_t>(j); !seen[x]; x = m.perm[x]) {
      seen[x] = true;
      ++len;
    }
    perm_order = std::lcm(perm_order, len);
  }
  MonomialMatrix diag = mono_power(m, perm_order);
  std::uint64_t diag_order = 1;
  for (std::uint32_t c : diag.coeffs) {
    if (c == 0) continue;
    std::uint64_t o = std::uint64_t{1} << (m.level - v2(c));
    diag_order = std::max(diag_order, o);
  }
  return perm_order * diag_order;
}

bool is_identity(const MonomialMatrix& m) {
  check_matrix(m);
  if (!kernels::active().all_zero(m.coeffs.data(), m.coeffs.size())) return false;
  for (std::size_t j = 0; j < m.dim(); ++j)
    if (m.perm[j] != j) return false;
  return true;
}

bool is_permutation_matrix(const MonomialMatrix& m) {
  check_matrix(m);
  return kernels::active().all_zero(m.coeffs.data(), m.coeffs.size());
}

std::optional<std::uint32_t> relation_of(const MonomialMatrix& m) {
  check_matrix(m);
  if (m.n == 0) return 0u;  // the trivial ring has the single residue 0
  std::uint32_t r = m.perm[1];
  if ((r & 1u) == 0) return std::nullopt;
  for (std::size_t j = 0; j < m.dim(); ++j)
    if (m.perm[j] != reduce(static_cast<std::uint64_t>(r) * j, m.n)) return std::nullopt;
  return r;
}

std::optional<std::uint32_t> as_cycle_power(const MonomialMatrix& m) {
  check_matrix(m);
  for (std::size_t j = 0; j < m.dim(); ++j)
    if (m.perm[j] != j) return std::nullopt;
  if (m.coeffs[0] != 0) return std::nullopt;
  if (m.n == 0) return 0u;
  const int shift = m.level - m.n;
  std::uint32_t g1 = m.coeffs[1];
  if (g1 & ((1u << shift) - 1u)) return std::nullopt;
  std::uint32_t k = g1 >> shift;
  MonomialMatrix expect = cycle_power(m.n, m.level, k);
  if (expect.coeffs != m.coeffs) return std::nullopt;
  return k;
}

MonomialMatrix rescaled(const MonomialMatrix& m, std::span<const std::uint32_t> t) {
  check_matrix(m);
  if (t.size() != m.dim()) throw Error("rescale array must have length 2^n");
  MonomialMatrix out = m;
  kernels::active().rescale_mod(m.coeffs.data(), t.data(), m.perm.data(), out.coeffs.data(),
                                m.dim(), m.coeff_mask());
  return out;
}

MonomialMatrix restrict_to(const MonomialMatrix& m, std::span<const std::uint32_t> indices,
                           int new_n) {
  check_matrix(m);
  if (indices.size() != (std::size_t{1} << new_n))
    throw Error("restriction index set must have length 2^new_n");
  std::vector<std::uint32_t> pos(m.dim(), UINT32_MAX);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= m.dim()) throw Error("restriction index out of range");
    pos[indices[i]] = static_cast<std::uint32_t>(i);
  }
  MonomialMatrix out;
  out.n = new_n;
  out.level = m.level;
  out.perm.resize(indices.size());
  out.coeffs.resize(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    std::uint32_t image = m.perm[indices[i]];
    if (pos[image] == UINT32_MAX)
      throw Error("restriction index set is not invariant under the permutation");
    out.perm[i] = pos[image];
    out.coeffs[i] = m.coeffs[indices[i]];
  }
  return out;
}

MonomialMatrix restrict_even(const MonomialMatrix& m) {
  if (m.n < 1) throw Error("even restriction needs n >= 1");
  std::vector<std::uint32_t> evens;
  evens.reserve(m.dim() / 2);
  for (std::uint32_t j = 0; j < m.dim(); j += 2) evens.push_back(j);
  return restrict_to(m, evens, m.n - 1);
}

CharPolyFactors char_factors(const MonomialMatrix& m) {
  check_matrix(m);
  CharPolyFactors out;
  std::vector<bool> seen(m.dim(), false);
  for (std::size_t j = 0; j < m.dim(); ++j) {
    if (seen[j]) continue;
    std::uint64_t len = 0;
    std::uint64_t corner = 0;
    for (std::uint32_t x = static_cast<std::uint32_t>(j); !seen[x]; x = m.perm[x]) {
      seen[x] = true;
      corner += m.coeffs[x];
      ++len;
    }
    CharFactor f;
    f.block = len;
    f.corner = RootOfUnity::make(m.level, corner).normalized();
    out.factors.push_back(f);
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const CharFactor& a, const CharFactor& b) {
    if (a.block != b.block) return a.block < b.block;
    return a.corner < b.corner;
  });
  return out;
}

std::uint64_t CharPolyFactors::degree() const {
  std::uint64_t d = 0;
  for (const auto& f : factors) d += f.block;
  return d;
}

std::string CharPolyFactors::to_string() const {
  if (factors.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < factors.size();) {
    std::size_t j = i;
    while (j < factors.size() && factors[j] == factors[i]) ++j;
    const CharFactor& f = factors[i];
    std::string base = "x^" + std::to_string(f.block);
    if (f.block == 1) base = "x";
    std::string corner;
    if (f.corner.is_one()) {
      corner = " - 1";
    } else if (f.corner.is_minus_one()) {
      corner = " + 1";
    } else {
      corner = " - " + f.corner.to_string();
    }
    std::string term = "(" + base + corner + ")";
    if (j - i > 1) term += "^" + std::to_string(j - i);
    if (!out.empty()) out += " ";
    out += term;
    i = j;
  }
  return out;
}

CycloPoly expand_factors(const CharPolyFactors& f, int level) {
  CycloPoly p = CycloPoly::constant(CycloNum::one(level));
  for (const auto& factor : f.factors) p.mul_binomial_factor(factor.block, factor.corner);
  return p;
}

EigenMultiset eigen_multiset(const CharPolyFactors& f) {
  int level = 1;
  for (const auto& factor : f.factors) {
    std::uint64_t b = factor.block;
    if (b == 0 || (b & (b - 1)) != 0)
      throw ScopeError("eigenvalue multiset needs 2-power block sizes");
    level = std::max(level, factor.corner.normalized().level + v2(b));
  }
  // block 2^b with corner at level l needs exponent divisibility 2^b below the
  // common level; level = max(l + b) suffices.
  EigenMultiset out;
  out.level = level;
  for (const auto& factor : f.factors) {
    int b = v2(factor.block);
    RootOfUnity corner = factor.corner.normalized();
    std::uint64_t ce = static_cast<std::uint64_t>(corner.exp) << (level - corner.level);
    std::uint64_t base = ce >> b;
    std::uint64_t stride = std::uint64_t{1} << (level - b);
    std::uint64_t mod = std::uint64_t{1} << level;
    for (std::uint64_t t = 0; t < factor.block; ++t) {
      std::uint32_t e = static_cast<std::uint32_t>((base + t * stride) % mod);
      out.mult[e] += 1;
    }
  }
  return out;
}

std::uint64_t EigenMultiset::total() const {
  std::uint64_t t = 0;
  for (const auto& [e, c] : mult) t += c;
  return t;
}

PermVerdict perm_similarity(const CharPolyFactors& f) {
  EigenMultiset eig = eigen_multiset(f);
  const int L = eig.level;
  PermVerdict v;
  // m(d): multiplicity shared by all primitive 2^d-th roots of unity. Group the
  // multiset entries by root order; an order with only some of its primitive
  // exponents present, or with unequal counts, breaks constancy.
  struct LevelStat {
    std::uint64_t present = 0;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
  };
  std::vector<LevelStat> stat(static_cast<std::size_t>(L) + 1);
  for (const auto& [e, c] : eig.mult) {
    int d = e == 0 ? 0 : L - v2(e);
    auto& s = stat[static_cast<std::size_t>(d)];
    if (s.present == 0) {
      s.lo = s.hi = c;
    } else {
      s.lo = std::min(s.lo, c);
      s.hi = std::max(s.hi, c);
    }
    s.present += 1;
  }
  std::vector<std::uint64_t> m(static_cast<std::size_t>(L) + 1, 0);
  for (int d = 0; d <= L; ++d) {
    const auto& s = stat[static_cast<std::size_t>(d)];
    if (s.present == 0) continue;
    std::uint64_t primitive_count = d == 0 ? 1 : std::uint64_t{1} << (d - 1);
    if (s.present != primitive_count || s.lo != s.hi) {
      v.permutation_type = false;
      v.reason = "eigenvalue multiplicity is not constant on the primitive roots of order " +
                 std::to_string(std::uint64_t{1} << d);
      v.fail_level = d;
      return v;
    }
    m[static_cast<std::size_t>(d)] = s.lo;
  }
  for (int d = 0; d < L; ++d) {
    if (m[static_cast<std::size_t>(d)] < m[static_cast<std::size_t>(d) + 1]) {
      v.permutation_type = false;
      v.reason = "eigenvalue multiplicity increases from root order " +
                 std::to_string(std::uint64_t{1} << d) + " to " +
                 std::to_string(std::uint64_t{1} << (d + 1));
      v.fail_level = d + 1;
      return v;
    }
  }
  v.permutation_type = true;
  v.cycle_counts.resize(static_cast<std::size_t>(L) + 1, 0);
  for (int d = 0; d <= L; ++d) {
    std::uint64_t next = d + 1 <= L ? m[static_cast<std::size_t>(d) + 1] : 0;
    v.cycle_counts[static_cast<std::size_t>(d)] = m[static_cast<std::size_t>(d)] - next;
  }
  while (!v.cycle_counts.empty() && v.cycle_counts.back() == 0) v.cycle_counts.pop_back();
  return v;
}

std::string cycle_type_string(const std::vector<std::uint64_t>& cycle_counts) {
  std::string out;
  for (std::size_t d = 0; d < cycle_counts.size(); ++d) {
    if (cycle_counts[d] == 0) continue;
    if (!out.empty()) out += " ";
    out += std::to_string(std::uint64_t{1} << d) + "^" + std::to_string(cycle_counts[d]);
  }
  return out.empty() ? "-" : out;
}

}  // namespace permlike
