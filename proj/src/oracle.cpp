#include "permlike/oracle.hpp"

#include <algorithm>
#include <set>

#include "permlike/residue.hpp"

namespace permlike {

DenseMatrix DenseMatrix::zero(std::size_t dim, int level) {
  DenseMatrix m;
  m.level = level;
  m.dim = dim;
  m.e.assign(dim * dim, CycloNum::zero(level));
  return m;
}

DenseMatrix DenseMatrix::identity(std::size_t dim, int level) {
  DenseMatrix m = zero(dim, level);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = CycloNum::one(level);
  return m;
}

DenseMatrix dense_expand(const MonomialMatrix& m) {
  DenseMatrix d = DenseMatrix::zero(m.dim(), m.level);
  for (std::size_t j = 0; j < m.dim(); ++j)
    d.at(m.perm[j], j) = CycloNum::from_root(RootOfUnity::make(m.level, m.coeffs[j]), m.level);
  return d;
}

DenseMatrix dense_mul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.dim != b.dim || a.level != b.level) throw Error("dense matrix shape mismatch");
  DenseMatrix out = DenseMatrix::zero(a.dim, a.level);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t k = 0; k < a.dim; ++k) {
      const CycloNum& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < a.dim; ++j) {
        const CycloNum& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        out.at(i, j) += aik * bkj;
      }
    }
  return out;
}

CycloPoly brute_char_poly(const DenseMatrix& a) {
  if (a.dim > 16) throw Error("characteristic polynomial oracle is limited to dim <= 16");
  const std::size_t d = a.dim;
  std::vector<CycloNum> c(d + 1, CycloNum::zero(a.level));
  c[d] = CycloNum::one(a.level);
  DenseMatrix nmat = DenseMatrix::identity(d, a.level);
  for (std::size_t k = 1; k <= d; ++k) {
    DenseMatrix m = dense_mul(a, nmat);
    CycloNum tr = CycloNum::zero(a.level);
    for (std::size_t i = 0; i < d; ++i) tr += m.at(i, i);
    c[d - k] = tr.scaled(mpq_class(-1, static_cast<unsigned long>(k)));
    nmat = std::move(m);
    for (std::size_t i = 0; i < d; ++i) nmat.at(i, i) += c[d - k];
  }
  return CycloPoly::from_coeffs(std::move(c), a.level);
}

DenseMatrix vandermonde(int n, int level) {
  if (n < 0 || level < std::max(n, 1)) throw Error("vandermonde needs level >= n");
  const std::size_t dim = std::size_t{1} << n;
  DenseMatrix t = DenseMatrix::zero(dim, level);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = 0; k < dim; ++k) {
      std::uint64_t e = (static_cast<std::uint64_t>(j) * k) << (level - n);
      t.at(j, k) = CycloNum::from_root(RootOfUnity::make(level, e), level);
    }
  return t;
}

DenseMatrix vandermonde_inverse(int n, int level) {
  if (n < 0 || level < std::max(n, 1)) throw Error("vandermonde needs level >= n");
  const std::size_t dim = std::size_t{1} << n;
  const mpq_class scale(1, static_cast<unsigned long>(dim));
  DenseMatrix t = DenseMatrix::zero(dim, level);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = 0; k < dim; ++k) {
      std::uint64_t jk = (static_cast<std::uint64_t>(j) * k) & (dim - 1);
      std::uint64_t e = ((dim - jk) & (dim - 1)) << (level - n);
      t.at(j, k) = CycloNum::from_root(RootOfUnity::make(level, e), level).scaled(scale);
    }
  return t;
}

DenseMatrix vandermonde_conjugate(const DenseMatrix& a, int n) {
  if (a.dim != (std::size_t{1} << n)) throw Error("conjugation needs a 2^n-dimensional matrix");
  return dense_mul(vandermonde_inverse(n, a.level), dense_mul(a, vandermonde(n, a.level)));
}

std::optional<std::vector<std::uint32_t>> as_permutation_matrix(const DenseMatrix& a) {
  std::vector<std::uint32_t> perm(a.dim, 0);
  std::vector<bool> hit(a.dim, false);
  for (std::size_t t = 0; t < a.dim; ++t) {
    std::size_t ones = 0;
    std::size_t row = 0;
    for (std::size_t i = 0; i < a.dim; ++i) {
      const CycloNum& v = a.at(i, t);
      if (v.is_zero()) continue;
      if (!v.is_rational() || v.rational_part() != 1) return std::nullopt;
      ++ones;
      row = i;
    }
    if (ones != 1 || hit[row]) return std::nullopt;
    hit[row] = true;
    perm[t] = static_cast<std::uint32_t>(row);
  }
  return perm;
}

bool dense_conjugate_matches(const MonomialMatrix& w, const std::vector<std::uint32_t>& phi) {
  const std::size_t dim = w.dim();
  if (phi.size() != dim) return false;
  const int shift = w.level - w.n;
  const std::uint32_t mask = w.coeff_mask();
  const std::uint32_t nmask = static_cast<std::uint32_t>(dim - 1);
  const std::uint32_t fold = (mask >> 1) + 1;  // lambda^fold = -1
  // (T^-1 w T)[u][t] = (1/dim) sum_j lambda^{c_j + (j t - u perm[j]) step}.
  // At most dim power-basis coordinates appear per entry; fold the exponents
  // into signed integer counts and compare against dim * delta(u == phi[t]).
  std::vector<std::pair<std::uint32_t, std::int32_t>> acc;
  acc.reserve(dim);
  for (std::size_t u = 0; u < dim; ++u) {
    for (std::size_t t = 0; t < dim; ++t) {
      acc.clear();
      for (std::size_t j = 0; j < dim; ++j) {
        std::uint64_t jt = static_cast<std::uint64_t>(j) * t & nmask;
        std::uint64_t up = static_cast<std::uint64_t>(u) * w.perm[j] & nmask;
        std::uint32_t e = (w.coeffs[j] + ((jt + dim - up) << shift)) & mask;
        std::uint32_t idx = e & (fold - 1);
        std::int32_t sign = e < fold ? 1 : -1;
        auto it = std::find_if(acc.begin(), acc.end(),
                               [idx](const auto& p) { return p.first == idx; });
        if (it == acc.end()) acc.emplace_back(idx, sign);
        else it->second += sign;
      }
      const std::int32_t want = u == phi[t] ? static_cast<std::int32_t>(dim) : 0;
      bool saw_constant = false;
      for (const auto& [idx, count] : acc) {
        if (idx == 0) saw_constant = true;
        if (count != (idx == 0 ? want : 0)) return false;
      }
      if (want != 0 && !saw_constant) return false;
    }
  }
  return true;
}

namespace {

struct ParsedSub {
  std::string name;
  std::uint32_t k = 0;
};

// "A:=A*C" or "A:=A*C^12": append a cycle power to a named generator.
std::optional<ParsedSub> parse_substitution(const std::string& s, int n) {
  auto pos = s.find(":=");
  if (pos == std::string::npos || pos == 0) return std::nullopt;
  ParsedSub out;
  out.name = s.substr(0, pos);
  std::string rhs = s.substr(pos + 2);
  std::string head = out.name + "*C";
  if (rhs.compare(0, head.size(), head) != 0) return std::nullopt;
  std::string tail = rhs.substr(head.size());
  if (tail.empty()) {
    out.k = reduce(1, n);
    return out;
  }
  if (tail[0] != '^' || tail.size() < 2 || tail.size() > 11) return std::nullopt;
  std::uint64_t k = 0;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    if (tail[i] < '0' || tail[i] > '9') return std::nullopt;
    k = k * 10 + static_cast<std::uint64_t>(tail[i] - '0');
  }
  out.k = reduce(k, n);
  return out;
}

std::vector<std::uint32_t> compose_index(const std::vector<std::uint32_t>& p,
                                         const std::vector<std::uint32_t>& q) {
  std::vector<std::uint32_t> out(p.size());
  for (std::size_t t = 0; t < p.size(); ++t) out[t] = p[q[t]];
  return out;
}

bool is_bijection(const std::vector<std::uint32_t>& p, std::size_t dim) {
  if (p.size() != dim) return false;
  std::vector<bool> hit(dim, false);
  for (std::uint32_t v : p) {
    if (v >= dim || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

}  // namespace

VerificationReport verify_certificate(const ValidatedGroup& vg, const PermBasisCertificate& cert,
                                      VerifyTier tier) {
  if (vg.scope_violation)
    throw Error("certificate verification requires an in-scope group");
  VerificationReport rep;
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    rep.failure = msg;
    return rep;
  };

  const int n = vg.spec.n;
  const int level = vg.spec.level;
  const std::size_t dim = std::size_t{1} << n;
  const std::uint32_t mask = pow2(level) - 1u;

  if (cert.n != n || cert.level != level) return fail("certificate shape mismatch");
  if (cert.rescale.size() != dim) return fail("rescale array must have length 2^n");
  for (std::uint32_t e : cert.rescale)
    if (e & ~mask) return fail("rescale exponent out of range for the level");

  // Generator permutation table: exactly C plus the canonical generators.
  const std::vector<std::uint32_t>* pC = nullptr;
  const std::vector<std::uint32_t>* pA = nullptr;
  const std::vector<std::uint32_t>* pB = nullptr;
  for (const auto& [name, perm] : cert.generator_permutations) {
    const std::vector<std::uint32_t>** slot = nullptr;
    if (name == "C") slot = &pC;
    else if (name == "A") slot = &pA;
    else if (name == "B") slot = &pB;
    if (!slot) return fail("unknown generator name in the permutation table: " + name);
    if (*slot) return fail("duplicate generator name in the permutation table: " + name);
    if (!is_bijection(perm, dim)) return fail("generator image is not a permutation: " + name);
    *slot = &perm;
  }
  if (!pC) return fail("permutation table must include the cycle generator");
  if (static_cast<bool>(pA) != vg.A.has_value() || static_cast<bool>(pB) != vg.B.has_value())
    return fail("permutation table does not match the canonical generator system");
  if (*pC != shift_permutation(n)) return fail("cycle generator must map to the index shift");
  if (pA && (*pA)[0] != 0) return fail("cyclic generator image must fix index 0");
  if (pB && (*pB)[0] != 0) return fail("reflection image must fix index 0");

  // Gauge rule: indices fixed by every canonical generator's multiplication map
  // carry a pinned zero rescale, so equivalent certificates coincide.
  for (std::size_t j = 0; j < dim; ++j) {
    bool fixed = true;
    if (vg.A && vg.A->perm[j] != j) fixed = false;
    if (vg.B && vg.B->perm[j] != j) fixed = false;
    if (fixed && cert.rescale[j] != 0)
      return fail("rescale must be zero on indices fixed by all generators (gauge rule)");
  }

  // Substituted generators: a cycle-power twist never changes the generated
  // group, only the chosen representatives.
  std::optional<MonomialMatrix> A = vg.A;
  std::optional<MonomialMatrix> B = vg.B;
  for (const auto& s : cert.substitutions) {
    auto p = parse_substitution(s, n);
    if (!p) return fail("unrecognized substitution: " + s);
    std::optional<MonomialMatrix>* target = nullptr;
    if (p->name == "A") target = &A;
    else if (p->name == "B") target = &B;
    if (!target || !target->has_value()) return fail("substitution names a missing generator: " + s);
    **target = compose(**target, cycle_power(n, level, p->k));
  }

  bool run_fast = tier == VerifyTier::Fast || tier == VerifyTier::Both;
  bool run_dense = tier == VerifyTier::Dense || tier == VerifyTier::Both;
  if (run_dense && n > 4) {
    run_dense = false;
    rep.note = run_fast ? "dense tier skipped (n > 4)"
                        : "dense tier skipped (n > 4); fast tier run instead";
    run_fast = true;
  }

  const std::uint64_t a_ord = A ? vg.a_order : 1;
  const int b_ord = B ? 2 : 1;
  const std::uint32_t nmask = static_cast<std::uint32_t>(dim - 1);
  const int shift = level - n;

  std::set<std::vector<std::uint32_t>> image;
  std::vector<std::uint32_t> g(dim);
  std::vector<std::uint32_t> phi(dim);
  std::vector<std::uint32_t> phi_direct(dim);

  std::vector<std::uint32_t> ident(dim);
  for (std::size_t t = 0; t < dim; ++t) ident[t] = static_cast<std::uint32_t>(t);

  MonomialMatrix a_pow = mono_identity(n, level);
  std::vector<std::uint32_t> phi_a_pow = ident;
  for (std::uint64_t l = 0; l < a_ord; ++l) {
    for (int f = 0; f < b_ord; ++f) {
      MonomialMatrix head = f ? compose(a_pow, *B) : a_pow;
      std::vector<std::uint32_t> phi_head = f ? compose_index(phi_a_pow, *pB) : phi_a_pow;
      MonomialMatrix m = head;
      for (std::size_t k = 0; k < dim; ++k) {
        // phi(M C^k) = phi(M) after a k-step shift.
        for (std::size_t t = 0; t < dim; ++t)
          phi[t] = phi_head[(t + k) & nmask];
        const std::string where = " at word A^" + std::to_string(l) + (f ? "*B" : "") +
                                  "*C^" + std::to_string(k);

        MonomialMatrix w = rescaled(m, cert.rescale);
        if (run_fast) {
          for (std::size_t j = 0; j < dim; ++j) g[w.perm[j]] = w.coeffs[j];
          if (g[0] != 0) return fail("rescaled element does not fix the base line" + where);
          std::uint32_t s = 0;
          if (n >= 1) {
            if (g[1] & ((1u << shift) - 1u))
              return fail("rescaled element exponent is not a multiple of the line spacing" +
                          where);
            s = g[1] >> shift;
          }
          for (std::size_t i = 0; i < dim; ++i) {
            std::uint32_t want =
                static_cast<std::uint32_t>((static_cast<std::uint64_t>(s) * i & nmask) << shift);
            if (g[i] != want)
              return fail("rescaled element is not a shifted line permutation" + where);
          }
          auto u = relation_of(m);
          if (!u) return fail("element permutation part is not a multiplication map" + where);
          std::uint32_t uinv = inv_mod(*u, n);
          for (std::size_t t = 0; t < dim; ++t)
            phi_direct[t] = static_cast<std::uint32_t>(
                (static_cast<std::uint64_t>(uinv) * t + s) & nmask);
          if (phi_direct != phi)
            return fail("replayed certificate permutation disagrees with the element action" +
                        where);
          rep.fast_ran = true;
        }
        if (run_dense) {
          if (!dense_conjugate_matches(w, phi))
            return fail("dense eigenline conjugation is not the certificate permutation" + where);
          rep.dense_ran = true;
        }
        image.insert(phi);
        ++rep.elements_checked;
        if (k + 1 < dim) m = compose(m, vg.C);
      }
    }
    if (l + 1 < a_ord) {
      a_pow = compose(a_pow, *A);
      phi_a_pow = compose_index(phi_a_pow, *pA);
    }
  }

  if (image.size() != vg.group_order)
    return fail("certificate permutations are not faithful: " + std::to_string(image.size()) +
                " distinct images for " + std::to_string(vg.group_order) + " elements");
  if (rep.elements_checked != vg.group_order)
    return fail("element sweep did not cover the group");
  return rep;
}

}  // namespace permlike
