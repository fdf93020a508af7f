#include "permlike/group.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace permlike {

namespace {

// Power chain word over the original generators reaching `target` in the
// relation subgroup; breadth-first, so words stay short. Returns generator
// indices to multiply left to right.
std::vector<std::size_t> quotient_word(const std::vector<std::uint32_t>& rs, int n,
                                       std::uint32_t target) {
  std::map<std::uint32_t, std::vector<std::size_t>> best;
  std::queue<std::uint32_t> frontier;
  const std::uint32_t one = reduce(1, n);
  best[one] = {};
  frontier.push(one);
  while (!frontier.empty()) {
    std::uint32_t x = frontier.front();
    frontier.pop();
    if (x == target) return best[x];
    for (std::size_t i = 0; i < rs.size(); ++i) {
      std::uint32_t y = mul_mod(x, rs[i], n);
      if (best.count(y)) continue;
      auto w = best[x];
      w.push_back(i);
      best[y] = std::move(w);
      frontier.push(y);
    }
  }
  throw ContradictionError("target residue not reachable in relation subgroup");
}

MonomialMatrix word_matrix(const ValidatedGroup& vg, const std::vector<std::size_t>& word) {
  MonomialMatrix m = mono_identity(vg.spec.n, vg.spec.level);
  for (std::size_t i : word) m = compose(m, vg.gen_matrices[i]);
  return m;
}

std::string word_string(const GroupSpec& spec, const std::vector<std::size_t>& word) {
  if (word.empty()) return "I";
  std::string out;
  for (std::size_t k = 0; k < word.size();) {
    std::size_t j = k;
    while (j < word.size() && word[j] == word[k]) ++j;
    if (!out.empty()) out += "*";
    out += spec.generators[word[k]].name;
    if (j - k > 1) out += "^" + std::to_string(j - k);
    k = j;
  }
  return out;
}

// s with w + s*S = 0 mod 2^n, when solvable.
std::optional<std::uint32_t> solve_shift(std::uint32_t w, std::uint32_t s_sum, int n) {
  if (w == 0) return 0u;
  if (s_sum == 0) return std::nullopt;
  int vs = v2(s_sum);
  if (v2(w) < vs) return std::nullopt;
  std::uint32_t rhs = neg_mod(w, n) >> vs;
  std::uint32_t odd = s_sum >> vs;
  return reduce(static_cast<std::uint64_t>(rhs) * inv_mod(odd, n - vs), n - vs);
}

}  // namespace

ValidatedGroup validate(const GroupSpec& spec) {
  if (spec.n < 1 || spec.n > 8) throw ParseError("n must lie in [1, 8] for group analysis");
  if (spec.level < spec.n || spec.level > 24)
    throw ParseError("level must lie in [n, 24]");
  if (spec.generators.size() > 8) throw ParseError("at most 8 generators supported");

  ValidatedGroup vg;
  vg.spec = spec;
  vg.C = maximal_cycle(spec.n, spec.level);

  const std::size_t d = std::size_t{1} << spec.n;
  std::set<std::string> names{"C", "I"};
  std::vector<std::uint32_t> rs;
  for (const auto& g : spec.generators) {
    if (g.name.empty() ||
        g.name.find_first_not_of(
            "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_") !=
            std::string::npos)
      throw ParseError("generator name must be alphanumeric ('C' and 'I' are reserved)");
    if (!names.insert(g.name).second) throw ParseError("duplicate or reserved generator name");
    if (g.coeffs.size() != d) throw ParseError("generator coefficient array must have length 2^n");
    std::uint32_t r = reduce(g.r, spec.n);
    if ((r & 1u) == 0) throw ParseError("generator relation must be an odd residue");
    vg.gen_matrices.push_back(mult_map_matrix(spec.n, spec.level, r, g.coeffs));
    rs.push_back(r);
  }

  vg.H = subgroup_classify(rs, spec.n);
  vg.group_order = vg.H.order() << spec.n;

  // Canonical generator system. The cyclic part's standard residue is always
  // reachable as a word in the inputs; same for -1 in the product case.
  std::optional<std::uint32_t> a_target;
  bool want_b = false;
  switch (vg.H.kind) {
    case SubgroupDescriptor::Kind::Trivial: break;
    case SubgroupDescriptor::Kind::MinusOne: a_target = neg_mod(reduce(1, spec.n), spec.n); break;
    case SubgroupDescriptor::Kind::CyclicPlus:
      a_target = canonical_plus_generator(spec.n, vg.H.a);
      break;
    case SubgroupDescriptor::Kind::CyclicMinus:
      a_target = canonical_minus_generator(spec.n, vg.H.a);
      break;
    case SubgroupDescriptor::Kind::Product:
      a_target = canonical_plus_generator(spec.n, vg.H.a);
      want_b = true;
      break;
  }
  if (a_target) {
    auto word = quotient_word(rs, spec.n, *a_target);
    vg.A = word_matrix(vg, word);
    vg.rA = *a_target;
    vg.a_order = unit_order(vg.rA, spec.n);
    vg.derivations.push_back("A = " + word_string(spec, word));
  }
  if (want_b) {
    auto word = quotient_word(rs, spec.n, neg_mod(reduce(1, spec.n), spec.n));
    vg.B = word_matrix(vg, word);
    vg.derivations.push_back("B = " + word_string(spec, word));
  }

  // Scope: the cycle must be self-centralized, i.e. every diagonal element of
  // the group is a power of C. With the canonical system in hand this reduces
  // to finitely many residues being cycle powers.
  auto diagonal_defect = [&](const MonomialMatrix& m,
                             const std::string& what) -> std::optional<std::string> {
    if (relation_of(m) != std::optional<std::uint32_t>(reduce(1, spec.n)))
      return what + " does not have trivial relation";  // unreachable by construction
    if (!as_cycle_power(m))
      return "the cycle is not self-centralized: " + what +
             " is a diagonal group element outside the cycle subgroup";
    return std::nullopt;
  };

  auto fail_scope = [&](std::string why) {
    vg.scope_violation = std::move(why);
    vg.A.reset();
    vg.B.reset();
  };

  if (vg.A) {
    MonomialMatrix t = mono_power(*vg.A, vg.a_order);
    if (auto why = diagonal_defect(t, "the torsion of the cyclic part generator")) {
      fail_scope(*why);
      return vg;
    }
  }
  if (vg.B && !vg.scope_violation) {
    if (auto why = diagonal_defect(compose(*vg.B, *vg.B), "the square of the reflection part")) {
      fail_scope(*why);
      return vg;
    }
    MonomialMatrix comm = compose(mono_inverse(*vg.A), compose(mono_inverse(*vg.B),
                                                               compose(*vg.A, *vg.B)));
    if (auto why = diagonal_defect(comm, "the commutator of the canonical generators")) {
      fail_scope(*why);
      return vg;
    }
  }
  for (std::size_t i = 0; i < vg.gen_matrices.size() && !vg.scope_violation; ++i) {
    // Residual of the generator against its standard word: g * word^-1 is
    // diagonal and must land in <C>.
    std::uint32_t r = rs[i];
    MonomialMatrix w = mono_identity(spec.n, spec.level);
    bool matched = false;
    std::uint64_t a_ord = vg.A ? vg.a_order : 1;
    for (std::uint64_t e = 0; e < a_ord && !matched; ++e) {
      for (int f = 0; f < (vg.B ? 2 : 1) && !matched; ++f) {
        std::uint32_t val = vg.A ? pow_mod(vg.rA, e, spec.n) : reduce(1, spec.n);
        if (f) val = neg_mod(val, spec.n);
        if (val == r) {
          w = vg.A ? mono_power(*vg.A, e) : w;
          if (f) w = compose(w, *vg.B);
          matched = true;
        }
      }
    }
    if (!matched) throw ContradictionError("generator relation missing from subgroup");
    MonomialMatrix res = compose(vg.gen_matrices[i], mono_inverse(w));
    if (auto why =
            diagonal_defect(res, "the residue of generator '" + spec.generators[i].name + "'")) {
      fail_scope(*why);
      return vg;
    }
  }
  return vg;
}

std::vector<Element> enumerate_elements(const ValidatedGroup& vg) {
  if (vg.scope_violation)
    throw ScopeError("canonical enumeration requires an in-scope group: " + *vg.scope_violation);
  const int n = vg.spec.n;
  const std::uint32_t dim = pow2(n);
  std::vector<Element> out;
  out.reserve(vg.group_order);
  std::uint64_t a_ord = vg.A ? vg.a_order : 1;
  int b_ord = vg.B ? 2 : 1;

  std::vector<MonomialMatrix> a_pows;
  a_pows.push_back(mono_identity(n, vg.spec.level));
  for (std::uint64_t e = 1; e < a_ord; ++e)
    a_pows.push_back(compose(a_pows.back(), *vg.A));

  for (std::uint64_t l = 0; l < a_ord; ++l) {
    for (int f = 0; f < b_ord; ++f) {
      MonomialMatrix head = f ? compose(a_pows[l], *vg.B) : a_pows[l];
      MonomialMatrix cur = head;
      for (std::uint32_t k = 0; k < dim; ++k) {
        Element el;
        el.a_pow = l;
        el.b_pow = static_cast<std::uint64_t>(f);
        el.c_pow = k;
        std::string w;
        if (l) w += "A" + std::string(l > 1 ? "^" + std::to_string(l) : "");
        if (f) w += std::string(w.empty() ? "" : "*") + "B";
        if (k) w += std::string(w.empty() ? "" : "*") + "C" +
                    std::string(k > 1 ? "^" + std::to_string(k) : "");
        el.word = w.empty() ? "I" : w;
        el.m = cur;
        out.push_back(std::move(el));
        if (k + 1 < dim) cur = compose(cur, vg.C);
      }
    }
  }
  if (out.size() != vg.group_order)
    throw ContradictionError("canonical enumeration size mismatch");
  return out;
}

std::vector<Element> closure_elements(const ValidatedGroup& vg, std::size_t cap) {
  std::vector<std::pair<std::string, const MonomialMatrix*>> gens;
  for (std::size_t i = 0; i < vg.gen_matrices.size(); ++i)
    gens.emplace_back(vg.spec.generators[i].name, &vg.gen_matrices[i]);
  gens.emplace_back("C", &vg.C);

  std::map<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>, std::size_t> seen;
  std::vector<Element> out;
  MonomialMatrix id = mono_identity(vg.spec.n, vg.spec.level);
  seen[{id.perm, id.coeffs}] = 0;
  out.push_back(Element{"I", 0, 0, 0, id});
  std::size_t next = 0;
  while (next < out.size()) {
    // Copy: out may reallocate while we append.
    Element cur = out[next];
    ++next;
    for (auto& [name, gm] : gens) {
      MonomialMatrix prod = compose(cur.m, *gm);
      auto key = std::make_pair(prod.perm, prod.coeffs);
      if (seen.count(key)) continue;
      if (out.size() >= cap)
        throw ScopeError("group closure exceeds the enumeration cap; outside supported sizes");
      seen[key] = out.size();
      Element el;
      el.word = cur.word == "I" ? name : cur.word + "*" + name;
      el.m = std::move(prod);
      out.push_back(std::move(el));
    }
  }
  return out;
}

GroupAnalysis permutation_like_scan(const ValidatedGroup& vg) {
  GroupAnalysis out;
  out.H = vg.H;
  std::vector<Element> elements =
      vg.scope_violation ? closure_elements(vg) : enumerate_elements(vg);
  out.order = elements.size();
  out.permutation_like = true;
  for (const Element& el : elements) {
    CharPolyFactors cf = char_factors(el.m);
    PermVerdict pv = perm_similarity(cf);
    if (!pv.permutation_type) {
      out.permutation_like = false;
      out.witness = Witness{el.word, std::move(cf), std::move(pv)};
      break;
    }
  }
  return out;
}

std::string torsion_kind_label(TorsionKind k) {
  switch (k) {
    case TorsionKind::Split: return "split";
    case TorsionKind::Dihedral: return "dihedral";
    case TorsionKind::Quaternion: return "quaternion";
  }
  throw ContradictionError("bad torsion kind");
}

NormalizedTorsion normalize_torsion(const MonomialMatrix& a, std::uint32_t r) {
  const int n = a.n;
  std::uint32_t rr = reduce(r, n);
  if (relation_of(a) != std::optional<std::uint32_t>(rr))
    throw Error("matrix relation does not match the declared residue");
  UnitDecomposition ud = unit_decompose(rr, n);
  MonomialMatrix torsion = mono_power(a, ud.order);
  auto w = as_cycle_power(torsion);
  if (!w) throw ContradictionError("generator torsion is not a cycle power");

  NormalizedTorsion out;
  if (ud.sign == -1 && ud.v == 0) {
    // Relation -1: A^2 is C^w with w in {0, 2^(n-1)} and A C^k squares to the
    // same torsion, so w is an invariant, not a normalizable defect.
    const std::uint32_t half = pow2(n) / 2;
    if (*w == 0) {
      out.kind = TorsionKind::Dihedral;
    } else if (*w == half) {
      out.kind = TorsionKind::Quaternion;
    } else {
      throw ContradictionError("reflection torsion must be trivial or the half cycle");
    }
    out.matrix = a;
    out.shift = 0;
    return out;
  }

  GeomSumValuation gs = geom_sum_valuation(rr, n);
  if (gs.zero) throw ContradictionError("geometric sum vanished off the minus-one case");
  std::uint32_t s_sum = geom_sum(rr, ud.order, n);
  auto s = solve_shift(*w, s_sum, n);
  if (!s)
    throw ContradictionError(
        "torsion cycle power is not divisible by the geometric sum valuation");
  out.matrix = *s == 0 ? a : compose(a, cycle_power(n, a.level, *s));
  out.shift = *s;
  out.kind = TorsionKind::Split;
  if (!is_identity(mono_power(out.matrix, ud.order)))
    throw ContradictionError("torsion normalization failed to collapse the power");
  return out;
}

CommutingAdjust commuting_adjust(const MonomialMatrix& a, std::uint32_t ra,
                                 const MonomialMatrix& b) {
  const int n = a.n;
  UnitDecomposition ud = unit_decompose(reduce(ra, n), n);
  if (ud.sign != 1 || ud.v == 0)
    throw Error("commuting adjustment expects a canonical plus-shape relation");
  MonomialMatrix defect =
      compose(mono_inverse(a), compose(mono_inverse(b), compose(a, b)));
  auto k = as_cycle_power(defect);
  if (!k) throw ContradictionError("commutator of canonical generators is not a cycle power");
  CommutingAdjust out;
  if (*k == 0) {
    out.matrix = b;
    out.h = 0;
    return out;
  }
  // B^-1 A B = A C^k forces 2^(n-a) | k once A's torsion is collapsed; B C^h
  // then commutes with A iff h (rA - 1) = k, solved via the odd part v of
  // rA - 1 = 2^(n-a) v.
  int a_exp = n - ud.b;  // order exponent of rA
  if (v2(*k) < ud.b)
    throw ContradictionError("commutator defect valuation below the relation tail");
  std::uint32_t kappa = *k >> ud.b;
  std::uint32_t h = reduce(static_cast<std::uint64_t>(kappa) * inv_mod(ud.v, a_exp), a_exp);
  out.matrix = compose(b, cycle_power(n, b.level, h));
  out.h = h;
  MonomialMatrix check = compose(mono_inverse(a),
                                 compose(mono_inverse(out.matrix), compose(a, out.matrix)));
  if (!is_identity(check))
    throw ContradictionError("commuting adjustment failed to kill the defect");
  return out;
}

}  // namespace permlike
