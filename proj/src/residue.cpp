#include "permlike/residue.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace permlike {

namespace {

void check_n(int n) {
  if (n < 0 || n > 30) throw Error("modulus exponent out of range [0, 30]");
}

void check_unit(std::uint32_t r, int n) {
  check_n(n);
  if (n >= 1 && (r & 1u) == 0) throw Error("residue is not a unit mod 2^n (even)");
  if (r >= pow2(n)) throw Error("residue not reduced mod 2^n");
}

}  // namespace

int v2(std::uint64_t k) {
  if (k == 0) throw Error("2-adic valuation of zero is undefined");
  return std::countr_zero(k);
}

std::uint32_t pow2(int n) {
  check_n(n);
  return static_cast<std::uint32_t>(1) << n;
}

std::uint32_t reduce(std::uint64_t v, int n) {
  check_n(n);
  return static_cast<std::uint32_t>(v & (pow2(n) - 1));
}

std::uint32_t neg_mod(std::uint32_t a, int n) { return reduce(pow2(n) - (a & (pow2(n) - 1u)), n); }

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, int n) {
  return reduce(static_cast<std::uint64_t>(a) * b, n);
}

std::uint32_t pow_mod(std::uint32_t r, std::uint64_t e, int n) {
  std::uint32_t acc = reduce(1, n);
  std::uint32_t base = reduce(r, n);
  while (e) {
    if (e & 1) acc = mul_mod(acc, base, n);
    base = mul_mod(base, base, n);
    e >>= 1;
  }
  return acc;
}

std::uint32_t inv_mod(std::uint32_t r, int n) {
  check_unit(r, n);
  if (n == 0) return 0;
  // Newton lifting: x <- x(2 - rx) doubles the number of correct bits.
  std::uint32_t x = 1;
  for (int bits = 1; bits < n; bits *= 2) {
    x = reduce(static_cast<std::uint64_t>(x) * (2 + pow2(n) * 2ull - mul_mod(r, x, n)), n);
  }
  if (mul_mod(r, x, n) != reduce(1, n)) throw ContradictionError("modular inverse failed");
  return x;
}

std::uint64_t unit_order(std::uint32_t r, int n) {
  check_unit(r, n);
  std::uint64_t ord = 1;
  std::uint32_t x = reduce(r, n);
  const std::uint32_t one = reduce(1, n);
  while (x != one) {
    x = mul_mod(x, x, n);
    ord *= 2;
    if (ord > (1ull << 31)) throw ContradictionError("unit order overflow");
  }
  return ord;
}

UnitDecomposition unit_decompose(std::uint32_t r, int n) {
  check_unit(r, n);
  UnitDecomposition d;
  d.n = n;
  d.value = reduce(r, n);
  if (n == 0) {
    d.sign = 1;
    d.b = 0;
    d.v = 0;
    d.order = 1;
    return d;
  }
  const std::uint32_t one = reduce(1, n);
  const std::uint32_t minus_one = neg_mod(one, n);
  if (d.value == one) {
    d.sign = 1;
    d.b = n;
    d.v = 0;
    d.order = 1;
    return d;
  }
  if (d.value == minus_one) {
    d.sign = -1;
    d.b = n;
    d.v = 0;
    d.order = 2;
    return d;
  }
  // r - 1 and r + 1 differ by 2; exactly one of them is divisible by 4, and
  // that side fixes the sign.
  std::uint32_t tail_plus = reduce(d.value - 1u, n);
  std::uint32_t tail_minus = reduce(d.value + 1u, n);
  int b_plus = v2(tail_plus);
  int b_minus = v2(tail_minus);
  if (b_plus >= 2 && b_plus > b_minus) {
    d.sign = 1;
    d.b = b_plus;
    d.v = tail_plus >> b_plus;
  } else {
    d.sign = -1;
    d.b = b_minus;
    d.v = tail_minus >> b_minus;
  }
  if (d.b < 2 || (d.v & 1u) == 0) throw ContradictionError("unit decomposition failed");
  d.order = static_cast<std::uint64_t>(1) << (n - d.b);
  if (unit_order(d.value, n) != d.order) throw ContradictionError("unit order mismatch");
  return d;
}

std::uint64_t SubgroupDescriptor::order() const {
  switch (kind) {
    case Kind::Trivial: return 1;
    case Kind::MinusOne: return 2;
    case Kind::CyclicPlus:
    case Kind::CyclicMinus: return std::uint64_t{1} << a;
    case Kind::Product: return std::uint64_t{1} << (a + 1);
  }
  throw ContradictionError("bad subgroup kind");
}

std::string SubgroupDescriptor::label() const {
  switch (kind) {
    case Kind::Trivial: return "trivial";
    case Kind::MinusOne: return "minus-one";
    case Kind::CyclicPlus: return "cyclic-plus(a=" + std::to_string(a) + ")";
    case Kind::CyclicMinus: return "cyclic-minus(a=" + std::to_string(a) + ")";
    case Kind::Product: return "product(a=" + std::to_string(a) + ")";
  }
  throw ContradictionError("bad subgroup kind");
}

std::uint32_t canonical_plus_generator(int n, int a) {
  if (a < 1 || a > std::max(0, n - 2)) throw Error("plus generator needs 1 <= a <= n-2");
  return reduce(1u + pow2(n - a), n);
}

std::uint32_t canonical_minus_generator(int n, int a) {
  if (a < 1 || a > std::max(0, n - 2)) throw Error("minus generator needs 1 <= a <= n-2");
  return reduce(static_cast<std::uint64_t>(pow2(n)) - 1u + pow2(n - a), n);
}

std::vector<std::uint32_t> subgroup_elements(const SubgroupDescriptor& d, int n) {
  check_n(n);
  std::set<std::uint32_t> out;
  const std::uint32_t one = reduce(1, n);
  out.insert(one);
  auto add_powers = [&](std::uint32_t g) {
    std::uint32_t x = g;
    while (out.insert(x).second) x = mul_mod(x, g, n);
  };
  switch (d.kind) {
    case SubgroupDescriptor::Kind::Trivial: break;
    case SubgroupDescriptor::Kind::MinusOne: out.insert(neg_mod(one, n)); break;
    case SubgroupDescriptor::Kind::CyclicPlus: add_powers(canonical_plus_generator(n, d.a)); break;
    case SubgroupDescriptor::Kind::CyclicMinus:
      add_powers(canonical_minus_generator(n, d.a));
      break;
    case SubgroupDescriptor::Kind::Product: {
      add_powers(canonical_plus_generator(n, d.a));
      for (std::uint32_t x : std::vector<std::uint32_t>(out.begin(), out.end()))
        out.insert(neg_mod(x, n));
      break;
    }
  }
  return {out.begin(), out.end()};
}

SubgroupDescriptor subgroup_classify(std::span<const std::uint32_t> gens, int n) {
  check_n(n);
  std::set<std::uint32_t> closure;
  closure.insert(reduce(1, n));
  std::vector<std::uint32_t> frontier(closure.begin(), closure.end());
  for (std::uint32_t g : gens) check_unit(reduce(g, n), n);
  while (!frontier.empty()) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t x : frontier)
      for (std::uint32_t g : gens) {
        std::uint32_t y = mul_mod(x, reduce(g, n), n);
        if (closure.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  const std::uint32_t minus_one = neg_mod(reduce(1, n), n);
  std::uint64_t plus_count = 0;  // elements of the closure lying in <5> (== 1 mod 4, or 1)
  for (std::uint32_t x : closure) {
    if (n <= 1 || x % 4 == 1 || x == reduce(1, n)) ++plus_count;
  }
  bool has_minus_one = n >= 1 && closure.count(minus_one) > 0;
  if (n <= 1) has_minus_one = false;  // -1 == 1 there

  SubgroupDescriptor d;
  int p = 0;
  while ((std::uint64_t{1} << p) < plus_count) ++p;
  if ((std::uint64_t{1} << p) != plus_count)
    throw ContradictionError("plus part of unit subgroup has non 2-power size");
  if (has_minus_one) {
    d.kind = p == 0 ? SubgroupDescriptor::Kind::MinusOne : SubgroupDescriptor::Kind::Product;
    d.a = p;
  } else if (plus_count == closure.size()) {
    d.kind = p == 0 ? SubgroupDescriptor::Kind::Trivial : SubgroupDescriptor::Kind::CyclicPlus;
    d.a = p;
  } else {
    d.kind = SubgroupDescriptor::Kind::CyclicMinus;
    d.a = p + 1;
  }
  std::vector<std::uint32_t> expect = subgroup_elements(d, n);
  if (!std::equal(expect.begin(), expect.end(), closure.begin(), closure.end()) ||
      expect.size() != closure.size())
    throw ContradictionError("unit subgroup does not match any standard shape");
  return d;
}

std::uint32_t canonical_unit_generator(std::uint32_t r, int n) {
  check_unit(r, n);
  std::uint32_t gens[1] = {reduce(r, n)};
  SubgroupDescriptor d = subgroup_classify(gens, n);
  switch (d.kind) {
    case SubgroupDescriptor::Kind::Trivial: return reduce(1, n);
    case SubgroupDescriptor::Kind::MinusOne: return neg_mod(reduce(1, n), n);
    case SubgroupDescriptor::Kind::CyclicPlus: return canonical_plus_generator(n, d.a);
    case SubgroupDescriptor::Kind::CyclicMinus: return canonical_minus_generator(n, d.a);
    case SubgroupDescriptor::Kind::Product:
      throw ContradictionError("single unit generated a non-cyclic subgroup");
  }
  throw ContradictionError("bad subgroup kind");
}

std::uint32_t geom_sum(std::uint32_t r, std::uint64_t terms, int n) {
  check_unit(r, n);
  std::uint32_t acc = 0;
  std::uint32_t power = reduce(1, n);
  for (std::uint64_t i = 0; i < terms; ++i) {
    acc = reduce(static_cast<std::uint64_t>(acc) + power, n);
    power = mul_mod(power, r, n);
  }
  return acc;
}

GeomSumValuation geom_sum_valuation(std::uint32_t r, int n) {
  if (n < 1) throw Error("geometric sum valuation needs n >= 1");
  check_unit(r, n);
  UnitDecomposition d = unit_decompose(r, n);
  GeomSumValuation out;
  std::uint32_t sum = geom_sum(r, d.order, n);
  if (sum == 0) {
    if (!(d.sign == -1 && d.v == 0))
      throw ContradictionError("geometric sum vanished for a non minus-one unit");
    out.zero = true;
    return out;
  }
  out.valuation = v2(sum);
  if (out.valuation >= n) throw ContradictionError("geometric sum valuation out of range");
  out.odd_part = sum >> out.valuation;
  // Closed-form cross-check: order exponent for the plus shapes, n-1 for the
  // strict minus shapes.
  int expect = d.sign == 1 ? (d.v == 0 ? 0 : n - d.b) : n - 1;
  if (out.valuation != expect)
    throw ContradictionError("geometric sum valuation disagrees with closed form");
  return out;
}

OrbitPartition orbits(std::uint32_t r, int n, OrbitDomain domain) {
  check_unit(r, n);
  const std::uint32_t dim = pow2(n);
  const std::uint32_t half = dim / 2;
  auto in_domain = [&](std::uint32_t j) {
    switch (domain) {
      case OrbitDomain::All: return true;
      case OrbitDomain::Units: return (j & 1u) == 1u;
      case OrbitDomain::Evens: return (j & 1u) == 0u;
      case OrbitDomain::NonFixed: return j != 0 && (n == 0 || j != half);
    }
    return false;
  };
  OrbitPartition part;
  part.r = reduce(r, n);
  part.n = n;
  std::vector<bool> seen(dim, false);
  for (std::uint32_t j = 0; j < dim; ++j) {
    if (seen[j] || !in_domain(j)) continue;
    Orbit orb;
    std::uint32_t x = j;
    do {
      if (!in_domain(x)) throw ContradictionError("multiplication orbit escaped its domain");
      seen[x] = true;
      orb.elements.push_back(x);
      x = mul_mod(part.r, x, n);
    } while (x != j);
    part.orbits.push_back(std::move(orb));
  }
  return part;
}

OrbitPairing orbit_pairing(std::uint32_t r, int n) {
  check_unit(r, n);
  UnitDecomposition d = unit_decompose(reduce(r, n), n);
  if (!(d.sign == 1 && d.v != 0))
    throw ScopeError("orbit pairing requires a unit of the canonical plus shape (r = 1 mod 4, r != 1)");
  OrbitPairing out;
  out.r = reduce(r, n);
  out.n = n;
  OrbitPartition part = orbits(out.r, n, OrbitDomain::NonFixed);
  // Index of the orbit owning each element; negation then maps orbit to orbit
  // in O(1) lookups.
  std::vector<std::size_t> owner(pow2(n), part.orbits.size());
  for (std::size_t k = 0; k < part.orbits.size(); ++k)
    for (std::uint32_t e : part.orbits[k].elements) owner[e] = k;
  std::vector<bool> used(part.orbits.size(), false);
  for (std::size_t i = 0; i < part.orbits.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const Orbit& first = part.orbits[i];
    std::uint32_t neg_rep = neg_mod(first.rep(), n);
    std::size_t j = owner[neg_rep];
    if (j >= part.orbits.size())
      throw ContradictionError("negated orbit missing from partition");
    if (j == i)
      throw ContradictionError(
          "multiplication orbit meets its own negation; excluded for canonical plus units");
    if (used[j]) throw ContradictionError("orbit pairing is not a perfect matching");
    used[j] = true;
    OrbitPairing::Pair pair;
    bool first_is_kept = first.rep() < part.orbits[j].rep();
    pair.kept = first_is_kept ? first : part.orbits[j];
    pair.negated = first_is_kept ? part.orbits[j] : first;
    pair.rep = pair.kept.rep();
    out.pairs.push_back(std::move(pair));
  }
  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const auto& x, const auto& y) { return x.rep < y.rep; });
  return out;
}

}  // namespace permlike
