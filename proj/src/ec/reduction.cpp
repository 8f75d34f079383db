#include "gfe/ec/reduction.hpp"

#include <map>
#include <set>

#include "gfe/arith/number_field.hpp"

namespace gfe::ec {

using arith::ModPoly;
using arith::PadicElem;

std::string KPrime::label() const {
  std::string s = "(" + std::to_string(p) + ", ";
  for (std::size_t i = h.size(); i-- > 0;) {
    s += arith::to_string(h[i]);
    if (i) s += " ";
  }
  return s + ")";
}

std::vector<KPrime> primes_above(const FieldPtr& K, long p, int precision) {
  const auto& m = K->min_poly();
  for (int i = 0; i <= m.degree(); ++i)
    if (!arith::is_integer(m.coeff(i))) throw BadPrime("minimal polynomial is not integral");
  if (m.coeff(m.degree()) != 1) throw BadPrime("minimal polynomial is not monic");
  if (p == 2) throw BadPrime("p = 2 is not supported");
  std::vector<ModPoly> factors;
  try {
    factors = arith::factor_mod_p_deg_le4(m, p);
  } catch (const arith::ArithError&) {
    throw BadPrime("minimal polynomial not squarefree mod " + std::to_string(p));
  }
  int n = precision + arith::LocalField::kGuardDigits;
  auto lifted = arith::hensel_lift_factorization(m, factors, p, n);
  std::vector<KPrime> out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    KPrime P;
    P.p = p;
    P.index = static_cast<int>(i);
    P.h = factors[i];
    P.f = static_cast<int>(factors[i].size()) - 1;
    P.residue = arith::FiniteField::create(p, factors[i]);
    P.completion = arith::LocalField::unramified(p, lifted[i], precision);
    out.push_back(std::move(P));
  }
  return out;
}

PadicElem embed_at(const NfElem& a, const KPrime& P) { return arith::embed(a, P.completion); }

FqElem reduce(const NfElem& a, const KPrime& P) {
  PadicElem e = embed_at(a, P);
  if (!e.is_zero() && e.valuation() < 0) throw BadPrime("element not integral at " + P.label());
  if (e.is_zero()) return FqElem::from_int(P.residue, 0);
  return FqElem::from_coords(P.residue, e.residue());
}

CurveQp embed_curve(const CurveK& E, const KPrime& P) {
  return CurveQp(embed_at(E.a1(), P), embed_at(E.a2(), P), embed_at(E.a3(), P), embed_at(E.a4(), P), embed_at(E.a6(), P));
}

PointQp embed_point(const PointK& Q, const KPrime& P) {
  if (Q.infinity) return PointQp::at_infinity();
  return PointQp::affine(embed_at(Q.x, P), embed_at(Q.y, P));
}

CurveFq reduce_curve(const CurveK& E, const KPrime& P) {
  PadicElem d = embed_at(E.discriminant(), P);
  if (d.valuation() != 0) throw BadPrime("bad reduction at " + P.label());
  return CurveFq(reduce(E.a1(), P), reduce(E.a2(), P), reduce(E.a3(), P), reduce(E.a4(), P), reduce(E.a6(), P));
}

PointFq reduce_point(const PointQp& Q, const KPrime& P) {
  if (Q.infinity) return PointFq::at_infinity();
  if (!Q.x.is_zero() && Q.x.valuation() < 0) return PointFq::at_infinity();
  auto red = [&](const PadicElem& e) {
    if (e.is_zero()) return FqElem::from_int(P.residue, 0);
    return FqElem::from_coords(P.residue, e.residue());
  };
  return PointFq::affine(red(Q.x), red(Q.y));
}

PointFq reduce_point(const PointK& Q, const KPrime& P) { return reduce_point(embed_point(Q, P), P); }

namespace {

struct SquareRoots {
  std::vector<std::int64_t> root;  // index of a square root, or -1
};

SquareRoots square_roots(const FqPtr& F) {
  SquareRoots s;
  s.root.assign(static_cast<std::size_t>(F->order()), -1);
  for (std::int64_t i = 0; i < F->order(); ++i) {
    FqElem y = FqElem::from_index(F, i);
    auto k = static_cast<std::size_t>((y * y).index());
    if (s.root[k] < 0) s.root[k] = i;
  }
  return s;
}

}  // namespace

std::vector<PointFq> all_points(const CurveFq& E) {
  const auto& F = E.a6().field();
  if (F->p() == 2) throw BadPrime("characteristic 2");
  auto sq = square_roots(F);
  std::vector<PointFq> pts{PointFq::at_infinity()};
  FqElem two = FqElem::from_int(F, 2), four = FqElem::from_int(F, 4);
  for (std::int64_t i = 0; i < F->order(); ++i) {
    FqElem x = FqElem::from_index(F, i);
    FqElem lin = E.a1() * x + E.a3();
    FqElem rhs = x * x * x + E.a2() * x * x + E.a4() * x + E.a6();
    FqElem D = lin * lin + four * rhs;
    std::int64_t r = sq.root[static_cast<std::size_t>(D.index())];
    if (r < 0) continue;
    FqElem s = FqElem::from_index(F, r);
    pts.push_back(PointFq::affine(x, (s - lin) / two));
    if (!s.is_zero()) pts.push_back(PointFq::affine(x, (-s - lin) / two));
  }
  return pts;
}

std::int64_t count_points(const CurveFq& E) {
  const auto& F = E.a6().field();
  if (F->p() == 2) throw BadPrime("characteristic 2");
  std::int64_t q = F->order();
  std::uint64_t half = static_cast<std::uint64_t>((q - 1) / 2);
  std::int64_t n = 1;
  FqElem four = FqElem::from_int(F, 4);
  for (std::int64_t i = 0; i < q; ++i) {
    FqElem x = FqElem::from_index(F, i);
    FqElem lin = E.a1() * x + E.a3();
    FqElem D = lin * lin + four * (x * x * x + E.a2() * x * x + E.a4() * x + E.a6());
    if (D.is_zero()) n += 1;
    else if (D.pow(half) == D.one_like()) n += 2;
  }
  return n;
}

std::int64_t point_order(const CurveFq& E, const PointFq& Q, std::int64_t N) {
  std::int64_t n = N;
  if (!E.mul(n, Q).is_infinity()) throw EcError("point order does not divide the given multiple");
  for (auto& [l, e] : arith::factor_small(Int(static_cast<long>(N)))) {
    long lp = l.get_si();
    for (unsigned i = 0; i < e; ++i) {
      if (n % lp == 0 && E.mul(n / lp, Q).is_infinity()) n /= lp;
      else break;
    }
  }
  return n;
}

namespace {

using Key = std::pair<std::array<std::int64_t, 4>, std::array<std::int64_t, 4>>;
Key key_of(const PointFq& P) {
  if (P.is_infinity()) return {{-1, -1, -1, -1}, {-1, -1, -1, -1}};
  return {P.x.coords(), P.y.coords()};
}

/* m-primary part of E(F_q) and its image under multiplication by m (m prime). */
std::set<Key> primary_multiples(const CurveFq& E, long m, std::int64_t N, std::int64_t& cofactor) {
  std::int64_t n = N, size = 1;
  while (n % m == 0) {
    n /= m;
    size *= m;
  }
  cofactor = n;
  std::vector<PointFq> group{PointFq::at_infinity()};
  std::set<Key> seen{key_of(group[0])};
  for (const auto& R : all_points(E)) {
    if (static_cast<std::int64_t>(group.size()) == size) break;
    PointFq T = E.mul(n, R);
    if (seen.count(key_of(T))) continue;
    // extend the subgroup by T
    std::vector<PointFq> coset_base = group;
    PointFq jT = T;
    while (!seen.count(key_of(jT))) {
      for (const auto& g : coset_base) {
        PointFq h = E.add(g, jT);
        if (seen.insert(key_of(h)).second) group.push_back(h);
      }
      jT = E.add(jT, T);
    }
  }
  if (static_cast<std::int64_t>(group.size()) != size) throw EcError("primary subgroup enumeration failed");
  std::set<Key> out;
  for (const auto& g : group) out.insert(key_of(E.mul(m, g)));
  return out;
}

}  // namespace

bool in_multiple_subgroup(const CurveFq& E, const PointFq& Q, long m, std::int64_t N) {
  std::int64_t n = 1;
  auto multiples = primary_multiples(E, m, N, n);
  return multiples.count(key_of(E.mul(n, Q))) > 0;
}

std::vector<SieveWitness> non_divisibility_sieve(const CurveK& E, const std::vector<PointK>& points, long m,
                                                 const std::vector<long>& primes) {
  struct Local {
    long p;
    int index;
    CurveFq Ebar;
    std::vector<PointFq> gens;
    std::set<Key> multiples;  // m times the m-primary part
    std::int64_t cofactor;
    bool trivial;
  };
  std::vector<Local> locs;
  for (long p : primes) {
    for (const auto& P : primes_above(E.a6().field(), p)) {
      Local L{p, P.index, reduce_curve(E, P), {}, {}, 1, false};
      for (const auto& g : points) L.gens.push_back(reduce_point(g, P));
      std::int64_t N = count_points(L.Ebar);
      L.trivial = (N % m != 0);
      if (!L.trivial) L.multiples = primary_multiples(L.Ebar, m, N, L.cofactor);
      locs.push_back(std::move(L));
    }
  }
  std::size_t r = points.size();
  std::vector<SieveWitness> out;
  std::vector<long> e(r, 0);
  std::int64_t total = 1;
  for (std::size_t i = 0; i < r; ++i) total *= m;
  for (std::int64_t idx = 1; idx < total; ++idx) {
    std::int64_t v = idx;
    for (std::size_t i = 0; i < r; ++i) {
      e[i] = v % m;
      v /= m;
    }
    std::size_t first = 0;
    while (e[first] == 0) ++first;
    if (e[first] != 1) continue;
    bool witnessed = false;
    for (const auto& L : locs) {
      if (L.trivial) continue;
      PointFq S = PointFq::at_infinity();
      for (std::size_t i = 0; i < r; ++i) S = L.Ebar.add(S, L.Ebar.mul(e[i], L.gens[i]));
      PointFq T = L.Ebar.mul(L.cofactor, S);
      bool divisible = L.multiples.count(key_of(T)) > 0;
      if (!divisible) {
        out.push_back({e, L.p, L.index});
        witnessed = true;
        break;
      }
    }
    if (!witnessed) {
      std::string s;
      for (auto c : e) s += std::to_string(c) + " ";
      throw Inconclusive("combination ( " + s + ") is divisible at every supplied prime");
    }
  }
  return out;
}

}  // namespace gfe::ec
