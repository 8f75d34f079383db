#include "gfe/ec/torsion.hpp"

#include <algorithm>
#include <numeric>

namespace gfe::ec {

std::string TorsionGroup::structure() const {
  if (invariants.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < invariants.size(); ++i) {
    if (i) s += " x ";
    s += "Z/" + std::to_string(invariants[i]) + "Z";
  }
  return s;
}

IntegralShortModel integral_short_model(const CurveQ& E) {
  auto iso = to_short_form(E);
  CurveQ S = iso.apply(E);
  Int D = arith::lcm(Int(S.a4().get_den()), Int(S.a6().get_den()));
  Int A = Int(Rat(S.a4() * Rat(D * D * D * D)).get_num()), B = Int(Rat(S.a6() * Rat(D * D * D * D * D * D)).get_num());
  // strip l^4 | A, l^6 | B for small l
  Int u = 1;
  for (long l = 2; l < 1000; ++l) {
    if (!arith::is_probable_prime(Int(l))) continue;
    Int l4 = Int(l) * l * l * l, l6 = l4 * l * l;
    auto divides = [](const Int& n, const Int& d) { return n == 0 || mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()); };
    while (divides(A, l4) && divides(B, l6)) {
      A /= l4;
      B /= l6;
      u *= l;
    }
  }
  auto scale = WeierstrassIso<Rat>{Rat(u) / Rat(D), Rat(0), Rat(0), Rat(0)};
  auto total = iso.then(scale);
  return {total.apply(E), total};
}

namespace {

std::vector<Int> integer_roots_cubic(const Int& A, const Int& c) {
  // x^3 + A x + c
  std::vector<Int> roots;
  auto test = [&](const Int& x) {
    if (x * x * x + A * x + c == 0) roots.push_back(x);
  };
  if (c == 0) {
    test(Int(0));
    if (auto r = arith::exact_root(Int(-A), 2); r && *r != 0) {
      test(*r);
      test(Int(-*r));
    }
  } else {
    for (const auto& d : arith::positive_divisors(arith::abs_int(c))) {
      test(d);
      test(Int(-d));
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

long finite_order(const CurveQ& E, const PointQ& P, long bound) {
  PointQ Q = P;
  for (long n = 1; n <= bound; ++n) {
    if (Q.is_infinity()) return n;
    Q = E.add(Q, P);
  }
  return 0;
}

CurveFq reduce_rational(const CurveQ& E, long p) {
  auto F = arith::FiniteField::prime_field(p);
  auto r = [&](const Rat& a) { return FqElem::from_int(F, arith::rat_mod(a, Int(p)).get_si()); };
  return CurveFq(r(E.a1()), r(E.a2()), r(E.a3()), r(E.a4()), r(E.a6()));
}

}  // namespace

TorsionGroup torsion_over_Q(const CurveQ& E, std::size_t reduction_primes) {
  auto model = integral_short_model(E);
  const CurveQ& S = model.curve;
  Int A = S.a4().get_num(), B = S.a6().get_num();
  Int disc = 4 * A * A * A + 27 * B * B;

  std::vector<PointQ> tors{PointQ::at_infinity()};
  std::vector<Int> ys{Int(0)};
  for (const auto& d : arith::positive_divisors(arith::abs_int(disc)))
    if (auto y = arith::exact_root(d, 2)) ys.push_back(*y);
  for (const auto& y : ys)
    for (const auto& x : integer_roots_cubic(A, B - y * y)) {
      for (int sgn : {1, -1}) {
        if (y == 0 && sgn < 0) continue;
        PointQ P = PointQ::affine(Rat(x), Rat(sgn * y));
        if (finite_order(S, P, 12)) tors.push_back(P);
      }
    }

  TorsionGroup g;
  Int D = S.discriminant().get_num();
  std::int64_t gcd = 0;
  for (long p = 3; g.primes.size() < reduction_primes; p += 2) {
    if (!arith::is_probable_prime(Int(p)) || D % p == 0) continue;
    g.primes.push_back(p);
    gcd = std::gcd(gcd, count_points(reduce_rational(S, p)));
  }
  g.reduction_gcd = gcd;
  if (gcd % static_cast<std::int64_t>(tors.size()) != 0) throw EcError("torsion search disagrees with reduction bound");

  long n = static_cast<long>(tors.size());
  long two_torsion = 0;
  for (const auto& P : tors)
    if (!P.is_infinity() && arith::is_zero(P.y)) ++two_torsion;
  if (two_torsion == 3) g.invariants = {2, n / 2};
  else if (n > 1) g.invariants = {n};
  for (const auto& P : tors) g.points.push_back(model.iso.backward(P));
  for (std::size_t i = 1; i < tors.size() && g.generators.empty(); ++i)
    if (finite_order(S, tors[i], 12) == (g.invariants.empty() ? 1 : g.invariants.back())) g.generators.push_back(g.points[i]);
  if (g.invariants.size() == 2)
    for (std::size_t i = 1; i < tors.size(); ++i)
      if (arith::is_zero(tors[i].y)) {
        PointQ cand = g.points[i];
        bool in_cyclic = false;
        PointQ Q = g.generators[0];
        for (long k = 0; k < n / 2; ++k, Q = E.add(Q, g.generators[0]))
          if (Q == cand) in_cyclic = true;
        if (!in_cyclic) {
          g.generators.insert(g.generators.begin(), cand);
          break;
        }
      }
  return g;
}

std::int64_t torsion_bound_over_K(const CurveK& E, const std::vector<long>& primes) {
  std::int64_t g = 0;
  for (long p : primes)
    for (const auto& P : primes_above(E.a6().field(), p)) {
      try {
        g = std::gcd(g, count_points(reduce_curve(E, P)));
      } catch (const BadPrime&) {
      }
    }
  return g;
}

bool KTorsionReport::trivial() const {
  std::int64_t b = bound;
  while (b % 2 == 0) b /= 2;
  while (b % 3 == 0) b /= 3;
  return b == 1 && !has_2_torsion && !has_3_torsion;
}

KTorsionReport torsion_over_K(const CurveK& E, const std::vector<long>& primes) {
  if (!E.is_short() || !field_is_zero(E.a4())) throw EcError("torsion_over_K expects y^2 = x^3 + B");
  const NfElem& B = E.a6();
  KTorsionReport r;
  r.bound = torsion_bound_over_K(E, primes);
  r.has_2_torsion = arith::nth_root(-B, 3).has_value();
  bool x0 = arith::nth_root(B, 2).has_value();
  bool x1 = arith::nth_root(B.from_int_like(-4) * B, 3).has_value() && arith::nth_root(B.from_int_like(-3) * B, 2).has_value();
  r.has_3_torsion = x0 || x1;
  return r;
}

}  // namespace gfe::ec
