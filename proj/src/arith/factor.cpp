#include "gfe/arith/factor.hpp"

#include <algorithm>
#include <optional>

namespace gfe::arith {

namespace {

UPoly from_ints(const std::vector<Int>& v) {
  std::vector<Rat> c;
  for (auto& x : v) c.emplace_back(x);
  return UPoly(std::move(c));
}

std::optional<Rat> find_rational_root(const UPoly& f) {
  auto g = f.primitive_integer();
  if (g.front() == 0) return Rat(0);
  auto ps = positive_divisors(g.front());
  auto qs = positive_divisors(g.back());
  for (auto& q : qs)
    for (auto& p : ps)
      for (int sign : {1, -1}) {
        Rat r(p * sign, q);
        r.canonicalize();
        if (is_zero(f.eval(r))) return r;
      }
  return std::nullopt;
}

/* Splits a squarefree primitive quartic without rational roots into two
   quadratics when possible: (a x^2 + b x + c)(d x^2 + e x + g). */
std::optional<std::pair<UPoly, UPoly>> split_quadratics(const UPoly& f) {
  auto F = f.primitive_integer();
  const Int& A = F[4];
  const Int& F3 = F[3];
  const Int& F2 = F[2];
  const Int& F1 = F[1];
  const Int& F0 = F[0];
  auto check = [&](const Int& a, const Int& b, const Int& c, const Int& d, const Int& e,
                   const Int& g) -> std::optional<std::pair<UPoly, UPoly>> {
    UPoly p = from_ints({c, b, a}), q = from_ints({g, e, d});
    if (p * q == from_ints(F)) return std::make_pair(p.monic(), q.monic());
    return std::nullopt;
  };
  for (auto& a : positive_divisors(A)) {
    Int d = A / a;
    for (auto& cabs : positive_divisors(F0))
      for (int sign : {1, -1}) {
        Int c = cabs * sign;
        Int g = F0 / c;
        Int det = d * c - a * g;
        if (det != 0) {
          Int bn = F3 * c - a * F1, en = d * F1 - g * F3;
          if (!mpz_divisible_p(bn.get_mpz_t(), det.get_mpz_t()) ||
              !mpz_divisible_p(en.get_mpz_t(), det.get_mpz_t()))
            continue;
          if (auto r = check(a, Int(bn / det), c, d, Int(en / det), g)) return r;
        } else {
          // b e = P and d b + a e = F3, so d b^2 - F3 b + a P = 0.
          Int P = F2 - a * g - c * d;
          Int disc = F3 * F3 - 4 * d * a * P;
          if (disc < 0 || !is_square(disc)) continue;
          Int sq = iroot_floor(disc, 2);
          for (int s : {1, -1}) {
            Int num = F3 + s * sq;
            Int den = 2 * d;
            if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) continue;
            Int b = num / den;
            Int en = F3 - d * b;
            if (!mpz_divisible_p(en.get_mpz_t(), a.get_mpz_t())) continue;
            if (auto r = check(a, b, c, d, Int(en / a), g)) return r;
          }
        }
      }
  }
  return std::nullopt;
}

void factor_squarefree(const UPoly& f, int mult, std::vector<std::pair<UPoly, int>>& out) {
  UPoly g = f.monic();
  while (g.degree() >= 1) {
    if (g.degree() == 1) {
      out.emplace_back(g, mult);
      return;
    }
    auto r = find_rational_root(g);
    if (r) {
      UPoly lin = UPoly::linear_root(*r);
      out.emplace_back(lin, mult);
      g = divmod(g, lin).first.monic();
      continue;
    }
    if (g.degree() == 4) {
      if (auto pq = split_quadratics(g)) {
        out.emplace_back(pq->first, mult);
        out.emplace_back(pq->second, mult);
        return;
      }
    }
    out.emplace_back(g, mult);
    return;
  }
}

}  // namespace

Factorization factor_deg_le4(const UPoly& f) {
  if (f.is_zero()) throw ArithError("factor_deg_le4 of zero");
  if (f.degree() > 4) throw ArithError("factor_deg_le4 requires degree <= 4");
  Factorization fac{f.leading(), {}};
  // Yun squarefree decomposition.
  UPoly a = f.monic();
  if (a.degree() >= 1) {
    UPoly b = gcd(a, a.derivative());
    UPoly c = divmod(a, b).first;
    UPoly d = divmod(a.derivative(), b).first - c.derivative();
    int i = 1;
    while (c.degree() >= 1) {
      UPoly g = gcd(c, d);
      factor_squarefree(g, i, fac.factors);
      c = divmod(c, g).first;
      d = divmod(d, g).first - c.derivative();
      ++i;
    }
  }
  std::stable_sort(fac.factors.begin(), fac.factors.end(), [](const auto& x, const auto& y) {
    if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
    return x.first.coeffs() < y.first.coeffs();
  });
  return fac;
}

bool is_irreducible_deg_le4(const UPoly& f) {
  if (f.degree() < 1) return false;
  auto fac = factor_deg_le4(f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

UPoly expand(const Factorization& fac) {
  UPoly r = UPoly::constant(fac.unit);
  for (auto& [p, m] : fac.factors)
    for (int i = 0; i < m; ++i) r = r * p;
  return r;
}

}  // namespace gfe::arith
