#include "gfe/arith/rational.hpp"

#include <algorithm>

namespace gfe::arith {

Rat parse_rat(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ArithError("empty rational literal");
  if (s[0] == '+') s.erase(0, 1);
  Rat r;
  if (r.set_str(s, 10) != 0) throw ArithError("bad rational literal: " + std::string(text));
  if (r.get_den() == 0) throw ArithError("zero denominator: " + std::string(text));
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(10); }
std::string to_string(const Int& n) { return n.get_str(10); }

Int abs_int(const Int& n) { return n < 0 ? Int(-n) : n; }

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat pow_rat(const Rat& base, long e) {
  if (e < 0) {
    if (is_zero(base)) throw ArithError("zero to a negative power");
    return pow_rat(Rat(1) / base, -e);
  }
  Rat r(pow_int(base.get_num(), static_cast<unsigned long>(e)),
        pow_int(base.get_den(), static_cast<unsigned long>(e)));
  r.canonicalize();
  return r;
}

Int iroot_floor(const Int& a, unsigned long n) {
  if (a < 0) throw ArithError("iroot_floor of negative");
  Int r;
  mpz_root(r.get_mpz_t(), a.get_mpz_t(), n);
  return r;
}

std::optional<Int> exact_root(const Int& a, unsigned long n) {
  if (a < 0) {
    if (n % 2 == 0) return std::nullopt;
    auto r = exact_root(Int(-a), n);
    if (!r) return std::nullopt;
    return Int(-*r);
  }
  Int r;
  if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), n) != 0) return r;
  return std::nullopt;
}

std::optional<Rat> exact_root(const Rat& a, unsigned long n) {
  auto num = exact_root(a.get_num(), n);
  if (!num) return std::nullopt;
  auto den = exact_root(a.get_den(), n);
  if (!den) return std::nullopt;
  Rat r(*num, *den);
  r.canonicalize();
  return r;
}

bool is_cube(const Rat& a) { return exact_root(a, 3).has_value(); }

bool is_square(const Int& a) { return a >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0; }

long valuation(const Int& n, const Int& p) {
  if (n == 0) throw ArithError("valuation of zero");
  Int m = abs_int(n);
  long v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

long valuation(const Rat& r, const Int& p) {
  return valuation(r.get_num(), p) - valuation(r.get_den(), p);
}

std::vector<std::pair<Int, unsigned>> factor_small(Int n) {
  std::vector<std::pair<Int, unsigned>> out;
  n = abs_int(n);
  if (n <= 1) return out;
  for (Int d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<Int> positive_divisors(const Int& n) {
  std::vector<Int> divs{1};
  for (auto& [p, e] : factor_small(n)) {
    std::size_t cur = divs.size();
    Int pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < cur; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

Int cube_class_representative(const Rat& a) {
  if (is_zero(a)) throw ArithError("cube class of zero");
  Int rep = 1;
  auto fold = [&](const Int& n, bool inverse) {
    for (auto& [p, e] : factor_small(n)) {
      unsigned r = e % 3;
      if (inverse) r = (3 - r) % 3;
      rep *= pow_int(p, r);
    }
  };
  fold(a.get_num(), false);
  fold(a.get_den(), true);
  return rep;
}

bool is_probable_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

Int mod_pos(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int mod_inverse(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw ArithError("not invertible modulo " + to_string(m));
  return r;
}

Int rat_mod(const Rat& a, const Int& m) {
  return mod_pos(a.get_num() * mod_inverse(a.get_den(), m), m);
}

Int symmetric_residue(const Int& a, const Int& m) {
  Int r = mod_pos(a, m);
  if (2 * r > m) r -= m;
  return r;
}

}  // namespace gfe::arith
