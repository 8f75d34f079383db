#include "gfe/arith/modp.hpp"

#include <algorithm>

namespace gfe::arith {

ModPoly modpoly_trim(ModPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

int modpoly_degree(const ModPoly& a) {
  int d = static_cast<int>(a.size()) - 1;
  while (d >= 0 && a[static_cast<std::size_t>(d)] == 0) --d;
  return d;
}

ModPoly modpoly_reduce(const UPoly& f, const Int& m) {
  ModPoly out;
  for (auto& c : f.coeffs()) out.push_back(rat_mod(c, m));
  return modpoly_trim(out);
}

ModPoly modpoly_add(const ModPoly& a, const ModPoly& b, const Int& m) {
  ModPoly r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  for (auto& x : r) x = mod_pos(x, m);
  return modpoly_trim(r);
}

ModPoly modpoly_sub(const ModPoly& a, const ModPoly& b, const Int& m) {
  ModPoly nb = b;
  for (auto& x : nb) x = mod_pos(Int(-x), m);
  return modpoly_add(a, nb, m);
}

ModPoly modpoly_mul(const ModPoly& a, const ModPoly& b, const Int& m) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  for (auto& x : r) x = mod_pos(x, m);
  return modpoly_trim(r);
}

void modpoly_divmod_monic(const ModPoly& a, const ModPoly& b, const Int& m, ModPoly& q, ModPoly& r) {
  int db = modpoly_degree(b);
  if (db < 0 || b[static_cast<std::size_t>(db)] != 1) throw ArithError("modpoly_divmod_monic: divisor not monic");
  r = modpoly_trim(a);
  int da = modpoly_degree(r);
  q.assign(static_cast<std::size_t>(std::max(da - db + 1, 0)), Int(0));
  for (int i = da; i >= db; --i) {
    Int c = r[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<std::size_t>(i - db + j)];
      slot = mod_pos(slot - c * b[static_cast<std::size_t>(j)], m);
    }
  }
  r = modpoly_trim(r);
  q = modpoly_trim(q);
}

Int modpoly_eval(const ModPoly& a, const Int& x, const Int& m) {
  Int acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = mod_pos(acc * x + *it, m);
  return acc;
}

std::vector<Int> roots_mod_p(const ModPoly& f, long p) {
  std::vector<Int> out;
  Int P = p;
  for (long x = 0; x < p; ++x)
    if (modpoly_eval(f, Int(x), P) == 0) out.emplace_back(x);
  return out;
}

std::vector<ModPoly> factor_mod_p_deg_le4(const UPoly& f, long p) {
  Int P = p;
  ModPoly g = modpoly_reduce(f, P);
  int d = modpoly_degree(g);
  if (d < 1) throw ArithError("factor_mod_p: constant polynomial");
  Int lead_inv = mod_inverse(g[static_cast<std::size_t>(d)], P);
  for (auto& c : g) c = mod_pos(c * lead_inv, P);
  std::vector<ModPoly> out;
  auto divide_out = [&](const ModPoly& h) {
    ModPoly q, r;
    modpoly_divmod_monic(g, h, P, q, r);
    if (!r.empty()) return false;
    out.push_back(h);
    g = q;
    ModPoly q2, r2;
    modpoly_divmod_monic(g, h, P, q2, r2);
    if (r2.empty() && modpoly_degree(g) >= 1) throw ArithError("factor_mod_p: not squarefree mod p");
    return true;
  };
  for (long a = 0; a < p && modpoly_degree(g) >= 1; ++a) divide_out(ModPoly{mod_pos(Int(-a), P), Int(1)});
  if (modpoly_degree(g) >= 4) {
    for (long b = 0; b < p && modpoly_degree(g) >= 4; ++b)
      for (long a = 0; a < p && modpoly_degree(g) >= 4; ++a) divide_out(ModPoly{Int(a), Int(b), Int(1)});
  }
  if (modpoly_degree(g) >= 1) out.push_back(g);
  std::sort(out.begin(), out.end(), [](const ModPoly& x, const ModPoly& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  });
  return out;
}

namespace {

/* s, t with s a + t b = 1 mod p for coprime monic a, b. */
void bezout_mod_p(const ModPoly& a, const ModPoly& b, const Int& p, ModPoly& s, ModPoly& t) {
  ModPoly r0 = a, r1 = b, s0{Int(1)}, s1{}, t0{}, t1{Int(1)};
  while (modpoly_degree(r1) >= 0) {
    int d1 = modpoly_degree(r1);
    Int inv = mod_inverse(r1[static_cast<std::size_t>(d1)], p);
    ModPoly monic_r1 = r1;
    for (auto& c : monic_r1) c = mod_pos(c * inv, p);
    ModPoly q, r;
    modpoly_divmod_monic(r0, monic_r1, p, q, r);
    for (auto& c : q) c = mod_pos(c * inv, p);
    ModPoly s2 = modpoly_sub(s0, modpoly_mul(q, s1, p), p);
    ModPoly t2 = modpoly_sub(t0, modpoly_mul(q, t1, p), p);
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  if (modpoly_degree(r0) != 0) throw ArithError("bezout_mod_p: factors not coprime");
  Int inv = mod_inverse(r0[0], p);
  s = s0;
  t = t0;
  for (auto& c : s) c = mod_pos(c * inv, p);
  for (auto& c : t) c = mod_pos(c * inv, p);
}

/* Lifts f = g h mod p (g, h monic coprime) to mod p^n by linear lifting. */
void lift_pair(const ModPoly& f, ModPoly& g, ModPoly& h, long p, int n) {
  Int P = p;
  ModPoly s, t;
  bezout_mod_p(g, h, P, s, t);
  Int pk = P;
  for (int k = 1; k < n; ++k) {
    Int pk1 = pk * P;
    ModPoly gh = modpoly_mul(g, h, pk1);
    ModPoly e = modpoly_sub(f, gh, pk1);
    for (auto& c : e) {
      if (!mpz_divisible_p(c.get_mpz_t(), pk.get_mpz_t())) throw ArithError("hensel: inconsistent lift");
      c = mod_pos(Int(c / pk), P);
    }
    e = modpoly_trim(e);
    ModPoly q, dg, dh;
    modpoly_divmod_monic(modpoly_mul(t, e, P), g, P, q, dg);
    modpoly_divmod_monic(modpoly_mul(s, e, P), h, P, q, dh);
    for (auto& c : dg) c *= pk;
    for (auto& c : dh) c *= pk;
    g = modpoly_add(g, dg, pk1);
    h = modpoly_add(h, dh, pk1);
    pk = pk1;
  }
}

}  // namespace

std::vector<ModPoly> hensel_lift_factorization(const UPoly& f, const std::vector<ModPoly>& factors, long p,
                                               int n) {
  Int P = p;
  Int pn = pow_int(P, static_cast<unsigned long>(n));
  ModPoly rest = modpoly_reduce(f, pn);
  std::vector<ModPoly> out;
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    ModPoly g = factors[i];
    ModPoly cof{Int(1)};
    for (std::size_t j = i + 1; j < factors.size(); ++j) cof = modpoly_mul(cof, factors[j], P);
    lift_pair(rest, g, cof, p, n);
    out.push_back(g);
    rest = cof;
  }
  out.push_back(rest);
  return out;
}

Int hensel_lift_root(const ModPoly& f, Int root, long p, int n) {
  Int P = p;
  Int pn = pow_int(P, static_cast<unsigned long>(n));
  ModPoly df;
  for (std::size_t i = 1; i < f.size(); ++i) df.push_back(mod_pos(f[i] * static_cast<long>(i), pn));
  if (mod_pos(modpoly_eval(df, root, P), P) == 0) throw ArithError("hensel_lift_root: root not simple");
  for (int k = 0; (1 << k) < 2 * n; ++k) {
    Int fx = modpoly_eval(f, root, pn);
    if (fx == 0) break;
    root = mod_pos(root - fx * mod_inverse(modpoly_eval(df, root, pn), pn), pn);
  }
  return root;
}

std::vector<Int> solve_mod_prime_power(std::vector<std::vector<Int>> v, std::vector<Int> w, const Int& q,
                                       const Int& M) {
  std::size_t n = v.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && mod_pos(v[piv][col], q) == 0) ++piv;
    if (piv == n) throw ArithError("solve_mod_prime_power: singular modulo q");
    std::swap(v[piv], v[col]);
    std::swap(w[piv], w[col]);
    Int inv = mod_inverse(v[col][col], M);
    for (std::size_t c = 0; c < n; ++c) v[col][c] = mod_pos(v[col][c] * inv, M);
    w[col] = mod_pos(w[col] * inv, M);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || v[r][col] == 0) continue;
      Int f = v[r][col];
      for (std::size_t c = 0; c < n; ++c) v[r][c] = mod_pos(v[r][c] - f * v[col][c], M);
      w[r] = mod_pos(w[r] - f * w[col], M);
    }
  }
  return w;
}

}  // namespace gfe::arith
