#include "gfe/chabauty/formal.hpp"

#include <mutex>

namespace gfe::chabauty {

namespace {

std::vector<Rat> rmul(const std::vector<Rat>& a, const std::vector<Rat>& b, std::size_t len) {
  std::vector<Rat> c(len, Rat(0));
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

std::vector<Rat> rinv(const std::vector<Rat>& a, std::size_t len) {
  std::vector<Rat> r(len, Rat(0));
  r[0] = Rat(1) / a[0];
  for (std::size_t n = 1; n < len; ++n) {
    Rat s = 0;
    for (std::size_t k = 1; k <= n && k < a.size(); ++k) s += a[k] * r[n - k];
    r[n] = -s * r[0];
  }
  return r;
}

}  // namespace

USeries invariant_differential(const CurveQp& E, int terms) {
  std::size_t L = static_cast<std::size_t>(terms) + 1;
  const auto& K = E.a6().field();
  auto zero = [&] { return USeries(L, PadicElem::zero(K)); };
  auto shift = [&](const USeries& s, std::size_t k) {
    USeries r = zero();
    for (std::size_t i = 0; i + k < L && i < s.size(); ++i) r[i + k] = s[i];
    return r;
  };
  auto add = [&](USeries a, const USeries& b, const PadicElem& c) {
    for (std::size_t i = 0; i < L; ++i) a[i] += c * b[i];
    return a;
  };
  // u = w / z^3 = 1 + a1 z u + a2 z^2 u + a3 z^3 u^2 + a4 z^4 u^2 + a6 z^6 u^3
  USeries u = zero();
  u[0] = PadicElem::from_int(K, 1);
  for (std::size_t it = 0; it < L; ++it) {
    USeries u2 = useries_mul(u, u, L), u3 = useries_mul(u2, u, L);
    USeries n = zero();
    n[0] = PadicElem::from_int(K, 1);
    n = add(n, shift(u, 1), E.a1());
    n = add(n, shift(u, 2), E.a2());
    n = add(n, shift(u2, 3), E.a3());
    n = add(n, shift(u2, 4), E.a4());
    n = add(n, shift(u3, 6), E.a6());
    u = n;
  }
  // omega / dz = (2u + z u') / (u (2 - a1 z - a3 z^3 u))
  USeries num = zero();
  for (std::size_t i = 0; i < L; ++i) num[i] = PadicElem::from_int(K, static_cast<long>(2 + i)) * u[i];
  USeries d = zero();
  d[0] = PadicElem::from_int(K, 2);
  d = add(d, shift(USeries{PadicElem::from_int(K, 1)}, 1), -E.a1());
  d = add(d, shift(u, 3), -E.a3());
  USeries den = useries_mul(u, d, L);
  return useries_mul(num, useries_inverse(den, L), L);
}

PadicElem formal_log(const CurveQp& E, const PointQp& P, int terms) {
  const auto& K = E.a6().field();
  if (P.is_infinity()) return PadicElem::zero(K);
  if (!P.x.is_zero() && P.x.valuation() >= 0) throw ec::EcError("formal_log: point does not reduce to O");
  PadicElem z = -(P.x / P.y);
  auto c = invariant_differential(E, terms);
  PadicElem s = PadicElem::zero(K), zk = z;
  for (int k = 0; k < terms; ++k) {
    s += c[static_cast<std::size_t>(k)] * zk / PadicElem::from_int(K, k + 1);
    zk *= z;
  }
  return s;
}

const JZeroFormalGroup& JZeroFormalGroup::get(int terms) {
  static std::mutex mu;
  static JZeroFormalGroup cache;
  std::lock_guard<std::mutex> lock(mu);
  std::size_t L = static_cast<std::size_t>(terms) + 1;
  if (cache.log_coeff.size() >= L) return cache;
  // w-hat(t) = 1 + t w-hat^3
  std::vector<Rat> w(L, Rat(0));
  w[0] = 1;
  for (std::size_t it = 0; it < L; ++it) {
    auto w3 = rmul(rmul(w, w, L), w, L);
    std::vector<Rat> n(L, Rat(0));
    n[0] = 1;
    for (std::size_t i = 0; i + 1 < L; ++i) n[i + 1] = w3[i];
    w = n;
  }
  // omega / dz = 1 + 3 t w' / w
  std::vector<Rat> tw(L, Rat(0));
  for (std::size_t i = 1; i < L; ++i) tw[i] = Rat(static_cast<long>(3 * i)) * w[i];
  auto d = rmul(tw, rinv(w, L), L);
  d[0] += 1;
  std::vector<Rat> lg(L);
  for (std::size_t k = 0; k < L; ++k) lg[k] = d[k] / Rat(static_cast<long>(6 * k + 1));
  // exp(S) = S phi(S^6) with phi = 1 / lambda(s phi^6), lambda(t) = sum lg_k t^k
  std::vector<Rat> phi(L, Rat(0));
  phi[0] = 1;
  for (std::size_t it = 0; it < L; ++it) {
    auto p2 = rmul(phi, phi, L);
    auto p6 = rmul(rmul(p2, p2, L), p2, L);
    std::vector<Rat> arg(L, Rat(0));
    for (std::size_t i = 0; i + 1 < L; ++i) arg[i + 1] = p6[i];
    std::vector<Rat> lam(L, Rat(0));
    for (std::size_t k = L; k-- > 0;) {
      lam = rmul(lam, arg, L);
      lam[0] += lg[k];
    }
    phi = rinv(lam, L);
  }
  cache.log_coeff = lg;
  cache.exp_coeff = phi;
  cache.wcoeff = w;
  return cache;
}

int series_degree_for(long p, long target) {
  int D = 1;
  while (static_cast<double>(D + 1) - static_cast<double>(D) / static_cast<double>(p - 1) < static_cast<double>(target)) ++D;
  return D;
}

namespace {

USeries sparse_series(const std::vector<Rat>& coeff, const PadicElem& B, int degree) {
  const auto& K = B.field();
  USeries s(static_cast<std::size_t>(degree) + 1, PadicElem::zero(K));
  PadicElem Bk = PadicElem::from_int(K, 1);
  for (std::size_t k = 0; 6 * k + 1 <= static_cast<std::size_t>(degree); ++k) {
    s[6 * k + 1] = PadicElem::from_rat(K, coeff[k]) * Bk;
    Bk *= B;
  }
  return s;
}

}  // namespace

USeries jzero_log_series(const PadicElem& B, int degree) {
  return sparse_series(JZeroFormalGroup::get(degree / 6 + 1).log_coeff, B, degree);
}

USeries jzero_exp_series(const PadicElem& B, int degree) {
  return sparse_series(JZeroFormalGroup::get(degree / 6 + 1).exp_coeff, B, degree);
}

PadicElem jzero_log(const PadicElem& B, const PadicElem& z) {
  const auto& K = B.field();
  if (z.is_zero()) return z;
  if (z.valuation() < 1) throw ec::EcError("formal log outside the kernel of reduction");
  int D = series_degree_for(K->p(), K->precision() + z.valuation());
  auto s = jzero_log_series(B, D);
  PadicElem z6 = z.pow(6), acc = PadicElem::zero(K);
  for (std::size_t k = s.size(); k-- > 0;) {
    if (k % 6 != 1) continue;
    acc = acc * z6 + s[k];
  }
  return acc * z;
}

}  // namespace gfe::chabauty
