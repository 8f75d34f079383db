#include "gfe/arith/upoly.hpp"

#include <sstream>

namespace gfe::arith {

UPoly::UPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

void UPoly::trim() {
  while (!c_.empty() && arith::is_zero(c_.back())) c_.pop_back();
}

UPoly UPoly::constant(const Rat& c) { return UPoly(std::vector<Rat>{c}); }

UPoly UPoly::monomial(const Rat& c, int degree) {
  std::vector<Rat> v(static_cast<std::size_t>(degree) + 1, Rat(0));
  v.back() = c;
  return UPoly(std::move(v));
}

UPoly UPoly::linear_root(const Rat& r) { return UPoly(std::vector<Rat>{-r, Rat(1)}); }

Rat UPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return Rat(0);
  return c_[static_cast<std::size_t>(i)];
}

Rat UPoly::leading() const { return c_.empty() ? Rat(0) : c_.back(); }

Rat UPoly::eval(const Rat& x) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Rat> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return (Rat(1) / leading()) * *this;
}

std::vector<Int> UPoly::primitive_integer() const {
  Int den = 1;
  for (auto& c : c_) den = lcm(den, c.get_den());
  std::vector<Int> out;
  Int g = 0;
  for (auto& c : c_) {
    Rat v = c * den;
    out.push_back(v.get_num());
    g = gcd(g, v.get_num());
  }
  if (g == 0) return out;
  if (leading() < 0) g = -g;
  for (auto& v : out) v /= g;
  return out;
}

UPoly UPoly::operator-() const {
  std::vector<Rat> v = c_;
  for (auto& c : v) c = -c;
  return UPoly(std::move(v));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rat> v(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(v));
}

UPoly operator*(const Rat& c, const UPoly& a) {
  std::vector<Rat> v = a.c_;
  for (auto& x : v) x *= c;
  return UPoly(std::move(v));
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rat c = coeff(i);
    if (arith::is_zero(c)) continue;
    bool neg = c < 0;
    Rat a = neg ? Rat(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0 || a != 1) os << arith::to_string(a);
    if (i > 0) {
      if (a != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw ArithError("polynomial division by zero");
  std::vector<Rat> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<Rat> q(static_cast<std::size_t>(a.degree() - db + 1), Rat(0));
  Rat lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Rat c = r[static_cast<std::size_t>(i)] / lb;
    q[static_cast<std::size_t>(i - db)] = c;
    if (arith::is_zero(c)) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= c * b.coeff(j);
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Bezout xgcd(const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b;
  UPoly s0 = UPoly::constant(1), s1;
  UPoly t0, t1 = UPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    UPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rat inv = Rat(1) / r0.leading();
  return {inv * r0, inv * s0, inv * t0};
}

bool is_squarefree(const UPoly& f) {
  if (f.is_zero()) return false;
  return gcd(f, f.derivative()).degree() == 0;
}

Rat determinant(std::vector<std::vector<Rat>> m) {
  std::size_t n = m.size();
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && arith::is_zero(m[piv][col])) ++piv;
    if (piv == n) return Rat(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (arith::is_zero(m[r][col])) continue;
      Rat f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> m, std::vector<Rat> b) {
  std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && arith::is_zero(m[piv][col])) ++piv;
    if (piv == n) throw ArithError("singular linear system");
    std::swap(m[piv], m[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || arith::is_zero(m[r][col])) continue;
      Rat f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= m[i][i];
  return b;
}

std::vector<std::vector<Rat>> inverse_matrix(const std::vector<std::vector<Rat>>& m) {
  std::size_t n = m.size();
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rat> e(n, Rat(0));
    e[j] = 1;
    auto col = solve_linear(m, e);
    for (std::size_t i = 0; i < n; ++i) inv[i][j] = col[i];
  }
  return inv;
}

Rat resultant(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return Rat(0);
  int m = a.degree(), n = b.degree();
  if (m == 0 && n == 0) return Rat(1);
  std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Rat>> s(size, std::vector<Rat>(size, Rat(0)));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + j)] = a.coeff(m - j);
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j)
      s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + j)] = b.coeff(n - j);
  return determinant(std::move(s));
}

Rat discriminant(const UPoly& f) {
  int n = f.degree();
  Rat r = resultant(f, f.derivative()) / f.leading();
  if ((n * (n - 1) / 2) % 2) r = -r;
  return r;
}

}  // namespace gfe::arith
