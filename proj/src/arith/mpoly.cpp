#include "gfe/arith/mpoly.hpp"

#include <numeric>
#include <sstream>

namespace gfe::arith {

MPoly MPoly::constant(int nvars, const Rat& c) {
  MPoly p(nvars);
  p.add_term(Exponent(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

MPoly MPoly::variable(int nvars, int index) {
  MPoly p(nvars);
  Exponent e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(index)] = 1;
  p.add_term(e, Rat(1));
  return p;
}

MPoly MPoly::monomial(const Rat& c, Exponent e) {
  MPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

Rat MPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

void MPoly::add_term(const Exponent& e, const Rat& c) {
  if (static_cast<int>(e.size()) != nvars_) throw ArithError("exponent arity mismatch");
  if (arith::is_zero(c)) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (arith::is_zero(it->second)) terms_.erase(it);
  }
}

int MPoly::total_degree() const {
  int d = -1;
  for (auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

bool MPoly::is_homogeneous(int degree) const {
  for (auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) != degree) return false;
  return true;
}

MPoly MPoly::derivative(int var) const {
  MPoly d(nvars_);
  for (auto& [e, c] : terms_) {
    int k = e[static_cast<std::size_t>(var)];
    if (k == 0) continue;
    Exponent f = e;
    f[static_cast<std::size_t>(var)] = k - 1;
    d.add_term(f, c * k);
  }
  return d;
}

Rat MPoly::eval(const std::vector<Rat>& point) const {
  Rat acc = 0;
  for (auto& [e, c] : terms_) {
    Rat m = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) m *= pow_rat(point[i], e[i]);
    acc += m;
  }
  return acc;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly r = constant(nvars_, Rat(1));
  MPoly b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

MPoly MPoly::compose(const std::vector<MPoly>& images) const {
  if (static_cast<int>(images.size()) != nvars_) throw ArithError("compose arity mismatch");
  int target = images.empty() ? 0 : images[0].nvars();
  std::vector<std::vector<MPoly>> powers(images.size());
  MPoly out(target);
  for (auto& [e, c] : terms_) {
    MPoly m = constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(target, Rat(1)));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
      if (e[i]) m = m * pw[static_cast<std::size_t>(e[i])];
    }
    out = out + m;
  }
  return out;
}

MPoly MPoly::primitive_integer() const {
  if (is_zero()) return *this;
  Int den = 1, g = 0;
  for (auto& [e, c] : terms_) den = lcm(den, c.get_den());
  for (auto& [e, c] : terms_) g = gcd(g, Rat(c * den).get_num());
  Rat scale(den, g);
  scale.canonicalize();
  if (terms_.rbegin()->second < 0) scale = -scale;
  return scale * *this;
}

MPoly MPoly::operator-() const { return Rat(-1) * *this; }

MPoly operator+(const MPoly& a, const MPoly& b) {
  MPoly r = a.nvars_ >= b.nvars_ ? a : b;
  const MPoly& o = a.nvars_ >= b.nvars_ ? b : a;
  if (a.nvars_ != b.nvars_ && !o.is_zero()) throw ArithError("MPoly arity mismatch");
  for (auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.nvars_ != b.nvars_) throw ArithError("MPoly arity mismatch");
  MPoly r(a.nvars_);
  for (auto& [ea, ca] : a.terms_)
    for (auto& [eb, cb] : b.terms_) {
      Exponent e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MPoly operator*(const Rat& c, const MPoly& a) {
  MPoly r(a.nvars_);
  if (arith::is_zero(c)) return r;
  for (auto& [e, v] : a.terms_) r.terms_.emplace(e, c * v);
  return r;
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool neg = c < 0;
    Rat a = neg ? Rat(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool constant_term = std::accumulate(e.begin(), e.end(), 0) == 0;
    bool need_star = false;
    if (constant_term || a != 1) {
      os << arith::to_string(a);
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (need_star) os << "*";
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace gfe::arith
