#include "gfe/arith/padic.hpp"

#include <algorithm>
#include <sstream>

namespace gfe::arith {

LocalField::LocalField(long p, ModPoly h, int precision) : p_(p), P_(p), prec_(precision), h_(std::move(h)) {
  if (precision < 1) throw ArithError("local field precision must be positive");
  pows_.push_back(Int(1));
  for (int k = 1; k <= 4 * (prec_ + kGuardDigits) + 8; ++k) pows_.push_back(pows_.back() * P_);
}

LocalFieldPtr LocalField::qp(long p, int precision) {
  return LocalFieldPtr(new LocalField(p, ModPoly{Int(0), Int(1)}, precision));
}

LocalFieldPtr LocalField::unramified(long p, const ModPoly& h, int precision) {
  if (h.size() < 2 || h.back() != 1) throw ArithError("local field modulus must be monic of positive degree");
  auto* K = new LocalField(p, h, precision);
  LocalFieldPtr ptr(K);
  if (h.size() > 2) K->base_ = qp(p, precision);
  return ptr;
}

const Int& LocalField::p_power(int k) const {
  if (k < 0) throw ArithError("negative p power");
  if (static_cast<std::size_t>(k) < pows_.size()) return pows_[static_cast<std::size_t>(k)];
  thread_local Int scratch;
  scratch = pow_int(P_, static_cast<unsigned long>(k));
  return scratch;
}

LocalFieldPtr LocalField::base() const {
  if (degree() == 1) return shared_from_this();
  return base_;
}

namespace {

/* Multiplies unit polynomials modulo (h, M). */
std::vector<Int> mul_mod_h(const std::vector<Int>& a, const std::vector<Int>& b, const ModPoly& h, const Int& M) {
  std::size_t f = a.size();
  if (f == 1) return {mod_pos(a[0] * b[0], M)};
  std::vector<Int> prod(2 * f - 1, Int(0));
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = 0; j < f; ++j) prod[i + j] += a[i] * b[j];
  for (std::size_t k = prod.size() - 1; k >= f; --k) {
    Int c = mod_pos(prod[k], M);
    prod[k] = 0;
    if (c == 0) continue;
    for (std::size_t j = 0; j < f; ++j) prod[k - f + j] -= c * h[j];
  }
  prod.resize(f);
  for (auto& x : prod) x = mod_pos(x, M);
  return prod;
}

}  // namespace

PadicElem PadicElem::zero(const LocalFieldPtr& K, long abs_precision) {
  PadicElem z;
  z.K_ = K;
  z.zero_ = true;
  z.val_ = std::min(abs_precision, kExactPrecision);
  return z;
}

PadicElem PadicElem::normalize(const LocalFieldPtr& K, long base_val, std::vector<Int> x, long abs_precision) {
  long k = abs_precision - base_val;
  if (k <= 0) return zero(K, abs_precision);
  long cap = std::min<long>(k, K->precision() + 2L * LocalField::kGuardDigits);
  const Int& M = K->p_power(static_cast<int>(cap));
  long e = cap;
  for (auto& xi : x) {
    xi = mod_pos(xi, M);
    if (xi != 0) e = std::min(e, arith::valuation(xi, K->prime()));
  }
  if (e >= cap) return zero(K, abs_precision);
  PadicElem r;
  r.K_ = K;
  r.zero_ = false;
  r.val_ = base_val + e;
  r.rel_ = std::min<long>(k - e, K->precision());
  const Int& pe = K->p_power(static_cast<int>(e));
  const Int& R = K->p_power(static_cast<int>(r.rel_));
  for (auto& xi : x) xi = mod_pos(Int(xi / pe), R);
  r.unit_ = std::move(x);
  return r;
}

PadicElem PadicElem::from_int(const LocalFieldPtr& K, const Int& n) { return from_rat(K, Rat(n)); }

PadicElem PadicElem::from_rat(const LocalFieldPtr& K, const Rat& r) {
  std::vector<Rat> c(static_cast<std::size_t>(K->degree()), Rat(0));
  c[0] = r;
  return from_coords(K, c);
}

PadicElem PadicElem::from_coords(const LocalFieldPtr& K, const std::vector<Rat>& coords) {
  if (static_cast<int>(coords.size()) != K->degree()) throw ArithError("from_coords: wrong coordinate count");
  bool any = false;
  long vmin = 0;
  for (auto& c : coords) {
    if (arith::is_zero(c)) continue;
    long v = arith::valuation(c, K->prime());
    vmin = any ? std::min(vmin, v) : v;
    any = true;
  }
  if (!any) return zero(K);
  const Int& M = K->p_power(K->precision());
  std::vector<Int> x;
  Rat shift = pow_rat(Rat(K->prime()), -vmin);
  for (auto& c : coords) x.push_back(arith::is_zero(c) ? Int(0) : rat_mod(Rat(c * shift), M));
  return normalize(K, vmin, std::move(x), vmin + K->precision());
}

PadicElem PadicElem::from_unit(const LocalFieldPtr& K, long val, std::vector<Int> unit, long rel) {
  return normalize(K, val, std::move(unit), val + rel);
}

PadicElem PadicElem::generator(const LocalFieldPtr& K) {
  if (K->degree() == 1) return from_unit(K, 0, {Int(-K->modulus()[0])}, K->modulus_precision());
  std::vector<Rat> c(static_cast<std::size_t>(K->degree()), Rat(0));
  c[1] = 1;
  return from_coords(K, c);
}

PadicElem PadicElem::operator-() const {
  if (zero_) return *this;
  PadicElem r = *this;
  const Int& R = K_->p_power(static_cast<int>(rel_));
  for (auto& u : r.unit_) u = mod_pos(Int(-u), R);
  return r;
}

PadicElem PadicElem::truncate(long n) const {
  if (zero_) return zero(K_, std::min(val_, n));
  if (n <= val_) return zero(K_, n);
  if (n >= val_ + rel_) return *this;
  PadicElem r = *this;
  r.rel_ = n - val_;
  const Int& R = K_->p_power(static_cast<int>(r.rel_));
  for (auto& u : r.unit_) u = mod_pos(u, R);
  return r;
}

PadicElem operator+(const PadicElem& a, const PadicElem& b) {
  if (a.zero_) return b.truncate(a.val_);
  if (b.zero_) return a.truncate(b.val_);
  long base = std::min(a.val_, b.val_);
  long abs = std::min(a.val_ + a.rel_, b.val_ + b.rel_);
  long k = abs - base;
  if (k <= 0) return PadicElem::zero(a.K_, abs);
  std::size_t f = a.unit_.size();
  std::vector<Int> x(f, Int(0));
  auto accumulate = [&](const PadicElem& e) {
    long shift = e.val_ - base;
    if (shift >= k) return;
    const Int& ps = a.K_->p_power(static_cast<int>(shift));
    for (std::size_t j = 0; j < f; ++j) x[j] += e.unit_[j] * ps;
  };
  accumulate(a);
  accumulate(b);
  return PadicElem::normalize(a.K_, base, std::move(x), abs);
}

PadicElem operator*(const PadicElem& a, const PadicElem& b) {
  if (a.zero_ || b.zero_) {
    long v = std::min(a.val_ + b.val_, kExactPrecision);
    return PadicElem::zero(a.K_ ? a.K_ : b.K_, v);
  }
  PadicElem r;
  r.K_ = a.K_;
  r.zero_ = false;
  r.val_ = a.val_ + b.val_;
  r.rel_ = std::min(a.rel_, b.rel_);
  r.unit_ = mul_mod_h(a.unit_, b.unit_, a.K_->modulus(), a.K_->p_power(static_cast<int>(r.rel_)));
  return r;
}

PadicElem PadicElem::inverse() const {
  if (zero_) throw PrecisionTooLow("inverse of a p-adic zero at precision " + std::to_string(val_));
  const Int& R = K_->p_power(static_cast<int>(rel_));
  std::size_t f = unit_.size();
  PadicElem r;
  r.K_ = K_;
  r.zero_ = false;
  r.val_ = -val_;
  r.rel_ = rel_;
  if (f == 1) {
    r.unit_ = {mod_inverse(unit_[0], R)};
    return r;
  }
  std::vector<std::vector<Int>> m(f, std::vector<Int>(f));
  std::vector<Int> col = unit_;
  std::vector<Int> xgen(f, Int(0));
  xgen[1] = 1;
  for (std::size_t j = 0; j < f; ++j) {
    for (std::size_t i = 0; i < f; ++i) m[i][j] = col[i];
    col = mul_mod_h(col, xgen, K_->modulus(), R);
  }
  std::vector<Int> e(f, Int(0));
  e[0] = 1;
  r.unit_ = solve_mod_prime_power(m, e, K_->prime(), R);
  return r;
}

PadicElem PadicElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  PadicElem r = one_like(), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

PadicElem PadicElem::coordinate(int j) const {
  LocalFieldPtr B = K_->base();
  if (zero_) return zero(B, val_);
  return normalize(B, val_, {unit_[static_cast<std::size_t>(j)]}, val_ + rel_);
}

std::vector<Int> PadicElem::integral_coords(long n) const {
  std::size_t f = static_cast<std::size_t>(K_->degree());
  if (n > absolute_precision()) throw PrecisionTooLow("integral_coords beyond known precision");
  std::vector<Int> out(f, Int(0));
  if (zero_) return out;
  if (val_ < 0) throw ArithError("integral_coords of a non-integral element");
  if (val_ >= n) return out;
  const Int& M = K_->p_power(static_cast<int>(n));
  const Int& pv = K_->p_power(static_cast<int>(val_));
  for (std::size_t j = 0; j < f; ++j) out[j] = mod_pos(unit_[j] * pv, M);
  return out;
}

std::vector<Int> PadicElem::residue() const {
  if (!zero_ && val_ < 0) throw ArithError("residue of a non-integral element");
  if (absolute_precision() < 1) throw PrecisionTooLow("residue of an element known to precision < 1");
  return integral_coords(1);
}

std::vector<long> PadicElem::digits() const {
  if (K_->degree() != 1) throw ArithError("digits only defined over Q_p");
  std::vector<long> d;
  if (zero_) return d;
  Int u = unit_[0];
  for (long i = 0; i < rel_; ++i) {
    Int q, rmd;
    mpz_fdiv_qr_ui(q.get_mpz_t(), rmd.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(K_->p()));
    d.push_back(rmd.get_si());
    u = q;
  }
  return d;
}

Rat PadicElem::rational_representative() const {
  if (K_->degree() != 1) throw ArithError("rational_representative only defined over Q_p");
  if (zero_) return Rat(0);
  return Rat(unit_[0]) * pow_rat(Rat(K_->prime()), val_);
}

std::string PadicElem::to_string() const {
  std::ostringstream os;
  if (zero_) {
    os << "O(" << K_->p() << "^" << val_ << ")";
    return os.str();
  }
  os << K_->p() << "^" << val_ << "*(";
  for (std::size_t j = 0; j < unit_.size(); ++j) os << (j ? "," : "") << unit_[j].get_str();
  os << ") + O(" << K_->p() << "^" << (val_ + rel_) << ")";
  return os.str();
}

PadicElem embed(const NfElem& a, const LocalFieldPtr& K) {
  const Int& p = K->prime();
  Int den = a.denominator();
  long k = 0;
  Int dprime = den;
  while (mpz_divisible_p(dprime.get_mpz_t(), p.get_mpz_t())) {
    dprime /= p;
    ++k;
  }
  int mp = K->modulus_precision();
  const Int& M = K->p_power(static_cast<int>(mp + k));
  // den * a has integer coordinates; reduce sum A_j x^j modulo h.
  ModPoly A;
  for (auto& c : a.coords()) A.push_back(mod_pos(Rat(c * den).get_num(), M));
  std::size_t f = static_cast<std::size_t>(K->degree());
  std::vector<Int> y;
  if (f == 1) {
    // K = Q_p and x is the chosen root of the defining polynomial: here h = x - r.
    const ModPoly& h = K->modulus();
    Int root = mod_pos(Int(-h[0]), M);
    y.push_back(modpoly_eval(A, root, M));
  } else {
    ModPoly q, r;
    modpoly_divmod_monic(A, K->modulus(), M, q, r);
    r.resize(f, Int(0));
    y = r;
  }
  Int dinv = mod_inverse(dprime, M);
  for (auto& v : y) v = mod_pos(v * dinv, M);
  return PadicElem::from_unit(K, -k, std::move(y), mp);
}

PadicElem eval_poly(const UPoly& g, const PadicElem& x) {
  PadicElem acc = x.zero_like();
  for (int i = g.degree(); i >= 0; --i) acc = acc * x + x.from_rat_like(g.coeff(i));
  return acc;
}

PadicElem padic_hensel_root(const UPoly& g, const PadicElem& approx) {
  UPoly dg = g.derivative();
  PadicElem ga = eval_poly(g, approx);
  PadicElem dga = eval_poly(dg, approx);
  long vg = ga.valuation();
  long vd = dga.valuation();
  if (dga.is_zero() || !(vg > 2 * vd))
    throw NotLiftable("Hensel condition fails: v(g) = " + std::to_string(vg) + ", v(g') = " + std::to_string(vd));
  const LocalFieldPtr& K = approx.field();
  PadicElem a;
  if (approx.is_zero()) {
    a = PadicElem::zero(K);
  } else {
    std::vector<Rat> c;
    for (auto& u : approx.unit()) c.push_back(Rat(u) * pow_rat(Rat(K->prime()), approx.valuation()));
    a = PadicElem::from_coords(K, c);
  }
  long target = K->precision();
  for (int iter = 0; iter < 4 * 64; ++iter) {
    PadicElem v = eval_poly(g, a);
    if (v.is_zero() || v.valuation() >= target + vd) break;
    a = a - v / eval_poly(dg, a);
  }
  PadicElem check = eval_poly(g, a);
  if (!check.is_zero() && check.valuation() < target) throw PrecisionTooLow("Newton iteration did not converge");
  return a;
}

}  // namespace gfe::arith
