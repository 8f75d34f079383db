#include "gfe/arith/number_field.hpp"

#include <algorithm>
#include <functional>

#include "gfe/arith/factor.hpp"
#include "gfe/arith/modp.hpp"

namespace gfe::arith {

NumberField::NumberField(UPoly m, std::string name) : min_poly_(std::move(m)), name_(std::move(name)) {
  int n = degree();
  powers_.resize(static_cast<std::size_t>(2 * n - 1));
  for (int k = 0; k <= 2 * n - 2; ++k) {
    UPoly r = UPoly::monomial(Rat(1), k) % min_poly_;
    std::vector<Rat> c(static_cast<std::size_t>(n), Rat(0));
    for (int i = 0; i <= r.degree(); ++i) c[static_cast<std::size_t>(i)] = r.coeff(i);
    powers_[static_cast<std::size_t>(k)] = std::move(c);
  }
  disc_ = n == 1 ? Rat(1) : discriminant(min_poly_);
}

FieldPtr NumberField::create(const UPoly& min_poly, std::string generator_name) {
  if (min_poly.degree() < 1 || min_poly.degree() > 4) throw ArithError("number field degree must be 1..4");
  if (min_poly.leading() != 1) throw ArithError("number field needs a monic defining polynomial");
  if (!is_irreducible_deg_le4(min_poly)) throw ArithError("defining polynomial is reducible: " + min_poly.to_string());
  return FieldPtr(new NumberField(min_poly, std::move(generator_name)));
}

FieldPtr NumberField::rationals() {
  static FieldPtr q = create(UPoly{Rat(0), Rat(1)}, "q");
  return q;
}

bool NumberField::has_integral_min_poly() const {
  for (auto& c : min_poly_.coeffs())
    if (!is_integer(c)) return false;
  return true;
}

NfElem::NfElem(FieldPtr field, std::vector<Rat> coords) : field_(std::move(field)), c_(std::move(coords)) {
  if (static_cast<int>(c_.size()) != field_->degree()) throw ArithError("NfElem coordinate count mismatch");
  for (auto& c : c_) c.canonicalize();
}

NfElem NfElem::from_rat(const FieldPtr& field, const Rat& r) {
  std::vector<Rat> c(static_cast<std::size_t>(field->degree()), Rat(0));
  c[0] = r;
  return NfElem(field, std::move(c));
}

NfElem NfElem::generator(const FieldPtr& field) { return from_poly(field, UPoly{Rat(0), Rat(1)}); }

NfElem NfElem::from_poly(const FieldPtr& field, const UPoly& p) {
  UPoly r = p % field->min_poly();
  std::vector<Rat> c(static_cast<std::size_t>(field->degree()), Rat(0));
  for (int i = 0; i <= r.degree(); ++i) c[static_cast<std::size_t>(i)] = r.coeff(i);
  return NfElem(field, std::move(c));
}

bool NfElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return arith::is_zero(r); });
}

bool NfElem::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rat& r) { return arith::is_zero(r); });
}

void NfElem::check_same(const NfElem& o) const {
  if (!field_ || !o.field_) throw ArithError("uninitialized NfElem");
  if (field_ != o.field_ && !field_->same_as(*o.field_)) throw ArithError("NfElem field mismatch");
}

NfElem NfElem::operator-() const {
  NfElem r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

NfElem& NfElem::operator+=(const NfElem& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

NfElem& NfElem::operator-=(const NfElem& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

NfElem& NfElem::operator*=(const NfElem& o) {
  check_same(o);
  int n = degree();
  std::vector<Rat> prod(static_cast<std::size_t>(2 * n - 1), Rat(0));
  for (int i = 0; i < n; ++i) {
    if (arith::is_zero(c_[static_cast<std::size_t>(i)])) continue;
    for (int j = 0; j < n; ++j) prod[static_cast<std::size_t>(i + j)] += c_[static_cast<std::size_t>(i)] * o.c_[static_cast<std::size_t>(j)];
  }
  std::vector<Rat> out(static_cast<std::size_t>(n), Rat(0));
  for (int k = 0; k <= 2 * n - 2; ++k) {
    const Rat& pk = prod[static_cast<std::size_t>(k)];
    if (arith::is_zero(pk)) continue;
    const auto& red = field_->power(k);
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] += pk * red[static_cast<std::size_t>(i)];
  }
  c_ = std::move(out);
  return *this;
}

NfElem operator*(const Rat& r, const NfElem& a) {
  NfElem out = a;
  for (auto& c : out.c_) c *= r;
  return out;
}

bool operator==(const NfElem& a, const NfElem& b) {
  a.check_same(b);
  return a.c_ == b.c_;
}

UPoly NfElem::as_poly() const { return UPoly(c_); }

NfElem NfElem::inverse() const {
  if (is_zero()) throw ArithError("inverse of zero in number field");
  if (degree() == 1) return from_rat(field_, Rat(1) / c_[0]);
  Bezout b = xgcd(as_poly(), field_->min_poly());
  if (b.g.degree() != 0) throw ArithError("non-invertible element");
  return from_poly(field_, b.s);
}

NfElem NfElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  NfElem r = one_like(), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

std::vector<std::vector<Rat>> NfElem::mult_matrix() const {
  int n = degree();
  std::vector<std::vector<Rat>> m(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n)));
  NfElem cur = *this;
  NfElem x = generator(field_);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cur.c_[static_cast<std::size_t>(i)];
    cur *= x;
  }
  return m;
}

Rat NfElem::norm() const { return determinant(mult_matrix()); }

Rat NfElem::trace() const {
  auto m = mult_matrix();
  Rat t = 0;
  for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

Int NfElem::denominator() const {
  Int d = 1;
  for (auto& c : c_) d = lcm(d, c.get_den());
  return d;
}

std::string NfElem::to_string() const {
  if (degree() == 1) return arith::to_string(c_[0]);
  return as_poly().to_string(field_->generator_name());
}

NfElem eval_poly(const UPoly& p, const NfElem& x) {
  NfElem acc = x.zero_like();
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + x.from_rat_like(p.coeff(i));
  return acc;
}

NfElem parse_nf_elem(const FieldPtr& field, const std::vector<std::string>& coords) {
  std::vector<Rat> c;
  for (auto& s : coords) c.push_back(parse_rat(s));
  return NfElem(field, std::move(c));
}

std::vector<std::string> coords_to_strings(const NfElem& a) {
  std::vector<std::string> out;
  for (auto& c : a.coords()) out.push_back(arith::to_string(c));
  return out;
}

namespace {

Int ceil_rat(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Int pow_mod(const Int& b, unsigned long e, const Int& m) {
  Int r;
  mpz_powm_ui(r.get_mpz_t(), b.get_mpz_t(), e, m.get_mpz_t());
  return r;
}

}  // namespace

std::optional<NfElem> nth_root(const NfElem& a, unsigned n) {
  if (n == 0) throw ArithError("nth_root with n = 0");
  if (a.is_zero()) return a;
  if (n == 1) return a;
  const FieldPtr& K = a.field();
  if (K->degree() == 1) {
    auto r = exact_root(a.coord(0), n);
    if (!r) return std::nullopt;
    return NfElem::from_rat(K, *r);
  }
  if (!K->has_integral_min_poly()) throw ArithError("nth_root needs an integral defining polynomial");
  int deg = K->degree();
  Int D = abs_int(K->poly_discriminant().get_num());
  Int d = a.denominator();
  // b = (D d)^n a has coordinates in Z[x] and every integral root beta' of b lies in Z[x].
  Rat scale_rat(pow_int(D * d, n));
  NfElem b = scale_rat * a;
  std::vector<Int> bc;
  for (auto& c : b.coords()) bc.push_back(c.get_num());

  // Root size bound: |sigma(beta')| <= (sum |b_j| R^j)^(1/n), coordinates via the trace form.
  Rat R = 1;
  for (auto& c : K->min_poly().coeffs()) R = std::max(R, Rat(1 + abs(c)));
  Rat emb = 0, Rj = 1;
  for (int j = 0; j < deg; ++j, Rj *= R) emb += abs(b.coord(j)) * Rj;
  Int Bemb = iroot_floor(ceil_rat(emb), n) + 1;
  std::vector<std::vector<Rat>> T(static_cast<std::size_t>(deg), std::vector<Rat>(static_cast<std::size_t>(deg)));
  NfElem x = NfElem::generator(K);
  for (int j = 0; j < deg; ++j)
    for (int k = 0; k < deg; ++k) T[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = x.pow(j + k).trace();
  auto Tinv = inverse_matrix(T);
  Rat bound = 0;
  for (int j = 0; j < deg; ++j) {
    Rat s = 0, Rk = 1;
    for (int k = 0; k < deg; ++k, Rk *= R) s += abs(Tinv[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]) * deg * Rat(Bemb) * Rk;
    bound = std::max(bound, s);
  }
  Int Bmax = ceil_rat(bound);

  // Pick a split prime q with few local n-th roots.
  Int normb = b.norm().get_num();
  long best_q = 0;
  std::size_t best_combos = 0;
  std::vector<Int> best_roots;
  std::vector<std::vector<Int>> best_local;
  int tried = 0;
  for (long q = 5; q < 20000 && tried < 40; ++q) {
    Int Q = q;
    if (!is_probable_prime(Q) || n % static_cast<unsigned long>(q) == 0) continue;
    if (mpz_divisible_p(D.get_mpz_t(), Q.get_mpz_t()) || mpz_divisible_p(normb.get_mpz_t(), Q.get_mpz_t())) continue;
    ModPoly m = modpoly_reduce(K->min_poly(), Q);
    auto roots = roots_mod_p(m, q);
    if (static_cast<int>(roots.size()) != deg) continue;
    ++tried;
    std::vector<std::vector<Int>> local;
    std::size_t combos = 1;
    bool none = false;
    for (auto& r : roots) {
      Int sigma = 0, rp = 1;
      for (int j = 0; j < deg; ++j, rp = mod_pos(rp * r, Q)) sigma += bc[static_cast<std::size_t>(j)] * rp;
      sigma = mod_pos(sigma, Q);
      std::vector<Int> lr;
      for (long y = 1; y < q; ++y)
        if (pow_mod(Int(y), n, Q) == sigma) lr.emplace_back(y);
      if (lr.empty()) none = true;
      combos *= std::max<std::size_t>(lr.size(), 1);
      local.push_back(std::move(lr));
    }
    if (none) return std::nullopt;  // not an n-th power locally, hence not globally
    if (best_q == 0 || combos < best_combos) {
      best_q = q;
      best_combos = combos;
      best_roots = roots;
      best_local = local;
    }
    if (combos == 1) break;
  }
  if (best_q == 0) throw ArithError("nth_root: no split prime found");
  Int Q = best_q;
  int N = 1;
  Int QN = Q;
  while (QN <= 2 * Bmax + 2) {
    QN *= Q;
    ++N;
  }
  ModPoly m = modpoly_reduce(K->min_poly(), QN);
  std::vector<Int> lifted_roots;
  for (auto& r : best_roots) lifted_roots.push_back(hensel_lift_root(m, r, best_q, N));
  std::vector<std::vector<Int>> lifted_local(best_local.size());
  for (std::size_t i = 0; i < best_local.size(); ++i) {
    const Int& r = lifted_roots[i];
    Int sigma = 0, rp = 1;
    for (int j = 0; j < deg; ++j, rp = mod_pos(rp * r, QN)) sigma += bc[static_cast<std::size_t>(j)] * rp;
    sigma = mod_pos(sigma, QN);
    ModPoly g(n + 1, Int(0));
    g[0] = mod_pos(Int(-sigma), QN);
    g[n] = 1;
    for (auto& y : best_local[i]) lifted_local[i].push_back(hensel_lift_root(g, y, best_q, N));
  }
  std::vector<std::vector<Int>> V(static_cast<std::size_t>(deg), std::vector<Int>(static_cast<std::size_t>(deg)));
  for (int i = 0; i < deg; ++i) {
    Int rp = 1;
    for (int j = 0; j < deg; ++j, rp = mod_pos(rp * lifted_roots[static_cast<std::size_t>(i)], QN))
      V[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rp;
  }
  std::vector<std::size_t> idx(static_cast<std::size_t>(deg), 0);
  Rat unscale(Int(1), D * d);
  unscale.canonicalize();
  while (true) {
    std::vector<Int> w;
    for (int i = 0; i < deg; ++i) w.push_back(lifted_local[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]]);
    auto c = solve_mod_prime_power(V, w, Q, QN);
    bool ok = true;
    std::vector<Rat> coords;
    for (auto& ci : c) {
      Int s = symmetric_residue(ci, QN);
      if (abs_int(s) > Bmax) {
        ok = false;
        break;
      }
      coords.emplace_back(s);
    }
    if (ok) {
      NfElem beta(K, coords);
      if (beta.pow(n) == b) return unscale * beta;
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == lifted_local[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return std::nullopt;
}

}  // namespace gfe::arith
