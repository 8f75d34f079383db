#include "gfe/descent/descent.hpp"

#include <sstream>

#include "gfe/arith/modp.hpp"

namespace gfe::descent {

using arith::is_zero;

namespace {

long powmod(long b, long e, long m) {
  long r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e) {
    if (e & 1) r = static_cast<long>((static_cast<__int128>(r) * b) % m);
    b = static_cast<long>((static_cast<__int128>(b) * b) % m);
    e >>= 1;
  }
  return r;
}

bool small_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long eval_at_place(const AlgElem& a, const CubicPlace& pl) {
  Int q = pl.q, acc = 0, pw = 1;
  for (const auto& c : a.coords()) {
    acc = arith::mod_pos(acc + arith::rat_mod(c, q) * pw, q);
    pw = arith::mod_pos(pw * pl.root, q);
  }
  return acc.get_si();
}

bool denominators_prime_to(const AlgElem& a, long q) {
  for (const auto& c : a.coords())
    if (mpz_divisible_ui_p(c.get_den().get_mpz_t(), static_cast<unsigned long>(q))) return false;
  return true;
}

std::vector<MPoly> alg_mul(const AlgebraPtr& alg, const std::vector<MPoly>& a, const std::vector<MPoly>& b) {
  int n = alg->degree();
  int nv = a[0].nvars();
  std::vector<MPoly> conv(static_cast<std::size_t>(2 * n - 1), MPoly(nv));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      conv[static_cast<std::size_t>(i + j)] = conv[static_cast<std::size_t>(i + j)] +
                                                a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  std::vector<MPoly> out(static_cast<std::size_t>(n), MPoly(nv));
  for (int k = 0; k < 2 * n - 1; ++k) {
    const auto& pw = alg->power(k);
    for (int j = 0; j < n; ++j) {
      const Rat& c = pw[static_cast<std::size_t>(j)];
      if (!is_zero(c)) out[static_cast<std::size_t>(j)] = out[static_cast<std::size_t>(j)] + c * conv[static_cast<std::size_t>(k)];
    }
  }
  return out;
}

}  // namespace

std::vector<CubicPlace> cubic_places(const AlgebraPtr& alg, const std::vector<AlgElem>& nonvanishing, std::size_t count) {
  std::vector<CubicPlace> out;
  const UPoly& f = alg->monic_poly();
  Rat disc = arith::discriminant(f);
  for (long q = 7; out.size() < count; q += 6) {
    if (q > 100000) throw DescentError("not enough cubic places found");
    if (!small_prime(q)) continue;
    bool ok = true;
    for (int k = 0; k <= f.degree(); ++k)
      if (mpz_divisible_ui_p(f.coeff(k).get_den().get_mpz_t(), static_cast<unsigned long>(q))) ok = false;
    if (!ok || mpz_divisible_ui_p(disc.get_num().get_mpz_t(), static_cast<unsigned long>(q))) continue;
    for (const auto& a : nonvanishing)
      if (!denominators_prime_to(a, q)) ok = false;
    if (!ok) continue;
    for (const Int& r : arith::roots_mod_p(arith::modpoly_reduce(f, Int(q)), q)) {
      CubicPlace pl{q, r.get_si()};
      bool good = true;
      for (const auto& a : nonvanishing)
        if (eval_at_place(a, pl) == 0) good = false;
      if (good) out.push_back(pl);
      if (out.size() == count) break;
    }
  }
  return out;
}

std::vector<int> cube_character_signature(const AlgElem& a, const std::vector<CubicPlace>& places) {
  std::vector<int> sig;
  for (const auto& pl : places) {
    long v = eval_at_place(a, pl);
    if (v == 0) throw DescentError("element vanishes at a cubic place");
    long e = (pl.q - 1) / 3;
    long zeta = 1;
    for (long g = 2; zeta == 1; ++g) zeta = powmod(g, e, pl.q);
    long chi = powmod(v, e, pl.q);
    sig.push_back(chi == 1 ? 0 : chi == zeta ? 1 : 2);
  }
  return sig;
}

int rank_mod3(std::vector<std::vector<int>> rows) {
  int rank = 0;
  std::size_t ncols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t col = 0; col < ncols && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && rows[piv][col] % 3 == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    auto& pr = rows[static_cast<std::size_t>(rank)];
    int inv = pr[col] % 3 == 1 ? 1 : 2;
    for (auto& x : pr) x = (x * inv) % 3;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || rows[r][col] % 3 == 0) continue;
      int m = rows[r][col] % 3;
      for (std::size_t c = 0; c < ncols; ++c) rows[r][c] = ((rows[r][c] - m * pr[c]) % 3 + 3) % 3;
    }
    ++rank;
  }
  return rank;
}

bool GeneratorReport::independent() const { return character_rank == static_cast<int>(count); }

GeneratorReport check_generators(const SelmerSetSpec& spec) {
  GeneratorReport rep;
  rep.count = spec.generators.size();
  for (const auto& g : spec.generators) {
    if (!g.is_invertible()) {
      rep.invertible = false;
      continue;
    }
    for (std::size_t i = 0; i < spec.algebra->components().size(); ++i) {
      Rat n = g.component(i).norm();
      for (const Int* part : {&n.get_num(), &n.get_den()}) {
        for (auto& [p, e] : arith::factor_small(arith::abs_int(*part))) {
          bool inS = false;
          for (long s : spec.S)
            if (p == s) inS = true;
          if (!inS && e % 3 != 0) rep.s_unit_mod_cubes = false;
        }
      }
    }
  }
  if (!rep.invertible || spec.generators.empty()) return rep;
  auto places = cubic_places(spec.algebra, spec.generators, spec.generators.size() + 12);
  std::vector<std::vector<int>> rows;
  for (const auto& g : spec.generators) rows.push_back(cube_character_signature(g, places));
  rep.character_rank = rank_mod3(rows);
  return rep;
}

void verify_generators(const SelmerSetSpec& spec) {
  auto rep = check_generators(spec);
  if (!rep.invertible) throw DescentError("a generator is a zero divisor");
  if (!rep.s_unit_mod_cubes) throw DescentError("a generator is not an S-unit modulo cubes");
  if (!rep.independent()) throw DescentError("generators are dependent modulo cubes");
}

std::vector<int> delta_exponents(std::size_t r, std::size_t index) {
  std::vector<int> e(r, 0);
  for (std::size_t i = r; i-- > 0;) {
    e[i] = static_cast<int>(index % 3);
    index /= 3;
  }
  return e;
}

AlgElem delta_from_exponents(const SelmerSetSpec& spec, const std::vector<int>& e) {
  AlgElem d = AlgElem::from_rat(spec.algebra, Rat(1));
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) d = d * spec.generators[i].pow(e[i]);
  return d;
}

std::vector<AlgElem> enumerate_delta(const SelmerSetSpec& spec) {
  std::size_t r = spec.generators.size(), total = 1;
  for (std::size_t i = 0; i < r; ++i) total *= 3;
  std::vector<AlgElem> out;
  out.reserve(total);
  for (std::size_t k = 0; k < total; ++k) out.push_back(delta_from_exponents(spec, delta_exponents(r, k)));
  return out;
}

bool has_cubic_norm(const AlgElem& delta, const Rat& C) { return arith::is_cube(C * delta.norm()); }

std::vector<AlgElem> cubic_norm_filter(const std::vector<AlgElem>& candidates, const Rat& C) {
  std::vector<AlgElem> out;
  for (const auto& d : candidates)
    if (has_cubic_norm(d, C)) out.push_back(d);
  return out;
}

std::optional<AlgElem> cube_root(const AlgElem& a) {
  std::vector<NfElem> parts;
  for (std::size_t i = 0; i < a.algebra()->components().size(); ++i) {
    auto r = arith::nth_root(a.component(i), 3);
    if (!r) return std::nullopt;
    parts.push_back(*r);
  }
  return AlgElem::from_components(a.algebra(), parts);
}

bool same_cube_class(const AlgElem& a, const AlgElem& b) { return cube_root(a * b.inverse()).has_value(); }

CubicFormSystem build_descent_forms(const UPoly& f, const AlgElem& delta) {
  if (!arith::is_squarefree(f)) throw DescentError("descent needs a squarefree quartic");
  if (f.degree() != 4) throw DescentError("descent needs a quartic of degree 4 in s");
  if (f.monic() != delta.algebra()->monic_poly()) throw DescentError("quartic does not define the algebra of delta");
  return build_descent_forms(delta);
}

CubicFormSystem build_descent_forms(const AlgElem& delta) {
  const auto& alg = delta.algebra();
  int n = alg->degree();
  std::vector<MPoly> Y, D;
  for (int i = 0; i < n; ++i) {
    Y.push_back(MPoly::variable(n, i));
    D.push_back(MPoly::constant(n, delta.coord(i)));
  }
  auto cube = alg_mul(alg, alg_mul(alg, Y, Y), Y);
  auto q = alg_mul(alg, D, cube);
  CubicFormSystem sys;
  sys.delta = delta;
  for (int i = 0; i < 4; ++i) sys.Q[static_cast<std::size_t>(i)] = q[static_cast<std::size_t>(i)];
  return sys;
}

STValue st_map(const CubicFormSystem& sys, const std::vector<Rat>& y) {
  Rat q0 = sys.Q[0].eval(y), q1 = sys.Q[1].eval(y);
  if (is_zero(q0) && is_zero(q1)) throw IndeterminatePoint();
  if (is_zero(q1)) return STValue::infinity();
  return STValue::of(-q0 / q1);
}

std::optional<std::vector<Rat>> point_with_st(const CubicFormSystem& sys, const STValue& v) {
  const auto& alg = sys.delta.algebra();
  Rat s0 = 1, t0 = 0;
  if (!v.is_infinity()) {
    s0 = v.value().get_num();
    t0 = v.value().get_den();
  }
  AlgElem w = AlgElem::from_rat(alg, s0) - t0 * AlgElem::theta(alg);
  AlgElem dinv = sys.delta.inverse();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Rat mu = arith::pow_rat(Rat(2), a) * arith::pow_rat(Rat(3), b);
      auto g = cube_root(mu * w * dinv);
      if (!g) continue;
      const auto& y = g->coords();
      if (!is_zero(sys.Q[2].eval(y)) || !is_zero(sys.Q[3].eval(y))) continue;
      if (st_map(sys, y) == v) return y;
    }
  return std::nullopt;
}

NfElem Genus1Quotient::eval_cubic(const NfElem& s, const NfElem& t) const {
  return cubic[0] * s * s * s + cubic[1] * s * s * t + cubic[2] * s * t * t + cubic[3] * t * t * t;
}

bool Genus1Quotient::contains(const NfElem& u, const NfElem& s, const NfElem& t) const {
  return c * u * u * u == eval_cubic(s, t);
}

std::string Genus1Quotient::to_string() const {
  std::ostringstream os;
  os << label << ": (" << c.to_string() << ")*u^3 = (" << cubic[0].to_string() << ")*s^3 + (" << cubic[1].to_string()
     << ")*s^2*t + (" << cubic[2].to_string() << ")*s*t^2 + (" << cubic[3].to_string() << ")*t^3";
  return os.str();
}

std::vector<Genus1Quotient> genus1_quotients(const AlgElem& delta) {
  const auto& alg = delta.algebra();
  const auto& comps = alg->components();
  std::vector<int> degs;
  for (const auto& c : comps) degs.push_back(c.field->degree());
  bool split = degs == std::vector<int>{1, 1, 2};
  bool quartic = degs == std::vector<int>{4};
  if (!split && !quartic) throw DescentError("unsupported factorization shape for genus-one quotients");
  Rat N = delta.norm();
  const UPoly& g = alg->monic_poly();
  std::vector<Genus1Quotient> out;
  int label = 1;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (split && comps[i].field->degree() != 1) continue;
    const NfElem& r = comps[i].theta_image;
    NfElem b3 = r.one_like();
    NfElem b2 = r.from_rat_like(g.coeff(3)) + r * b3;
    NfElem b1 = r.from_rat_like(g.coeff(2)) + r * b2;
    NfElem b0 = r.from_rat_like(g.coeff(1)) + r * b1;
    if (!(r.from_rat_like(g.coeff(0)) + r * b0).is_zero()) throw DescentError("component image is not a root");
    Genus1Quotient e;
    e.component = i;
    e.label = quartic ? "E_delta" : "E" + std::to_string(label++) + ",delta";
    e.c = r.from_rat_like(N) / delta.component(i);
    e.cubic = {b3, b2, b1, b0};
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace gfe::descent
