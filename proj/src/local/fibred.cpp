#include "gfe/local/fibred.hpp"

#include <mutex>

namespace gfe::local {

using arith::AlgElem;
using arith::ArithError;
using arith::UPoly;

namespace {

const long kCap = 1L << 40;

long vp(const Rat& x, long p) { return arith::is_zero(x) ? kCap : arith::valuation(x, Int(p)); }

long ipow(long b, long e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/* Characteristic polynomial by Faddeev-LeVerrier, constant term first. */
UPoly charpoly(const NfElem& x) {
  auto A = x.mult_matrix();
  std::size_t n = A.size();
  auto mul = [&](const std::vector<std::vector<Rat>>& X, const std::vector<std::vector<Rat>>& Y) {
    std::vector<std::vector<Rat>> Z(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (!arith::is_zero(X[i][k]))
          for (std::size_t j = 0; j < n; ++j) Z[i][j] += X[i][k] * Y[k][j];
    return Z;
  };
  std::vector<Rat> c(n + 1, Rat(0));
  c[n] = 1;
  std::vector<std::vector<Rat>> Mk(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t k = 1; k <= n; ++k) {
    auto AM = mul(A, Mk);
    for (std::size_t i = 0; i < n; ++i) AM[i][i] += c[n - k + 1];
    Mk = AM;
    auto AMk = mul(A, Mk);
    Rat tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += AMk[i][i];
    c[n - k] = -tr / Rat(static_cast<long>(k));
  }
  return UPoly(c);
}

bool eisenstein_at(const UPoly& g, long p) {
  int d = g.degree();
  if (g.coeff(d) != 1) return false;
  for (int i = 0; i < d; ++i) {
    Rat c = g.coeff(i);
    if (!arith::is_integer(c) || vp(c, p) < 1) return false;
  }
  return vp(g.coeff(0), p) == 1;
}

/* (Z/m)[X]/(E) multiplication, E monic of degree e with integer coefficients. */
std::vector<long> ring_mul(const std::vector<long>& a, const std::vector<long>& b, const std::vector<long>& E, long m) {
  std::size_t e = a.size();
  std::vector<long> prod(2 * e - 1, 0);
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % m;
  for (std::size_t k = 2 * e - 1; k-- > e;) {
    long c = prod[k];
    prod[k] = 0;
    for (std::size_t j = 0; j < e; ++j) prod[k - e + j] = ((prod[k - e + j] - c * E[j]) % m + m) % m;
  }
  prod.resize(e);
  return prod;
}

}  // namespace

std::shared_ptr<const RamifiedCompletion> RamifiedCompletion::get(const FieldPtr& F, long p) {
  static std::mutex mu;
  static std::vector<std::pair<std::pair<UPoly, long>, std::shared_ptr<const RamifiedCompletion>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  for (auto& [k, v] : cache)
    if (k.first == F->min_poly() && k.second == p) return v;
  std::shared_ptr<const RamifiedCompletion> c(new RamifiedCompletion(F, p));
  cache.push_back({{F->min_poly(), p}, c});
  return c;
}

RamifiedCompletion::RamifiedCompletion(const FieldPtr& F, long p) : F_(F), p_(p), e_(F->degree()) {
  int d = F->degree();
  if (d == 1) {
    pi_ = NfElem::from_rat(F, Rat(p));
  } else {
    std::vector<NfElem> candidates;
    NfElem g = NfElem::generator(F);
    for (long a = -p; a <= p; ++a) candidates.push_back(g - g.from_int_like(a));
    // small combinations in the power basis
    std::vector<int> digits(static_cast<std::size_t>(d), -2);
    for (;;) {
      std::vector<Rat> c(digits.begin(), digits.end());
      candidates.emplace_back(F, c);
      std::size_t i = 0;
      while (i < digits.size() && digits[i] == 2) digits[i++] = -2;
      if (i == digits.size()) break;
      ++digits[i];
    }
    bool found = false;
    for (const auto& c : candidates) {
      if (c.is_zero()) continue;
      if (eisenstein_at(charpoly(c), p)) {
        pi_ = c;
        found = true;
        break;
      }
    }
    if (!found) throw ArithError("no Eisenstein uniformizer found: p is not totally ramified in the component field");
  }
  eis_ = charpoly(pi_);
  std::vector<std::vector<Rat>> P(static_cast<std::size_t>(d), std::vector<Rat>(static_cast<std::size_t>(d)));
  NfElem pw = pi_.one_like();
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) P[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = pw.coord(i);
    pw *= pi_;
  }
  to_pi_ = arith::inverse_matrix(P);

  long n = 2 * e_ + 1;
  long M = 1;
  for (int j = 0; j < e_; ++j) {
    long c = (n - j + e_ - 1) / e_;
    key_moduli_.push_back(ipow(p, c));
    M = std::max(M, ipow(p, c));
  }
  std::vector<long> E;
  for (int j = 0; j < e_; ++j) E.push_back(arith::mod_pos(eis_.coeff(j).get_num(), Int(M)).get_si());
  std::vector<long> w(static_cast<std::size_t>(e_), 0);
  for (;;) {
    if (w[0] % p != 0) {
      auto w3 = ring_mul(ring_mul(w, w, E, M), w, E, M);
      std::vector<long> k;
      for (int j = 0; j < e_; ++j) k.push_back(w3[static_cast<std::size_t>(j)] % key_moduli_[static_cast<std::size_t>(j)]);
      cubes_.emplace(k, w);
    }
    std::size_t i = 0;
    while (i < w.size() && w[i] == key_moduli_[i] - 1) w[i++] = 0;
    if (i == w.size()) break;
    ++w[i];
  }
}

long RamifiedCompletion::valuation(const NfElem& x) const {
  if (x.is_zero()) throw ArithError("valuation of zero");
  return vp(x.norm(), p_);
}

std::vector<Rat> RamifiedCompletion::pi_coords(const NfElem& x) const {
  std::vector<Rat> b(static_cast<std::size_t>(e_), Rat(0));
  for (int i = 0; i < e_; ++i)
    for (int j = 0; j < e_; ++j) b[static_cast<std::size_t>(i)] += to_pi_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * x.coord(j);
  return b;
}

NfElem RamifiedCompletion::from_pi_coords(const std::vector<Rat>& b) const {
  NfElem out = pi_.zero_like(), pw = pi_.one_like();
  for (const auto& c : b) {
    out += c * pw;
    pw *= pi_;
  }
  return out;
}

std::vector<long> RamifiedCompletion::key(const NfElem& unit) const {
  auto b = pi_coords(unit);
  std::vector<long> k;
  for (int j = 0; j < e_; ++j)
    k.push_back(arith::rat_mod(b[static_cast<std::size_t>(j)], Int(key_moduli_[static_cast<std::size_t>(j)])).get_si());
  return k;
}

bool RamifiedCompletion::is_cube(const NfElem& x) const {
  if (x.is_zero()) return true;
  long v = valuation(x);
  if (((v % 3) + 3) % 3 != 0) return false;
  NfElem u = x * pi_.pow(-v);
  return cubes_.count(key(u)) > 0;
}

std::optional<NfElem> RamifiedCompletion::approximate_cube_root(const NfElem& x) const {
  long v = valuation(x);
  if (((v % 3) + 3) % 3 != 0) return std::nullopt;
  NfElem u = x * pi_.pow(-v);
  auto it = cubes_.find(key(u));
  if (it == cubes_.end()) return std::nullopt;
  std::vector<Rat> b(it->second.begin(), it->second.end());
  return from_pi_coords(b) * pi_.pow(v / 3);
}

NfElem RamifiedCompletion::truncate(const NfElem& x, long digits) const {
  // keep pi-basis coordinates modulo p^digits (absolute)
  auto b = pi_coords(x);
  for (auto& c : b) {
    if (arith::is_zero(c)) continue;
    long v = vp(c, p_);
    if (v >= digits) {
      c = 0;
      continue;
    }
    Rat scale = arith::pow_rat(Rat(p_), v);
    Int m = arith::pow_int(Int(p_), static_cast<unsigned long>(digits - v));
    c = scale * Rat(arith::rat_mod(c / scale, m));
  }
  return from_pi_coords(b);
}

std::optional<NfElem> RamifiedCompletion::cube_root(const NfElem& x, long digits) const {
  auto y0 = approximate_cube_root(x);
  if (!y0) return std::nullopt;
  long vx = valuation(x);
  long target = vx + digits;
  NfElem y = *y0;
  for (int iter = 0; iter < 64; ++iter) {
    NfElem r = y * y * y - x;
    if (r.is_zero() || valuation(r) >= target) return y;
    y = y - r / (y.from_int_like(3) * y * y);
    // absolute precision in units of p, with room for the valuation of x
    long keep = (target + 3 * e_) / e_ + 2 + std::max<long>(0, -vx / e_ + 1);
    y = truncate(y, keep);
  }
  throw ArithError("cube root iteration did not converge");
}

ProjectiveSystem descent_curve(const descent::CubicFormSystem& sys) { return ProjectiveSystem(4, {sys.Q[2], sys.Q[3]}); }

namespace {

struct Comp {
  std::shared_ptr<const RamifiedCompletion> loc;
  NfElem theta;
  NfElem delta;
  std::optional<Rat> root;  // rational image of theta for degree-one components
};

std::vector<Rat> lambda_classes(long p) {
  std::vector<Rat> units{Rat(1)};
  if (p == 3) {
    units = {Rat(1), Rat(4), Rat(16)};
  } else if (p % 3 == 1) {
    long g = 2;
    while (true) {
      long r = 1;
      for (long i = 0; i < (p - 1) / 3; ++i) r = r * g % p;
      if (r != 1) break;
      ++g;
    }
    units = {Rat(1), Rat(g), Rat(g * g)};
  }
  std::vector<Rat> out;
  for (int a = 0; a < 3; ++a)
    for (const auto& u : units) out.push_back(arith::pow_rat(Rat(p), a) * u);
  return out;
}

struct Ball {
  bool t_patch;  // false: (s:t) = (x:1), x in Z_p; true: (1:x), x in pZ_p
  Rat center;
  int k;
};

}  // namespace

LocalVerdict is_locally_soluble(const descent::CubicFormSystem& sys, long p, int max_depth) {
  const auto& alg = sys.delta.algebra();
  std::vector<Comp> comps;
  for (std::size_t i = 0; i < alg->components().size(); ++i) {
    const auto& ac = alg->components()[i];
    Comp c{RamifiedCompletion::get(ac.field, p), ac.theta_image, sys.delta.component(i), std::nullopt};
    if (ac.field->degree() == 1) c.root = ac.theta_image.coord(0);
    comps.push_back(std::move(c));
  }
  auto lambdas = lambda_classes(p);
  LocalVerdict out;
  out.p = p;

  // w_i at parameter x in the given patch
  auto w_at = [&](const Comp& c, bool tp, const Rat& x) {
    NfElem one = c.theta.one_like();
    return tp ? one - x * c.theta : x * one - c.theta;
  };
  auto root_param = [&](const Comp& c, bool tp) -> std::optional<Rat> {
    if (!c.root) return std::nullopt;
    if (!tp) {
      if (vp(*c.root, p) >= 0) return *c.root;
      return std::nullopt;
    }
    if (arith::is_zero(*c.root)) return std::nullopt;
    Rat inv = 1 / *c.root;
    if (vp(inv, p) >= 1) return inv;
    return std::nullopt;
  };

  auto decide = [&](bool tp, const Rat& x, std::optional<std::size_t> skip) -> std::optional<Rat> {
    for (const auto& lam : lambdas) {
      bool ok = true;
      for (std::size_t j = 0; j < comps.size() && ok; ++j) {
        if (skip && *skip == j) continue;
        NfElem z = lam * w_at(comps[j], tp, x) / comps[j].delta;
        if (!comps[j].loc->is_cube(z)) ok = false;
      }
      if (ok) return lam;
    }
    return std::nullopt;
  };

  auto certify = [&](bool tp, const Rat& x, const Rat& lam, std::optional<std::size_t> zero) -> std::optional<LiftCertificate> {
    ProjectiveSystem ps = descent_curve(sys);
    for (long digits : {40L, 80L, 160L}) {
      std::vector<NfElem> parts;
      bool ok = true;
      for (std::size_t j = 0; j < comps.size(); ++j) {
        if (zero && *zero == j) {
          parts.push_back(comps[j].theta.zero_like());
          continue;
        }
        NfElem z = lam * w_at(comps[j], tp, x) / comps[j].delta;
        auto r = comps[j].loc->cube_root(z, digits);
        if (!r) {
          ok = false;
          break;
        }
        parts.push_back(*r);
      }
      if (!ok) return std::nullopt;
      AlgElem Y = AlgElem::from_components(alg, parts);
      Int den = 1;
      for (const auto& c : Y.coords()) den = arith::lcm(den, Int(c.get_den()));
      std::vector<Int> y;
      for (const auto& c : Y.coords()) y.push_back(Rat(c * den).get_num());
      if (auto cert = certify_point(ps, p, y)) return cert;
    }
    return std::nullopt;
  };

  std::vector<Ball> stack;
  stack.push_back({true, Rat(0), 1});
  for (long a = p - 1; a >= 0; --a) stack.push_back({false, Rat(a), 1});
  bool undecided = false;

  while (!stack.empty()) {
    Ball b = stack.back();
    stack.pop_back();
    ++out.balls_examined;
    out.depth_searched = std::max(out.depth_searched, b.k);
    Rat pk = arith::pow_rat(Rat(p), b.k);

    std::vector<std::size_t> roots_in;
    std::optional<Rat> rho;
    for (std::size_t j = 0; j < comps.size(); ++j) {
      auto r = root_param(comps[j], b.t_patch);
      if (r && vp(*r - b.center, p) >= b.k) {
        roots_in.push_back(j);
        rho = r;
      }
    }
    bool constant = roots_in.size() <= 1;
    Rat x = rho && roots_in.size() == 1 ? *rho : b.center;
    std::optional<std::size_t> skip;
    if (roots_in.size() == 1) skip = roots_in[0];
    for (std::size_t j = 0; j < comps.size() && constant; ++j) {
      if (skip && *skip == j) continue;
      NfElem W = w_at(comps[j], b.t_patch, x);
      if (W.is_zero()) {
        constant = false;
        break;
      }
      const auto& L = *comps[j].loc;
      // w(x + p^k z) = W (1 + p^k z w'/W)
      long margin;
      if (b.t_patch) {
        if (comps[j].theta.is_zero()) continue;
        margin = b.k * L.e() + L.valuation(comps[j].theta) - L.valuation(W);
      } else {
        margin = b.k * L.e() - L.valuation(W);
      }
      if (margin < L.cube_radius()) constant = false;
    }
    if (constant) {
      auto lam = decide(b.t_patch, x, skip);
      if (!lam) continue;
      auto cert = certify(b.t_patch, x, *lam, skip);
      if (!cert) {
        undecided = true;
        continue;
      }
      out.status = LocalVerdict::Status::Soluble;
      out.witness = cert;
      out.base_point = b.t_patch ? param::STValue::ratio(Rat(1), x) : param::STValue::of(x);
      out.lambda = *lam;
      return out;
    }
    if (b.k >= max_depth) {
      undecided = true;
      continue;
    }
    for (long d = p - 1; d >= 0; --d) stack.push_back({b.t_patch, b.center + Rat(d) * pk, b.k + 1});
  }
  out.status = undecided ? LocalVerdict::Status::Undecided : LocalVerdict::Status::Insoluble;
  return out;
}

}  // namespace gfe::local
