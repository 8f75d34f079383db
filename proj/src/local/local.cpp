#include "gfe/local/local.hpp"

#include <algorithm>
#include <array>

namespace gfe::local {

namespace {

using u64 = std::uint64_t;
using i128 = __int128;

struct Term {
  u64 coef;
  std::array<int, 4> e;
};

/* Polynomial in four variables with coefficients reduced modulo m < 2^62. */
struct Compiled {
  std::vector<Term> terms;

  Compiled() = default;
  Compiled(const MPoly& f, u64 m) {
    Int M = static_cast<unsigned long>(m);
    for (const auto& [e, c] : f.terms()) {
      Term t{arith::rat_mod(c, M).get_ui(), {0, 0, 0, 0}};
      for (std::size_t i = 0; i < e.size() && i < 4; ++i) {
        if (e[i] > 3) throw arith::ArithError("local evaluation supports partial degrees up to 3");
        t.e[i] = e[i];
      }
      if (t.coef) terms.push_back(t);
    }
  }

  u64 eval(const std::array<std::array<u64, 4>, 4>& pw, u64 m) const {
    u64 acc = 0;
    for (const auto& t : terms) {
      u64 v = t.coef;
      for (int i = 0; i < 4; ++i)
        if (t.e[static_cast<std::size_t>(i)])
          v = static_cast<u64>(static_cast<i128>(v) * pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(t.e[static_cast<std::size_t>(i)])] % m);
      acc += v;
      if (acc >= m) acc -= m;
    }
    return acc;
  }
};

struct Context {
  long p;
  int N;  // working modulus p^N
  u64 M;
  std::vector<Compiled> F;
  std::vector<std::array<Compiled, 4>> dF;

  long val(u64 x) const {
    if (x == 0) return N;
    long v = 0;
    while (x % static_cast<u64>(p) == 0) {
      x /= static_cast<u64>(p);
      ++v;
    }
    return v;
  }

  std::array<std::array<u64, 4>, 4> powers(const std::array<u64, 4>& y) const {
    std::array<std::array<u64, 4>, 4> pw{};
    for (std::size_t i = 0; i < 4; ++i) {
      pw[i][0] = 1 % M;
      for (std::size_t k = 1; k < 4; ++k) pw[i][k] = static_cast<u64>(static_cast<i128>(pw[i][k - 1]) * y[i] % M);
    }
    return pw;
  }

  u64 submod(u64 a, u64 b) const { return a >= b ? a - b : a + M - b; }
  u64 mulmod(u64 a, u64 b) const { return static_cast<u64>(static_cast<i128>(a) * b % M); }
};

struct Ball {
  std::array<u64, 4> c;
  int k;
  int patch;
};

const long kCap = 1L << 40;

long exact_val(const Int& x, long p) { return x == 0 ? kCap : arith::valuation(x, Int(p)); }

}  // namespace

ProjectiveSystem::ProjectiveSystem(int nvars, const std::vector<MPoly>& forms) : nvars_(nvars) {
  for (const auto& f : forms) {
    if (f.nvars() != nvars) throw arith::ArithError("form has the wrong number of variables");
    if (f.is_zero()) {
      forms_.push_back(f);
      continue;
    }
    if (!f.is_homogeneous(f.total_degree())) throw arith::ArithError("projective system needs homogeneous forms");
    forms_.push_back(f.primitive_integer());
  }
}

bool LocalVerdict::soluble() const {
  if (status == Status::Undecided) throw Undecided(depth_searched);
  return status == Status::Soluble;
}

std::string LocalVerdict::status_name() const {
  switch (status) {
    case Status::Soluble:
      return "soluble";
    case Status::Insoluble:
      return "insoluble";
    default:
      return "undecided";
  }
}

LocalVerdict is_locally_soluble(const ProjectiveSystem& sys, long p, int max_depth) {
  if (sys.nvars() != 4 || sys.forms().size() != 2) throw arith::ArithError("expected two forms in four variables");
  if (max_depth < 1) throw arith::ArithError("max_depth must be at least 1");
  Context ctx;
  ctx.p = p;
  ctx.N = 0;
  ctx.M = 1;
  while (ctx.M <= (static_cast<u64>(1) << 62) / static_cast<u64>(p)) {
    ctx.M *= static_cast<u64>(p);
    ++ctx.N;
  }
  if (2 * max_depth + 2 > ctx.N) throw arith::ArithError("max_depth too large for the working precision");
  for (const auto& f : sys.forms()) {
    ctx.F.emplace_back(f, ctx.M);
    std::array<Compiled, 4> d;
    for (int j = 0; j < 4; ++j) d[static_cast<std::size_t>(j)] = Compiled(f.derivative(j), ctx.M);
    ctx.dF.push_back(d);
  }

  LocalVerdict out;
  out.p = p;
  bool undecided = false;
  std::vector<Ball> stack;
  u64 P = static_cast<u64>(p);
  for (int patch = 3; patch >= 0; --patch) {
    // residues mod p of the free coordinates; those before the patch index vanish mod p
    std::vector<int> free;
    for (int j = 0; j < 4; ++j)
      if (j != patch) free.push_back(j);
    u64 total = 1;
    for (int j : free)
      if (j > patch) total *= P;
    for (u64 idx = total; idx-- > 0;) {
      Ball b{{0, 0, 0, 0}, 1, patch};
      b.c[static_cast<std::size_t>(patch)] = 1;
      u64 r = idx;
      for (int j : free)
        if (j > patch) {
          b.c[static_cast<std::size_t>(j)] = r % P;
          r /= P;
        }
      stack.push_back(b);
    }
  }

  u64 pk_cache[64];
  pk_cache[0] = 1;
  for (int i = 1; i <= ctx.N; ++i) pk_cache[i] = pk_cache[i - 1] * P;

  while (!stack.empty()) {
    Ball b = stack.back();
    stack.pop_back();
    ++out.balls_examined;
    out.depth_searched = std::max(out.depth_searched, b.k);
    auto pw = ctx.powers(b.c);
    std::array<long, 2> v{};
    bool dead = false;
    for (std::size_t m = 0; m < 2; ++m) {
      v[m] = ctx.val(ctx.F[m].eval(pw, ctx.M));
      if (v[m] < b.k) dead = true;
    }
    if (dead) continue;
    std::vector<int> free;
    for (int j = 0; j < 4; ++j)
      if (j != b.patch) free.push_back(j);
    std::array<std::array<u64, 3>, 2> J{};
    for (std::size_t m = 0; m < 2; ++m)
      for (std::size_t a = 0; a < 3; ++a) J[m][a] = ctx.dF[m][static_cast<std::size_t>(free[a])].eval(pw, ctx.M);
    long best = kCap;
    std::array<int, 2> cols{0, 1};
    for (int a = 0; a < 3; ++a)
      for (int c = a + 1; c < 3; ++c) {
        u64 det = ctx.submod(ctx.mulmod(J[0][static_cast<std::size_t>(a)], J[1][static_cast<std::size_t>(c)]),
                             ctx.mulmod(J[0][static_cast<std::size_t>(c)], J[1][static_cast<std::size_t>(a)]));
        long dv = ctx.val(det);
        if (dv < best) {
          best = dv;
          cols = {free[static_cast<std::size_t>(a)], free[static_cast<std::size_t>(c)]};
        }
      }
    // v == N means "at least N"; the certificate still holds since N > 2 * best is required below
    if (best < ctx.N && std::min(v[0], v[1]) > 2 * best) {
      LiftCertificate cert;
      for (auto x : b.c) cert.point.push_back(Int(static_cast<unsigned long>(x)));
      cert.precision = b.k;
      cert.form_valuations = {v[0], v[1]};
      cert.minor_valuation = best;
      cert.minor_columns = {cols[0], cols[1]};
      cert.unit_column = b.patch;
      out.witness = cert;
      out.status = LocalVerdict::Status::Soluble;
      return out;
    }
    if (b.k >= max_depth) {
      undecided = true;
      continue;
    }
    u64 step = pk_cache[b.k];
    for (u64 idx = P * P * P; idx-- > 0;) {
      Ball ch = b;
      ch.k = b.k + 1;
      u64 r = idx;
      for (int j : free) {
        ch.c[static_cast<std::size_t>(j)] += (r % P) * step;
        r /= P;
      }
      stack.push_back(ch);
    }
  }
  out.status = undecided ? LocalVerdict::Status::Undecided : LocalVerdict::Status::Insoluble;
  return out;
}

bool verify_certificate(const ProjectiveSystem& sys, long p, const LiftCertificate& cert) {
  if (cert.point.size() != 4 || cert.minor_columns.size() != 2 || sys.forms().size() != 2) return false;
  int u = cert.unit_column, a = cert.minor_columns[0], b = cert.minor_columns[1];
  if (u < 0 || u > 3 || a == u || b == u || a == b) return false;
  if (exact_val(cert.point[static_cast<std::size_t>(u)], p) != 0) return false;
  std::vector<Rat> y(cert.point.begin(), cert.point.end());
  long vmin = kCap;
  for (const auto& f : sys.forms()) vmin = std::min(vmin, exact_val(f.eval(y).get_num(), p));
  const auto& F = sys.forms();
  auto d = [&](std::size_t m, int j) { return F[m].derivative(j).eval(y).get_num(); };
  Int det = d(0, a) * d(1, b) - d(0, b) * d(1, a);
  long mv = exact_val(det, p);
  return mv < kCap && vmin > 2 * mv;
}

std::optional<LiftCertificate> certify_point(const ProjectiveSystem& sys, long p, std::vector<Int> point) {
  if (point.size() != 4 || sys.forms().size() != 2) return std::nullopt;
  Int g = 0;
  for (const auto& c : point) g = arith::gcd(g, c);
  if (g == 0) return std::nullopt;
  for (auto& c : point) c /= g;
  std::vector<Rat> y(point.begin(), point.end());
  const auto& F = sys.forms();
  LiftCertificate cert;
  cert.point = point;
  long vmin = kCap;
  for (const auto& f : F) {
    long v = exact_val(f.eval(y).get_num(), p);
    cert.form_valuations.push_back(v);
    vmin = std::min(vmin, v);
  }
  std::array<std::array<Int, 4>, 2> J;
  for (std::size_t m = 0; m < 2; ++m)
    for (int j = 0; j < 4; ++j) J[m][static_cast<std::size_t>(j)] = F[m].derivative(j).eval(y).get_num();
  long best = kCap;
  for (int u = 0; u < 4; ++u) {
    if (exact_val(point[static_cast<std::size_t>(u)], p) != 0) continue;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        if (a == u || b == u) continue;
        Int det = J[0][static_cast<std::size_t>(a)] * J[1][static_cast<std::size_t>(b)] -
                  J[0][static_cast<std::size_t>(b)] * J[1][static_cast<std::size_t>(a)];
        long mv = exact_val(det, p);
        if (mv < best) {
          best = mv;
          cert.unit_column = u;
          cert.minor_columns = {a, b};
        }
      }
  }
  if (best >= kCap || vmin <= 2 * best) return std::nullopt;
  cert.minor_valuation = best;
  cert.precision = static_cast<int>(std::min<long>(vmin - best, 1 << 20));
  return cert;
}

std::vector<std::vector<long>> enumerate_points_mod_p(const ProjectiveSystem& sys, long p) {
  int n = sys.nvars();
  if (n > 4) throw arith::ArithError("enumerate_points_mod_p supports at most four variables");
  u64 P = static_cast<u64>(p);
  std::vector<Compiled> F;
  for (const auto& f : sys.forms()) F.emplace_back(f, P);
  std::vector<std::vector<long>> out;
  for (int lead = 0; lead < n; ++lead) {
    u64 total = 1;
    for (int j = lead + 1; j < n; ++j) total *= P;
    for (u64 idx = 0; idx < total; ++idx) {
      std::array<u64, 4> y{0, 0, 0, 0};
      y[static_cast<std::size_t>(lead)] = 1;
      u64 r = idx;
      for (int j = n - 1; j > lead; --j) {
        y[static_cast<std::size_t>(j)] = r % P;
        r /= P;
      }
      std::array<std::array<u64, 4>, 4> pw{};
      for (std::size_t i = 0; i < 4; ++i) {
        pw[i][0] = 1 % P;
        for (std::size_t k = 1; k < 4; ++k) pw[i][k] = pw[i][k - 1] * y[i] % P;
      }
      bool ok = true;
      for (const auto& f : F)
        if (f.eval(pw, P) != 0) ok = false;
      if (ok) out.emplace_back(y.begin(), y.begin() + n);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gfe::local
