#include "gfe/chabauty/chabauty.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>

namespace gfe::chabauty {

using arith::FqElem;
using arith::Int;
using arith::NfElem;
using ec::CurveFq;
using ec::KPrime;
using ec::PointFq;

std::string Combination::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < n.size(); ++i) s += (i ? ", " : "") + std::to_string(n[i]);
  s += "]";
  if (torsion) s += "+T" + std::to_string(torsion);
  return s;
}

PointK combination_point(const CurveK& E, const std::vector<PointK>& gens, const std::vector<PointK>& torsion,
                         const Combination& c) {
  PointK P = torsion.empty() ? PointK::at_infinity() : torsion[static_cast<std::size_t>(c.torsion)];
  for (std::size_t i = 0; i < gens.size(); ++i) P = E.add(P, E.mul(c.n[i], gens[i]));
  return P;
}

namespace {

std::optional<STValue> rational_value(const PsiK& psi, const PointK& P) {
  auto v = psi.eval(P);
  if (!v) return STValue::infinity();
  if (!v->is_rational()) return std::nullopt;
  return STValue::of(v->coord(0));
}

std::vector<PointK> with_identity(const std::vector<PointK>& torsion) {
  if (torsion.empty()) return {PointK::at_infinity()};
  if (!torsion[0].is_infinity()) throw ec::EcError("torsion list must start with O");
  return torsion;
}

/* Enumerates n in [lo, hi]^r. */
template <class Fn>
void for_each_vector(std::size_t r, long lo, long hi, Fn&& fn) {
  std::vector<long> n(r, lo);
  while (true) {
    fn(n);
    std::size_t i = 0;
    while (i < r && n[i] == hi) n[i++] = lo;
    if (i == r) return;
    ++n[i];
  }
}

/* psi = (ax x + ay y + a1) / (bx x + by y + b1); index 0..5 in that order. */
std::array<NfElem, 6> psi_coefficients(const PsiK& psi) {
  return {psi.num.cx, psi.num.cy, psi.num.c1, psi.den.cx, psi.den.cy, psi.den.c1};
}

/* Reduction value of psi at a point of the reduced curve: nullopt for indeterminate,
   -1 for infinity, -2 for a value outside F_p, else the value in [0, p). */
std::optional<long> reduced_value(const std::array<FqElem, 6>& c, const PointFq& P) {
  FqElem n, d;
  if (P.is_infinity()) {
    n = c[1];
    d = c[4];
  } else {
    n = c[0] * P.x + c[1] * P.y + c[2];
    d = c[3] * P.x + c[4] * P.y + c[5];
  }
  if (n.is_zero() && d.is_zero()) return std::nullopt;
  if (d.is_zero()) return -1;
  FqElem v = n / d;
  const auto& co = v.coords();
  for (int j = 1; j < v.field()->degree(); ++j)
    if (co[static_cast<std::size_t>(j)] != 0) return -2;
  return co[0];
}

struct ReducedPrime {
  KPrime P;
  CurveFq Eb;
  std::vector<PointFq> gens, tors;
  std::array<FqElem, 6> psi;
  std::vector<std::vector<PointFq>> multiples;  // multiples[i][k] = k gens[i]
};

/* Scales psi's coefficients in the completion at P to be integral with one unit. */
std::array<PadicElem, 6> normalized_psi(const PsiK& psi, const KPrime& P) {
  auto c = psi_coefficients(psi);
  std::array<PadicElem, 6> e;
  long vmin = arith::kExactPrecision;
  for (std::size_t i = 0; i < 6; ++i) {
    e[i] = ec::embed_at(c[i], P);
    if (!e[i].is_zero()) vmin = std::min(vmin, e[i].valuation());
  }
  if (vmin == arith::kExactPrecision) throw ec::EcError("psi is identically undefined");
  PadicElem s = PadicElem::from_rat(P.completion, Rat(1) / Rat(arith::pow_int(Int(P.p), static_cast<unsigned long>(std::abs(vmin)))));
  if (vmin < 0) s = s.inverse();
  for (auto& x : e) x = x * s;
  return e;
}

std::vector<ReducedPrime> reduced_primes(const CurveK& E, const std::vector<PointK>& gens, const std::vector<PointK>& tors,
                                         const PsiK& psi, long p) {
  std::vector<ReducedPrime> out;
  for (auto& P : ec::primes_above(E.a6().field(), p)) {
    ReducedPrime R{P, ec::reduce_curve(E, P), {}, {}, {}, {}};
    for (auto& g : gens) R.gens.push_back(ec::reduce_point(g, P));
    for (auto& t : tors) R.tors.push_back(ec::reduce_point(t, P));
    auto e = normalized_psi(psi, P);
    for (std::size_t i = 0; i < 6; ++i)
      R.psi[i] = e[i].is_zero() ? FqElem::from_int(P.residue, 0) : FqElem::from_coords(P.residue, e[i].residue());
    out.push_back(std::move(R));
  }
  return out;
}

long generator_exponent(const std::vector<ReducedPrime>& rp) {
  long M = 1;
  for (auto& R : rp) {
    std::int64_t N = ec::count_points(R.Eb);
    for (auto& g : R.gens) M = std::lcm(M, static_cast<long>(ec::point_order(R.Eb, g, N)));
  }
  return M;
}

}  // namespace

std::vector<std::pair<Combination, STValue>> known_rational_points(const CurveK& E, const std::vector<PointK>& gens,
                                                                  const std::vector<PointK>& torsion, const PsiK& psi,
                                                                  int bound) {
  auto tors = with_identity(torsion);
  std::vector<std::vector<PointK>> mult(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (long k = -bound; k <= bound; ++k) mult[i].push_back(E.mul(k, gens[i]));
  std::vector<std::pair<Combination, STValue>> out;
  for (std::size_t t = 0; t < tors.size(); ++t)
    for_each_vector(gens.size(), -bound, bound, [&](const std::vector<long>& n) {
      PointK P = tors[t];
      for (std::size_t i = 0; i < gens.size(); ++i) P = E.add(P, mult[i][static_cast<std::size_t>(n[i] + bound)]);
      if (auto v = rational_value(psi, P)) out.push_back({Combination{n, static_cast<int>(t)}, *v});
    });
  return out;
}

SieveResult residue_sieve(const CurveK& E, const std::vector<PointK>& gens, const std::vector<PointK>& torsion,
                          const PsiK& psi, const std::vector<long>& primes) {
  auto tors = with_identity(torsion);
  std::vector<std::vector<ReducedPrime>> per;
  SieveResult res;
  res.primes = primes;
  for (long p : primes) {
    per.push_back(reduced_primes(E, gens, tors, psi, p));
    res.modulus = std::lcm(res.modulus, generator_exponent(per.back()));
  }
  long M = res.modulus;
  double count = static_cast<double>(tors.size()) * std::pow(static_cast<double>(M), static_cast<double>(gens.size()));
  if (count > 5e6) throw ec::EcError("residue sieve: " + std::to_string(static_cast<long>(count)) + " classes");
  for (auto& rp : per)
    for (auto& R : rp) {
      R.multiples.assign(gens.size(), {});
      for (std::size_t i = 0; i < gens.size(); ++i) {
        PointFq acc = PointFq::at_infinity();
        for (long k = 0; k < M; ++k) {
          R.multiples[i].push_back(acc);
          acc = R.Eb.add(acc, R.gens[i]);
        }
      }
    }
  for (std::size_t t = 0; t < tors.size(); ++t)
    for_each_vector(gens.size(), 0, M - 1, [&](const std::vector<long>& n) {
      ++res.total;
      for (auto& rp : per) {
        std::optional<long> common;
        bool alive = true, indeterminate = false;
        for (auto& R : rp) {
          PointFq P = R.tors[t];
          for (std::size_t i = 0; i < gens.size(); ++i) P = R.Eb.add(P, R.multiples[i][static_cast<std::size_t>(n[i])]);
          auto v = reduced_value(R.psi, P);
          if (!v) {
            indeterminate = true;
            continue;
          }
          if (*v == -2 || (common && *common != *v)) {
            alive = false;
            break;
          }
          common = *v;
        }
        (void)indeterminate;
        if (!alive) return;
      }
      res.survivors.push_back(Combination{n, static_cast<int>(t)});
    });
  return res;
}

namespace {

bool reduces_to_O(const PointQp& P) { return P.is_infinity() || (!P.x.is_zero() && P.x.valuation() < 0); }

struct LocalPrime {
  KPrime P;
  CurveQp Ep;
  PadicElem B;
  std::array<PadicElem, 6> psi;  // normalized
  std::vector<PointQp> gens, tors;
};

struct LocalClass {
  bool direct = false;
  PointQp P0;
  PadicElem L0;
  std::vector<PointQp> Q;
  std::vector<PadicElem> ell;
};

struct Engine {
  const CurveK& E;
  const std::vector<PointK>& gens;
  const std::vector<PointK>& tors;
  const PsiK& psi;
  ChabautyOptions opt;
  long p = 0;
  std::size_t r = 0;
  std::vector<LocalPrime> primes;
  std::vector<std::vector<PointQp>> Qtop;  // M g_i per prime
  std::vector<std::vector<PadicElem>> elltop;
  std::shared_ptr<const MonomialBasis> basis;
  bool precision_trouble = false;

  Engine(const CurveK& E_, const std::vector<PointK>& g, const std::vector<PointK>& t, const PsiK& s, ChabautyOptions o,
         long p_, long M)
      : E(E_), gens(g), tors(t), psi(s), opt(o), p(p_), r(g.size()) {
    basis = MonomialBasis::get(static_cast<int>(r), opt.series_degree);
    for (auto& P : ec::primes_above(E.a6().field(), p, opt.precision)) {
      LocalPrime L{P, ec::embed_curve(E, P), ec::embed_at(E.a6(), P), normalized_psi(psi, P), {}, {}};
      for (auto& x : gens) L.gens.push_back(ec::embed_point(x, P));
      for (auto& x : tors) L.tors.push_back(ec::embed_point(x, P));
      std::vector<PointQp> Q;
      std::vector<PadicElem> ell;
      for (auto& x : L.gens) {
        PointQp q = L.Ep.mul(M, x);
        if (!reduces_to_O(q)) throw ec::EcError("modulus does not kill the reduction");
        Q.push_back(q);
        ell.push_back(jzero_log(L.B, -(q.x / q.y)));
      }
      Qtop.push_back(Q);
      elltop.push_back(ell);
      primes.push_back(std::move(L));
    }
  }

  LocalClass base_class(std::size_t k, const Combination& c, const std::optional<PointK>& exact) {
    LocalPrime& L = primes[k];
    LocalClass lc;
    if (exact) {
      lc.P0 = ec::embed_point(*exact, L.P);
    } else {
      PointQp P = L.tors[static_cast<std::size_t>(c.torsion)];
      for (std::size_t i = 0; i < r; ++i) P = L.Ep.add(P, L.Ep.mul(c.n[i], L.gens[i]));
      lc.P0 = P;
    }
    lc.Q = Qtop[k];
    lc.ell = elltop[k];
    lc.direct = reduces_to_O(lc.P0);
    if (lc.direct) lc.L0 = lc.P0.is_infinity() ? PadicElem::zero(L.P.completion) : jzero_log(L.B, -(lc.P0.x / lc.P0.y));
    return lc;
  }

  LocalClass child_class(std::size_t k, const LocalClass& parent, const std::vector<long>& offset) {
    LocalPrime& L = primes[k];
    LocalClass lc = parent;
    if (parent.direct) {
      for (std::size_t i = 0; i < r; ++i) lc.L0 += PadicElem::from_int(L.P.completion, Int(offset[i])) * parent.ell[i];
    } else {
      PointQp P = parent.P0;
      for (std::size_t i = 0; i < r; ++i) P = L.Ep.add(P, L.Ep.mul(offset[i], parent.Q[i]));
      lc.P0 = P;
    }
    PadicElem pp = PadicElem::from_int(L.P.completion, Int(p));
    for (std::size_t i = 0; i < r; ++i) {
      lc.Q[i] = L.Ep.mul(p, parent.Q[i]);
      lc.ell[i] = parent.ell[i] * pp;
    }
    return lc;
  }

  /* exp of the formal group composed with S */
  MSeries exp_series(const PadicElem& B, const MSeries& S) {
    const auto& fg = JZeroFormalGroup::get(opt.precision);
    int K = S.constant_term().is_zero() ? opt.series_degree / 6 + 1 : series_degree_for(p, opt.precision + 2) / 6 + 1;
    MSeries S6 = S.pow(6);
    const auto& F = B.field();
    std::vector<PadicElem> Bk{PadicElem::from_int(F, 1)};
    for (int k = 1; k <= K; ++k) Bk.push_back(Bk.back() * B);
    MSeries acc = MSeries::constant(basis, PadicElem::from_rat(F, fg.exp_coeff[static_cast<std::size_t>(K)]) * Bk[static_cast<std::size_t>(K)]);
    for (int k = K - 1; k >= 0; --k) {
      acc = acc * S6;
      acc.coeff(0) += PadicElem::from_rat(F, fg.exp_coeff[static_cast<std::size_t>(k)]) * Bk[static_cast<std::size_t>(k)];
    }
    return acc * S;
  }

  /* psi (or 1/psi) on the class as a series in m */
  MSeries psi_series(std::size_t k, const LocalClass& lc, bool inverted) {
    LocalPrime& L = primes[k];
    const auto& F = L.P.completion;
    auto c = L.psi;
    if (inverted)
      for (std::size_t i = 0; i < 3; ++i) std::swap(c[i], c[i + 3]);
    PadicElem zero = PadicElem::zero(F);
    MSeries S = MSeries::linear(basis, lc.direct ? lc.L0 : zero, lc.ell);
    MSeries z = exp_series(L.B, S);
    const auto& fg = JZeroFormalGroup::get(opt.precision);
    if (lc.direct) {
      // x w = z, y w = -1 with w = z^3 w-hat(B z^6)
      int K = series_degree_for(p, opt.precision + 2) / 6 + 1;
      MSeries t = z.pow(6).scaled(L.B);
      MSeries acc = MSeries::constant(basis, PadicElem::from_rat(F, fg.wcoeff[static_cast<std::size_t>(K)]));
      for (int j = K - 1; j >= 0; --j) {
        acc = acc * t;
        acc.coeff(0) += PadicElem::from_rat(F, fg.wcoeff[static_cast<std::size_t>(j)]);
      }
      MSeries w = z.pow(3) * acc;
      MSeries one = MSeries::constant(basis, PadicElem::from_int(F, 1));
      MSeries num = z.scaled(c[0]) - one.scaled(c[1]) + w.scaled(c[2]);
      MSeries den = z.scaled(c[3]) - one.scaled(c[4]) + w.scaled(c[5]);
      if (den.constant_term().is_zero() || den.constant_term().valuation() != 0)
        throw ec::EcError("psi indeterminate on the class");
      return num * den.inverse();
    }
    std::size_t Lz = static_cast<std::size_t>(opt.series_degree) + 4;
    const PadicElem& x0 = lc.P0.x;
    const PadicElem& y0 = lc.P0.y;
    USeries u(Lz, zero);
    {
      PadicElem Bk = PadicElem::from_int(F, 1);
      for (std::size_t j = 0; 6 * j < Lz; ++j) {
        u[6 * j] = PadicElem::from_rat(F, fg.wcoeff[j]) * Bk;
        Bk *= L.B;
      }
    }
    auto shifted = [&](const USeries& s, std::size_t k2, const PadicElem& c2) {
      USeries o(Lz, zero);
      for (std::size_t i = 0; i + k2 < Lz; ++i) o[i + k2] = c2 * s[i];
      return o;
    };
    USeries one(Lz, zero);
    one[0] = PadicElem::from_int(F, 1);
    auto add = [&](const USeries& a, const USeries& b) {
      USeries o = a;
      for (std::size_t i = 0; i < Lz; ++i) o[i] += b[i];
      return o;
    };
    // Lambda = -(1 + y0 z^3 u) / (1 - x0 z^2 u)
    USeries numL = add(one, shifted(u, 3, y0));
    USeries denL = add(one, shifted(u, 2, -x0));
    USeries Lam = useries_mul(numL, useries_inverse(denL, Lz), Lz);
    for (auto& e : Lam) e = -e;
    USeries A = useries_mul(Lam, Lam, Lz);
    USeries ui = useries_inverse(u, Lz);
    for (std::size_t i = 0; i < Lz; ++i) A[i] -= ui[i];
    USeries X3 = useries_shift(A, 2);
    X3[0] -= x0;
    USeries T = X3;
    T[0] -= x0;
    T = useries_shift(T, 1);
    std::size_t Ly = T.size();
    USeries Y3 = useries_mul(Lam, T, Ly);
    Y3[0] += y0;
    for (auto& e : Y3) e = -e;
    X3.resize(Ly);
    USeries num(Ly, zero), den(Ly, zero);
    for (std::size_t i = 0; i < Ly; ++i) {
      num[i] = c[0] * X3[i] + c[1] * Y3[i];
      den[i] = c[3] * X3[i] + c[4] * Y3[i];
    }
    num[0] += c[2];
    den[0] += c[5];
    if (den[0].is_zero() || den[0].valuation() != 0) throw ec::EcError("psi indeterminate on the class");
    USeries G = useries_mul(num, useries_inverse(den, Ly), Ly);
    return MSeries::compose(G, z);
  }

  /* Q_p-valued series vanishing exactly when psi is rational on the class */
  std::vector<MSeries> equations(const std::vector<LocalClass>& lcs, bool inverted) {
    std::vector<MSeries> psis;
    for (std::size_t k = 0; k < primes.size(); ++k) psis.push_back(psi_series(k, lcs[k], inverted));
    std::optional<std::size_t> base;
    for (std::size_t k = 0; k < primes.size(); ++k)
      if (primes[k].P.f == 1) {
        base = k;
        break;
      }
    std::vector<MSeries> eqs;
    MSeries ref = base ? psis[*base] : psis[0].coordinate(0);
    for (std::size_t k = 0; k < primes.size(); ++k) {
      if (base && k == *base) continue;
      int f = primes[k].P.f;
      if (f == 1) {
        eqs.push_back(psis[k] - ref);
        continue;
      }
      for (int j = 1; j < f; ++j) eqs.push_back(psis[k].coordinate(j));
      if (base || k != 0) eqs.push_back(psis[k].coordinate(0) - ref);
    }
    return eqs;
  }

  long tail_bound(const std::vector<LocalClass>& lcs) {
    long vl = arith::kExactPrecision;
    for (auto& lc : lcs)
      for (auto& l : lc.ell) vl = std::min(vl, valuation_lower_bound(l));
    double D = opt.series_degree;
    return static_cast<long>(std::floor(static_cast<double>(D + 1) * static_cast<double>(vl) - D / static_cast<double>(p - 1)));
  }

  static std::string vstr(long v) { return v >= arith::kExactPrecision / 2 ? "inf" : std::to_string(v); }

  bool try_close(const std::vector<MSeries>& eqs, int known, long tail, ClassRecord& rec) {
    const auto& B = *basis;
    if (r == 1 || r == 0) {
      int best = -1;
      std::string det;
      for (std::size_t j = 0; j < eqs.size(); ++j) {
        std::vector<PadicElem> c(eqs[j].size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = eqs[j].coeff(i);
        if (known == 1) c[0] = PadicElem::zero(c[0].field());
        try {
          auto s = strassman_zero_bound(c, tail);
          if (best < 0 || s.bound < best) {
            best = s.bound;
            det = "equation " + std::to_string(j) + ", dominant valuation " + std::to_string(s.min_valuation) + ", tail " +
                  std::to_string(tail);
          }
        } catch (const PrecisionTooLow&) {
          precision_trouble = true;
        }
      }
      rec.mechanism = "strassman";
      rec.bound = best;
      rec.detail = det;
      return best == known;
    }
    if (known == 0) {
      for (std::size_t j = 0; j < eqs.size(); ++j) {
        const PadicElem& c0 = eqs[j].constant_term();
        if (!certified_nonzero(c0)) continue;
        long rest = tail;
        for (std::size_t i = 1; i < eqs[j].size(); ++i) rest = std::min(rest, valuation_lower_bound(eqs[j].coeff(i)));
        if (c0.valuation() < rest) {
          rec.mechanism = "constant";
          rec.bound = 0;
          rec.detail = "equation " + std::to_string(j) + ": v(F(0)) = " + std::to_string(c0.valuation()) +
                       " < " + vstr(rest);
          return true;
        }
      }
      rec.mechanism = "constant";
      rec.bound = -1;
      return false;
    }
    if (known == 1 && r == 2) {
      int i1 = B.index_of({1, 0}), i2 = B.index_of({0, 1});
      for (std::size_t a = 0; a < eqs.size(); ++a)
        for (std::size_t b = a + 1; b < eqs.size(); ++b) {
          const PadicElem &j00 = eqs[a].coeff(static_cast<std::size_t>(i1)), &j01 = eqs[a].coeff(static_cast<std::size_t>(i2)),
                           &j10 = eqs[b].coeff(static_cast<std::size_t>(i1)), &j11 = eqs[b].coeff(static_cast<std::size_t>(i2));
          PadicElem det = j00 * j11 - j01 * j10;
          if (!certified_nonzero(det)) continue;
          long alpha = std::min({valuation_lower_bound(j00), valuation_lower_bound(j01), valuation_lower_bound(j10),
                                 valuation_lower_bound(j11)});
          long h = tail;
          for (std::size_t i = 0; i < B.exps.size(); ++i)
            if (B.degree[i] >= 2) h = std::min({h, valuation_lower_bound(eqs[a].coeff(i)), valuation_lower_bound(eqs[b].coeff(i))});
          if (det.valuation() < alpha + h) {
            rec.mechanism = "hensel";
            rec.bound = 1;
            rec.detail = "equations " + std::to_string(a) + "," + std::to_string(b) + ": v(det J) = " +
                         std::to_string(det.valuation()) + " < " + std::to_string(alpha) + " + " + std::to_string(h);
            return true;
          }
        }
      rec.mechanism = "hensel";
      rec.bound = -1;
      return false;
    }
    rec.bound = -1;
    return false;
  }

  /* offsets of known points relative to the class base, in units of the class step */
  bool close(const std::vector<LocalClass>& lcs, const std::vector<std::vector<long>>& known, bool inverted, int depth,
             ClassRecord& rec) {
    rec.p = p;
    rec.depth = depth;
    rec.known = static_cast<int>(known.size());
    bool ok = false;
    try {
      auto eqs = equations(lcs, inverted);
      if (known.size() <= 1) ok = try_close(eqs, static_cast<int>(known.size()), tail_bound(lcs), rec);
    } catch (const PrecisionTooLow& e) {
      precision_trouble = true;
      rec.detail = e.what();
    } catch (const ec::EcError& e) {
      rec.detail = e.what();
    }
    if (ok) {
      rec.closed = true;
      return true;
    }
    if (depth >= opt.max_refinement_depth || r == 0) return false;
    rec.mechanism = "refined";
    rec.children.clear();
    bool all = true;
    for_each_vector(r, 0, p - 1, [&](const std::vector<long>& m0) {
      if (!all) return;
      std::vector<std::vector<long>> inside;
      for (auto& mu : known) {
        bool in = true;
        for (std::size_t i = 0; i < r; ++i)
          if (arith::mod_pos(Int(mu[i] - m0[i]), Int(p)) != 0) in = false;
        if (in) inside.push_back(mu);
      }
      std::vector<long> offset = inside.empty() ? m0 : inside[0];
      std::vector<std::vector<long>> sub;
      for (auto& mu : inside) {
        std::vector<long> v(r);
        for (std::size_t i = 0; i < r; ++i) v[i] = (mu[i] - offset[i]) / p;
        sub.push_back(v);
      }
      std::vector<LocalClass> child;
      for (std::size_t k = 0; k < primes.size(); ++k) child.push_back(child_class(k, lcs[k], offset));
      ClassRecord cr;
      cr.cls.n = offset;
      cr.modulus = p;
      if (!close(child, sub, inverted, depth + 1, cr)) all = false;
      rec.children.push_back(std::move(cr));
    });
    rec.closed = all;
    return all;
  }
};

bool audit_record(const ClassRecord& r) {
  if (!r.closed) return false;
  if (r.mechanism == "refined") {
    for (auto& c : r.children)
      if (!audit_record(c)) return false;
    return !r.children.empty();
  }
  return r.bound == r.known;
}

}  // namespace

bool audit(const ChabautyOutcome& out) {
  if (!out.complete()) return false;
  for (auto& r : out.certificate)
    if (!audit_record(r)) return false;
  for (auto& v : out.values)
    if (!out.witnesses.count(v)) return false;
  return true;
}

namespace {

ChabautyOutcome run_at(const CurveK& E, const std::vector<PointK>& gens, const std::vector<PointK>& tors, const PsiK& psi,
                       const std::vector<long>& stage_primes, const std::vector<std::pair<Combination, STValue>>& known,
                       const ChabautyOptions& opt, bool& precision_trouble) {
  ChabautyOutcome out;
  out.primes = stage_primes;
  out.precision = opt.precision;
  auto sieve = residue_sieve(E, gens, tors, psi, stage_primes);
  out.modulus = sieve.modulus;
  out.classes_total = sieve.total;
  out.classes_excluded = sieve.total - sieve.survivors.size();
  long M = sieve.modulus;
  std::size_t r = gens.size();
  std::vector<Engine> engines;
  if (r > 0)
    for (long p : stage_primes) engines.emplace_back(E, gens, tors, psi, opt, p, M);
  std::vector<ReducedPrime> red = reduced_primes(E, gens, tors, psi, stage_primes[0]);
  for (auto& cls : sieve.survivors) {
    ClassRecord rec;
    rec.cls = cls;
    rec.modulus = M;
    std::vector<std::vector<long>> mus;
    std::optional<PointK> base_exact;
    Combination base = cls;
    for (auto& [c, v] : known) {
      if (c.torsion != cls.torsion) continue;
      bool in = true;
      for (std::size_t i = 0; i < r; ++i)
        if (arith::mod_pos(Int(c.n[i] - cls.n[i]), Int(M)) != 0) in = false;
      if (!in) continue;
      if (!base_exact) {
        base = c;
        base_exact = combination_point(E, gens, tors, c);
      }
      std::vector<long> mu(r);
      for (std::size_t i = 0; i < r; ++i) mu[i] = (c.n[i] - base.n[i]) / M;
      mus.push_back(mu);
    }
    if (r == 0) {
      rec.mechanism = "exact";
      rec.p = stage_primes[0];
      rec.known = static_cast<int>(mus.size());
      rec.bound = rec.known;
      rec.closed = true;
      rec.detail = mus.empty() ? "psi value not rational" : "psi value rational";
      out.certificate.push_back(rec);
      continue;
    }
    bool closed = false;
    for (auto& eng : engines) {
      // the class value in P^1(F_p) decides whether 1/psi is used
      bool inverted = false;
      {
        auto rp = reduced_primes(E, gens, tors, psi, eng.p);
        for (auto& R : rp) {
          PointFq P = R.tors[static_cast<std::size_t>(cls.torsion)];
          for (std::size_t i = 0; i < r; ++i) P = R.Eb.add(P, R.Eb.mul(cls.n[i], R.gens[i]));
          auto v = reduced_value(R.psi, P);
          if (v) {
            inverted = (*v == -1);
            break;
          }
        }
      }
      std::vector<LocalClass> lcs;
      for (std::size_t k = 0; k < eng.primes.size(); ++k)
        lcs.push_back(eng.base_class(k, base, base_exact));
      ClassRecord attempt = rec;
      if (eng.close(lcs, mus, inverted, 0, attempt)) {
        rec = attempt;
        closed = true;
        break;
      }
      rec = attempt;
    }
    for (auto& eng : engines) precision_trouble = precision_trouble || eng.precision_trouble;
    out.certificate.push_back(rec);
    if (!closed) {
      out.status = ChabautyOutcome::Status::Inconclusive;
      out.reason = "class " + cls.to_string() + " mod " + std::to_string(M) + " not closed: " + rec.detail;
      return out;
    }
  }
  out.status = ChabautyOutcome::Status::Complete;
  return out;
}

}  // namespace

ChabautyOutcome rational_st_values(const CurveK& E, const std::vector<PointK>& gens, const std::vector<PointK>& torsion,
                                   const PsiK& psi, const std::vector<long>& primes, const ChabautyOptions& opt) {
  if (gens.size() >= static_cast<std::size_t>(E.a6().field()->degree()))
    throw RankConditionViolated("rank " + std::to_string(gens.size()) + " is not below the field degree");
  if (!E.is_short() || !E.a4().is_zero()) throw ec::EcError("rational_st_values expects y^2 = x^3 + B");
  auto tors = with_identity(torsion);
  auto known = known_rational_points(E, gens, tors, psi, opt.search_bound);
  std::vector<std::vector<long>> stages;
  for (long p : primes) stages.push_back({p});
  if (primes.size() > 1) stages.push_back(primes);
  std::vector<std::string> attempts;
  ChabautyOptions cur = opt;
  for (int round = 0; round < 2; ++round) {
    bool trouble = false;
    for (auto& st : stages) {
      std::string label;
      for (auto q : st) label += (label.empty() ? "" : "+") + std::to_string(q);
      try {
        auto out = run_at(E, gens, tors, psi, st, known, cur, trouble);
        if (out.complete()) {
          for (auto& [c, v] : known)
            if (!out.witnesses.count(v)) {
              out.witnesses[v] = c;
              out.values.push_back(v);
            }
          std::sort(out.values.begin(), out.values.end());
          attempts.push_back(label + " at precision " + std::to_string(cur.precision) + ": complete");
          out.attempts = attempts;
          return out;
        }
        attempts.push_back(label + " at precision " + std::to_string(cur.precision) + ": " + out.reason);
      } catch (const ec::BadPrime& e) {
        attempts.push_back(label + ": bad prime (" + std::string(e.what()) + ")");
      } catch (const ec::EcError& e) {
        attempts.push_back(label + ": " + std::string(e.what()));
      }
    }
    if (!trouble) break;
    cur.precision *= 2;
  }
  ChabautyOutcome out;
  out.status = ChabautyOutcome::Status::Inconclusive;
  out.reason = attempts.empty() ? "no primes" : attempts.back();
  out.attempts = attempts;
  out.precision = cur.precision;
  for (auto& [c, v] : known)
    if (!out.witnesses.count(v)) {
      out.witnesses[v] = c;
      out.values.push_back(v);
    }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

}  // namespace gfe::chabauty
