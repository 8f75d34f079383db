#include <gtest/gtest.h>

#include <random>

#include "gfe/chabauty/chabauty.hpp"
#include "gfe/ec/models.hpp"
#include "gfe/pipeline/data.hpp"

using namespace gfe::chabauty;
using gfe::arith::Int;
using gfe::arith::LocalField;
using gfe::arith::NfElem;
using gfe::arith::Rat;
using gfe::ec::KPrime;

namespace {

const gfe::pipeline::DataSet& data() {
  static gfe::pipeline::DataSet d;
  return d;
}

NfElem el(const std::vector<long>& c) {
  std::vector<Rat> r(c.begin(), c.end());
  return NfElem(data().K, r);
}

struct Case {
  int eq;
  std::size_t row;
  int curve;
  CurveK E;
  std::vector<PointK> gens;
  PsiK psi;
  STValue expected;
};

std::vector<Case> curve_cases() {
  std::vector<Case> out;
  auto mw = data().mw_curves();
  for (int eq : {1, 2}) {
    auto spec = data().selmer(eq);
    auto rows = data().curve_rows(eq);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto& row = rows[i];
      auto q = gfe::descent::genus1_quotients(gfe::arith::AlgElem::from_components(spec.algebra, {row.delta}))[0];
      auto& C = mw[static_cast<std::size_t>(row.curve - 1)];
      auto m = *gfe::ec::model_onto(gfe::ec::quotient_cubic(q), *gfe::ec::field_flex(q), C.B);
      std::vector<PointK> gens;
      for (auto& [x, y] : C.points) gens.push_back(PointK::affine(x, y));
      out.push_back({eq, i, row.curve, CurveK::short_form(C.B.zero_like(), C.B), gens, m.st_function(), row.st_p0});
    }
  }
  return out;
}

const std::vector<Case>& cases() {
  static std::vector<Case> c = curve_cases();
  return c;
}

const std::vector<ChabautyOutcome>& outcomes() {
  static std::vector<ChabautyOutcome> o = [] {
    std::vector<ChabautyOutcome> r;
    for (auto& c : cases()) r.push_back(rational_st_values(c.E, c.gens, {}, c.psi, {11, 31}));
    return r;
  }();
  return o;
}

PadicElem qp(long p, const Int& n, int prec = 20) { return PadicElem::from_int(gfe::arith::LocalField::qp(p, prec), n); }

}  // namespace

TEST(Series, StrassmanExamples) {
  auto K = LocalField::qp(11, 20);
  auto c = [&](long n) { return PadicElem::from_int(K, Int(n)); };
  auto s = strassman_zero_bound({PadicElem::zero(K), c(1)}, 100);
  EXPECT_EQ(s.bound, 1);
  s = strassman_zero_bound({PadicElem::zero(K), c(11), c(1)}, 100);
  EXPECT_EQ(s.bound, 2);
  EXPECT_EQ(s.min_valuation, 0);
  std::vector<std::pair<int, long>> hull{{1, 1}, {2, 0}};
  EXPECT_EQ(s.vertices, hull);
  s = strassman_zero_bound({c(11), c(121), c(1331 * 3)}, 100);
  EXPECT_EQ(s.bound, 0);
  EXPECT_THROW(strassman_zero_bound({c(11), PadicElem::zero(K, 1)}, 100), PrecisionTooLow);
  EXPECT_THROW(strassman_zero_bound({c(11), c(1)}, 0), PrecisionTooLow);
  EXPECT_THROW(strassman_zero_bound({PadicElem::zero(K, 5)}, 100), PrecisionTooLow);
}

TEST(Series, MultivariateInverseRandom) {
  std::mt19937_64 rng(7717);
  auto K = LocalField::qp(11, 25);
  auto basis = MonomialBasis::get(2, 5);
  std::uniform_int_distribution<long> d(-500, 500);
  for (int it = 0; it < 200; ++it) {
    MSeries f(basis, K), g(basis, K);
    for (std::size_t i = 0; i < f.size(); ++i) {
      f.coeff(i) = PadicElem::from_int(K, Int(d(rng)));
      g.coeff(i) = PadicElem::from_int(K, Int(d(rng)));
    }
    if (g.constant_term().is_zero() || g.constant_term().valuation() > 0) g.coeff(0) += PadicElem::from_int(K, 1);
    if (g.constant_term().is_zero()) g.coeff(0) = PadicElem::from_int(K, 1);
    MSeries h = (f * g) * g.inverse() - f;
    for (std::size_t i = 0; i < h.size(); ++i) ASSERT_TRUE(h.coeff(i).is_zero()) << it << " " << i;
  }
}

TEST(Formal, LogOfIdentityAndLowCoefficients) {
  auto E = gfe::ec::CurveQp::short_form(qp(11, 0), qp(11, 5));
  EXPECT_TRUE(formal_log(E, PointQp::at_infinity(), 10).is_zero());
  const auto& fg = JZeroFormalGroup::get(4);
  EXPECT_EQ(fg.log_coeff[0], Rat(1));
  EXPECT_EQ(fg.log_coeff[1], Rat(3, 7));
  EXPECT_EQ(fg.wcoeff[1], Rat(1));
  EXPECT_EQ(fg.wcoeff[2], Rat(3));
  EXPECT_EQ(fg.wcoeff[3], Rat(12));
  EXPECT_EQ(fg.exp_coeff[0], Rat(1));
  EXPECT_EQ(fg.exp_coeff[1], Rat(-3, 7));
  auto w = invariant_differential(E, 14);
  EXPECT_TRUE((w[6] - qp(11, 15)).is_zero());
  EXPECT_TRUE(w[1].is_zero());
  EXPECT_TRUE((w[12] - qp(11, 15 * 25)).is_zero());
}

TEST(Formal, ExpInvertsLog) {
  std::mt19937_64 rng(3301);
  for (long p : {7L, 11L, 31L}) {
    auto K = LocalField::qp(p, 30);
    PadicElem B = PadicElem::from_int(K, Int(-6));
    auto ex = jzero_exp_series(B, 60);
    std::uniform_int_distribution<long> d(1, 100000);
    for (int it = 0; it < 70; ++it) {
      PadicElem z = PadicElem::from_int(K, Int(p) * Int(d(rng)));
      PadicElem L = jzero_log(B, z);
      PadicElem back = PadicElem::zero(K), Lk = L;
      PadicElem L2 = L * L;
      for (std::size_t k = 1; k < ex.size(); k += 2) {
        back += ex[k] * Lk;
        Lk *= L2;
      }
      ASSERT_TRUE((back - z).is_zero()) << p << " " << it;
    }
  }
}

TEST(Formal, JZeroLogAgreesWithGeneralLog) {
  auto P = gfe::ec::primes_above(data().K, 11, 30)[0];
  ASSERT_EQ(P.label(), "(11, 1 7)");
  auto C = data().mw_curves()[0];
  auto E = gfe::ec::embed_curve(CurveK::short_form(C.B.zero_like(), C.B), P);
  for (auto& [x, y] : C.points) {
    PointQp Q = E.mul(12, gfe::ec::embed_point(PointK::affine(x, y), P));
    PadicElem z = -(Q.x / Q.y);
    PadicElem a = jzero_log(gfe::ec::embed_at(C.B, P), z);
    PadicElem b = formal_log(E, Q, 40);
    EXPECT_TRUE((a - b).is_zero());
    EXPECT_GE(a.absolute_precision(), 25);
  }
}

TEST(Formal, FrozenLogAtDegreeOnePrime) {
  // oracle: tests/oracle/padic_log.py
  const Int unit("21995030804962953285");
  Int mod = gfe::arith::pow_int(Int(11), 20);
  auto C = data().mw_curves()[0];
  for (int prec : {30, 45}) {
    auto P = gfe::ec::primes_above(data().K, 11, prec)[0];
    auto E = gfe::ec::embed_curve(CurveK::short_form(C.B.zero_like(), C.B), P);
    PointQp Q = E.mul(12, gfe::ec::embed_point(PointK::affine(C.points[0].first, C.points[0].second), P));
    PadicElem L = jzero_log(gfe::ec::embed_at(C.B, P), -(Q.x / Q.y));
    EXPECT_EQ(L.valuation(), 1);
    ASSERT_GE(L.relative_precision(), 20);
    EXPECT_EQ(gfe::arith::mod_pos(L.unit()[0], mod), unit) << prec;
  }
}

TEST(Formal, LogAdditivityRandom) {
  std::mt19937_64 rng(909);
  auto mw = data().mw_curves();
  std::uniform_int_distribution<long> d(-12, 12);
  int n = 0;
  for (long p : {11L, 31L}) {
    for (auto& P : gfe::ec::primes_above(data().K, p, 30)) {
      for (std::size_t c = 0; c < 2; ++c) {
        auto E = gfe::ec::embed_curve(CurveK::short_form(mw[c].B.zero_like(), mw[c].B), P);
        PadicElem B = gfe::ec::embed_at(mw[c].B, P);
        long M = P.p == 11 ? 12 : 1008;
        PointQp Q = E.mul(M, gfe::ec::embed_point(PointK::affine(mw[c].points[0].first, mw[c].points[0].second), P));
        PointQp R = E.mul(M, gfe::ec::embed_point(PointK::affine(mw[c].points[1].first, mw[c].points[1].second), P));
        auto lg = [&](const PointQp& X) {
          return X.is_infinity() ? PadicElem::zero(B.field()) : jzero_log(B, -(X.x / X.y));
        };
        PadicElem lq = lg(Q), lr = lg(R);
        for (int it = 0; it < 25; ++it, ++n) {
          long a = d(rng), b = d(rng);
          PointQp S = E.add(E.mul(a, Q), E.mul(b, R));
          PadicElem diff = lg(S) - PadicElem::from_int(B.field(), Int(a)) * lq - PadicElem::from_int(B.field(), Int(b)) * lr;
          ASSERT_TRUE(diff.is_zero()) << P.label() << " " << a << " " << b;
        }
      }
    }
  }
  EXPECT_GE(n, 200);
}

TEST(Chabauty, KnownPointsOnPrintedExample) {
  auto& c = cases()[5];
  ASSERT_EQ(c.eq, 2);
  ASSERT_EQ(c.row, 1u);
  auto known = known_rational_points(c.E, c.gens, {}, c.psi, 3);
  std::set<STValue> vals;
  for (auto& [comb, v] : known) vals.insert(v);
  std::set<STValue> expect{STValue::of(Rat(0)), STValue::of(Rat(-3)), STValue::of(Rat(3))};
  EXPECT_EQ(vals, expect);
  EXPECT_EQ(known.size(), 3u);
}

TEST(Chabauty, SieveKeepsKnownPointClasses) {
  for (auto& c : cases()) {
    auto s = residue_sieve(c.E, c.gens, {}, c.psi, {11});
    auto known = known_rational_points(c.E, c.gens, {}, c.psi, 3);
    for (auto& [k, v] : known) {
      bool found = false;
      for (auto& cls : s.survivors) {
        bool same = true;
        for (std::size_t i = 0; i < k.n.size(); ++i)
          if (gfe::arith::mod_pos(Int(k.n[i] - cls.n[i]), Int(s.modulus)) != 0) same = false;
        found = found || same;
      }
      EXPECT_TRUE(found) << c.eq << "/" << c.row << " " << k.to_string();
    }
    EXPECT_LT(s.survivors.size(), s.total);
  }
}

TEST(Chabauty, SieveMonotoneInPrimes) {
  auto& c = cases()[0];
  auto a = residue_sieve(c.E, c.gens, {}, c.psi, {11});
  auto b = residue_sieve(c.E, c.gens, {}, c.psi, {11, 13});
  ASSERT_EQ(b.modulus % a.modulus, 0);
  std::set<std::vector<long>> coarse;
  for (auto& s : a.survivors) coarse.insert(s.n);
  for (auto& s : b.survivors) {
    std::vector<long> r = s.n;
    for (auto& x : r) x %= a.modulus;
    EXPECT_TRUE(coarse.count(r));
  }
  EXPECT_LE(b.survivors.size() * static_cast<std::size_t>(a.modulus * a.modulus),
            a.survivors.size() * static_cast<std::size_t>(b.modulus * b.modulus));
}

TEST(Chabauty, TorsionOnlyExample) {
  auto K = data().K;
  auto E = CurveK::short_form(el({0, 0, 0, 0}), el({1, 0, 0, 0}));
  std::vector<PointK> tors{PointK::at_infinity()};
  for (auto [x, y] : std::vector<std::pair<long, long>>{{2, 3}, {2, -3}, {0, 1}, {0, -1}, {-1, 0}})
    tors.push_back(PointK::affine(el({x, 0, 0, 0}), el({y, 0, 0, 0})));
  PsiK psi{{el({0, 0, 0, 0}), el({0, 1, 0, 0}), el({0, 0, 1, 0})}, {el({0, 0, 0, 0}), el({1, 0, 0, 0}), el({5, 0, 0, 0})}};
  auto out = rational_st_values(E, {}, tors, psi, {11});
  EXPECT_TRUE(out.complete());
  EXPECT_TRUE(out.values.empty());
  EXPECT_EQ(out.classes_total, 6u);
  EXPECT_TRUE(audit(out));
}

TEST(Chabauty, RankConditionChecked) {
  auto& c = cases()[0];
  std::vector<PointK> g{c.gens[0], c.gens[1], c.gens[0], c.gens[1]};
  EXPECT_THROW(rational_st_values(c.E, g, {}, c.psi, {11}), RankConditionViolated);
}

TEST(Chabauty, CurveRowsComplete) {
  ASSERT_EQ(cases().size(), 8u);
  for (std::size_t i = 0; i < cases().size(); ++i) {
    auto& c = cases()[i];
    auto& out = outcomes()[i];
    ASSERT_TRUE(out.complete()) << c.eq << "/" << c.row << ": " << out.reason;
    EXPECT_TRUE(audit(out));
    std::vector<STValue> expect{c.expected};
    if (c.eq == 2 && c.row == 1) expect = {STValue::of(Rat(-3)), STValue::of(Rat(0)), STValue::of(Rat(3))};
    EXPECT_EQ(out.values, expect) << c.eq << "/" << c.row;
  }
}

TEST(Chabauty, ClosingPrimesAndMechanisms) {
  for (std::size_t i = 0; i < cases().size(); ++i) {
    auto& c = cases()[i];
    auto& out = outcomes()[i];
    std::vector<long> expect_primes{c.gens.size() == 2 ? 11L : 31L};
    EXPECT_EQ(out.primes, expect_primes) << i;
    for (auto& r : out.certificate) {
      if (r.known == 1) EXPECT_EQ(r.mechanism, c.gens.size() == 2 ? "hensel" : "strassman");
      if (r.known == 0) EXPECT_TRUE(r.mechanism == "refined" || r.mechanism == "constant");
    }
  }
}

TEST(Chabauty, WitnessesEvaluateExactly) {
  for (std::size_t i = 0; i < cases().size(); ++i) {
    auto& c = cases()[i];
    for (auto& [v, w] : outcomes()[i].witnesses) {
      PointK P = combination_point(c.E, c.gens, {}, w);
      ASSERT_TRUE(c.E.contains(P));
      auto val = c.psi.eval(P);
      if (v.is_infinity()) {
        EXPECT_FALSE(val.has_value());
      } else {
        ASSERT_TRUE(val.has_value());
        EXPECT_EQ(*val, el({0, 0, 0, 0}) + NfElem(data().K, std::vector<Rat>{v.value(), 0, 0, 0}));
      }
    }
  }
}

TEST(Chabauty, StableUnderHigherPrecision) {
  ChabautyOptions opt;
  opt.precision = 40;
  for (std::size_t i : {0u, 2u, 5u}) {
    auto& c = cases()[i];
    auto out = rational_st_values(c.E, c.gens, {}, c.psi, {11, 31}, opt);
    ASSERT_TRUE(out.complete());
    EXPECT_EQ(out.values, outcomes()[i].values);
    EXPECT_EQ(out.primes, outcomes()[i].primes);
    EXPECT_EQ(out.certificate.size(), outcomes()[i].certificate.size());
    EXPECT_TRUE(audit(out));
  }
}

TEST(Chabauty, AuditRejectsTamperedCertificate) {
  auto out = outcomes()[5];
  ASSERT_TRUE(audit(out));
  out.certificate[0].bound = 2;
  EXPECT_FALSE(audit(out));
  out = outcomes()[5];
  out.values.push_back(STValue::of(Rat(7)));
  EXPECT_FALSE(audit(out));
}
