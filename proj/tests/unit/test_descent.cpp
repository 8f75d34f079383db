#include <gtest/gtest.h>

#include <random>

#include "gfe/descent/descent.hpp"
#include "gfe/pipeline/data.hpp"

using namespace gfe::descent;
using gfe::arith::Int;
using gfe::arith::NfElem;
using gfe::arith::Rat;

namespace {

const gfe::pipeline::DataSet& data() {
  static gfe::pipeline::DataSet d;
  return d;
}

bool cube_by_integer_roots(const Rat& r) {
  return gfe::arith::exact_root(Int(r.get_num()), 3).has_value() && gfe::arith::exact_root(Int(r.get_den()), 3).has_value();
}

NfElem Q(long v) { return NfElem::from_rat(gfe::arith::NumberField::rationals(), Rat(v)); }

}  // namespace

TEST(Descent, GeneratorChecks) {
  for (int id : {5, 1, 2}) {
    auto spec = data().selmer(id);
    auto rep = check_generators(spec);
    EXPECT_TRUE(rep.invertible) << id;
    EXPECT_TRUE(rep.s_unit_mod_cubes) << id;
    EXPECT_TRUE(rep.independent()) << id << " rank " << rep.character_rank;
  }
  // a square of a generator appended makes the family dependent
  auto spec = data().selmer(5);
  spec.generators.push_back(spec.generators[0].pow(2) * spec.generators[1]);
  EXPECT_FALSE(check_generators(spec).independent());
  EXPECT_THROW(verify_generators(spec), DescentError);
}

TEST(Descent, EnumerationCounts) {
  auto s5 = data().selmer(5);
  auto all5 = enumerate_delta(s5);
  ASSERT_EQ(all5.size(), 243u);
  EXPECT_TRUE(all5[0].is_one());
  EXPECT_EQ(cubic_norm_filter(all5, s5.C).size(), 243u);

  auto s1 = data().selmer(1);
  EXPECT_EQ(enumerate_delta(s1).size(), 81u);
  auto empty = s1;
  empty.generators.clear();
  auto one = enumerate_delta(empty);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one[0].is_one());

  EXPECT_EQ(delta_exponents(5, 0), (std::vector<int>{0, 0, 0, 0, 0}));
  EXPECT_EQ(delta_exponents(5, 242), (std::vector<int>{2, 2, 2, 2, 2}));
  EXPECT_EQ(delta_exponents(3, 5), (std::vector<int>{0, 1, 2}));
}

TEST(Descent, CubicNormFilterMatchesIntegerRootOracle) {
  for (int id : {1, 2}) {
    auto spec = data().selmer(id);
    auto all = enumerate_delta(spec);
    std::size_t kept = 0;
    for (const auto& d : all) {
      bool oracle = cube_by_integer_roots(spec.C * d.norm());
      EXPECT_EQ(has_cubic_norm(d, spec.C), oracle);
      kept += oracle;
    }
    EXPECT_EQ(cubic_norm_filter(all, spec.C).size(), kept);
    EXPECT_EQ(kept, 9u);
  }
}

TEST(Descent, FormsIdentityRandom) {
  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<int> small(-9, 9);
  for (int id : {5, 1, 2}) {
    auto spec = data().selmer(id);
    auto deltas = cubic_norm_filter(enumerate_delta(spec), spec.C);
    for (int trial = 0; trial < 70; ++trial) {
      const auto& d = deltas[rng() % deltas.size()];
      auto sys = build_descent_forms(d);
      std::vector<Rat> y;
      for (int i = 0; i < 4; ++i) y.push_back(Rat(small(rng), 1 + (rng() % 4)));
      for (auto& c : y) c.canonicalize();
      gfe::arith::AlgElem Y(spec.algebra, y);
      auto lhs = d * Y * Y * Y;
      for (int i = 0; i < 4; ++i) EXPECT_EQ(sys.Q[static_cast<std::size_t>(i)].eval(y), lhs.coord(i));
      for (const auto& q : sys.Q) EXPECT_TRUE(q.is_zero() || q.is_homogeneous(3));
    }
  }
}

TEST(Descent, FormsAtIdentityAndStMap) {
  auto spec = data().selmer(5);
  std::vector<Rat> e0{1, 0, 0, 0};
  for (const auto& d : enumerate_delta(spec)) {
    auto sys = build_descent_forms(d);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(sys.Q[static_cast<std::size_t>(i)].eval(e0), d.coord(i));
  }
  auto sys = build_descent_forms(gfe::arith::UPoly{0, 8, 0, 0, 1}, enumerate_delta(spec)[0]);
  EXPECT_EQ(sys.Q[0].eval(e0), 1);
  EXPECT_EQ(sys.Q[1].eval(e0), 0);
  EXPECT_TRUE(st_map(sys, e0).is_infinity());
  EXPECT_THROW(st_map(sys, {0, 0, 0, 0}), IndeterminatePoint);
  EXPECT_THROW(build_descent_forms(gfe::arith::UPoly{0, 0, 1, 0, 1}, sys.delta), DescentError);

  std::mt19937_64 rng(606);
  std::uniform_int_distribution<int> small(-7, 7);
  for (int i = 0; i < 200; ++i) {
    std::vector<Rat> y{small(rng), small(rng), small(rng), small(rng)};
    Rat lam(1 + small(rng) * small(rng), 3);
    if (lam == 0) lam = 2;
    std::vector<Rat> ly;
    for (auto& c : y) ly.push_back(lam * c);
    if (sys.Q[0].eval(y) == 0 && sys.Q[1].eval(y) == 0) continue;
    EXPECT_EQ(st_map(sys, y), st_map(sys, ly));
  }
}

TEST(Descent, CurveRowPoints) {
  for (int id : {1, 2}) {
    auto spec = data().selmer(id);
    auto survivors = cubic_norm_filter(enumerate_delta(spec), spec.C);
    for (const auto& row : data().curve_rows(id)) {
      auto d = gfe::arith::AlgElem::from_components(spec.algebra, {row.delta});
      EXPECT_TRUE(has_cubic_norm(d, spec.C)) << row.delta.to_string();
      int matches = 0;
      for (const auto& s : survivors) matches += same_cube_class(d, s);
      EXPECT_EQ(matches, 1) << row.delta.to_string();
      auto sys = build_descent_forms(d);
      auto y = point_with_st(sys, row.st_p0);
      ASSERT_TRUE(y.has_value()) << "eq " << id << " delta " << row.delta.to_string();
      EXPECT_EQ(st_map(sys, *y), row.st_p0);
    }
  }
}

TEST(Descent, QuotientConstants) {
  auto spec = data().selmer(5);
  auto all = enumerate_delta(spec);
  auto rows = data().delta_rows();
  ASSERT_EQ(rows.size(), 22u);
  for (const auto& r : rows) {
    EXPECT_TRUE(has_cubic_norm(r.delta, 1));
    int matches = 0;
    for (const auto& d : all) matches += same_cube_class(r.delta, d);
    EXPECT_EQ(matches, 1) << r.delta.to_string();
    auto qs = genus1_quotients(r.delta);
    ASSERT_EQ(qs.size(), 2u);
    EXPECT_EQ(gfe::arith::cube_class_representative(qs[0].c.coord(0)), r.c1) << r.delta.to_string();
    EXPECT_EQ(gfe::arith::cube_class_representative(qs[1].c.coord(0)), r.c2) << r.delta.to_string();
  }
}

TEST(Descent, QuotientShapes) {
  auto spec = data().selmer(5);
  auto qs = genus1_quotients(gfe::arith::AlgElem::from_rat(spec.algebra, 1));
  ASSERT_EQ(qs.size(), 2u);
  EXPECT_EQ(qs[0].label, "E1,delta");
  EXPECT_EQ(qs[0].c.coord(0), 1);
  EXPECT_EQ(qs[1].c.coord(0), 1);
  EXPECT_EQ(qs[0].cubic[0].coord(0), 1);
  EXPECT_EQ(qs[0].cubic[1].coord(0), 0);
  EXPECT_EQ(qs[0].cubic[3].coord(0), 8);
  EXPECT_EQ(qs[1].cubic[1].coord(0), -2);
  EXPECT_EQ(qs[1].cubic[2].coord(0), 4);
  EXPECT_EQ(qs[1].cubic[3].coord(0), 0);
  EXPECT_TRUE(qs[0].contains(Q(0), Q(-2), Q(1)));
  EXPECT_FALSE(qs[0].contains(Q(0), Q(2), Q(1)));
  EXPECT_TRUE(qs[1].contains(Q(0), Q(0), Q(1)));

  auto s1 = data().selmer(1);
  auto e = genus1_quotients(gfe::arith::AlgElem::from_rat(s1.algebra, 1));
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].label, "E_delta");
  // flex point (u:s:t) = (0 : -theta : 1)
  NfElem th = s1.algebra->components()[0].theta_image;
  EXPECT_TRUE(e[0].contains(th.zero_like(), -th, th.one_like()));
}
