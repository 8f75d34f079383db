#include <gtest/gtest.h>

#include <random>

#include "gfe/descent/descent.hpp"
#include "gfe/local/fibred.hpp"
#include "gfe/pipeline/data.hpp"

using namespace gfe::local;
using gfe::arith::MPoly;
using gfe::arith::Rat;

namespace {

const gfe::pipeline::DataSet& data() {
  static gfe::pipeline::DataSet d;
  return d;
}

ProjectiveSystem curve(const gfe::arith::AlgElem& delta) {
  auto sys = gfe::descent::build_descent_forms(delta);
  return ProjectiveSystem(4, {sys.Q[2], sys.Q[3]});
}

/* Projective count from the affine cone: (#zeros in F_p^4 - 1) / (p - 1). */
long naive_count(const ProjectiveSystem& sys, long p) {
  long zeros = 0;
  for (long a = 0; a < p; ++a)
    for (long b = 0; b < p; ++b)
      for (long c = 0; c < p; ++c)
        for (long d = 0; d < p; ++d) {
          bool ok = true;
          for (const auto& f : sys.forms()) {
            Rat v = f.eval({Rat(a), Rat(b), Rat(c), Rat(d)});
            if (gfe::arith::rat_mod(v, p) != 0) ok = false;
          }
          zeros += ok;
        }
  return (zeros - 1) / (p - 1);
}

}  // namespace

TEST(Local, TrivialEnumerations) {
  ProjectiveSystem empty(4, {});
  EXPECT_EQ(enumerate_points_mod_p(empty, 3).size(), 40u);
  EXPECT_EQ(enumerate_points_mod_p(empty, 5).size(), 156u);
  ProjectiveSystem lin(4, {MPoly::variable(4, 0), MPoly::variable(4, 1), MPoly::variable(4, 2)});
  auto pts = enumerate_points_mod_p(lin, 7);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0], (std::vector<long>{0, 0, 0, 1}));
}

TEST(Local, PointCountsMatchNaiveOracle) {
  auto spec = data().selmer(5);
  auto all = gfe::descent::enumerate_delta(spec);
  for (std::size_t i = 0; i < all.size(); i += 11) {
    auto sys = curve(all[i]);
    for (long p : {3L, 5L, 7L}) EXPECT_EQ(static_cast<long>(enumerate_points_mod_p(sys, p).size()), naive_count(sys, p));
  }
}

TEST(Local, GlobalPointsAreLocallySoluble) {
  auto s5 = data().selmer(5);
  auto one = gfe::descent::build_descent_forms(gfe::arith::AlgElem::from_rat(s5.algebra, 1));
  auto v = is_locally_soluble(one, 3);
  ASSERT_TRUE(v.soluble());
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(verify_certificate(descent_curve(one), 3, *v.witness));
  for (const auto& row : data().delta_rows()) {
    auto sys = gfe::descent::build_descent_forms(row.delta);
    auto r = is_locally_soluble(sys, 3);
    EXPECT_TRUE(r.soluble()) << row.delta.to_string();
    if (r.witness) EXPECT_TRUE(verify_certificate(descent_curve(sys), 3, *r.witness));
  }
  for (int id : {1, 2}) {
    auto spec = data().selmer(id);
    for (const auto& row : data().curve_rows(id)) {
      auto d = gfe::arith::AlgElem::from_components(spec.algebra, {row.delta});
      auto sys = gfe::descent::build_descent_forms(d);
      auto r = is_locally_soluble(sys, 3);
      EXPECT_TRUE(r.soluble());
      ASSERT_TRUE(r.witness.has_value());
      EXPECT_TRUE(verify_certificate(descent_curve(sys), 3, *r.witness));
    }
  }
}

TEST(Local, SweepCountsAtThree) {
  struct Expect {
    int id;
    std::size_t survivors;
  };
  for (auto [id, expected] : {Expect{5, 22}, Expect{1, 4}, Expect{2, 4}}) {
    auto spec = data().selmer(id);
    auto deltas = gfe::descent::cubic_norm_filter(gfe::descent::enumerate_delta(spec), spec.C);
    std::vector<gfe::arith::AlgElem> listed;
    if (id == 5)
      for (const auto& row : data().delta_rows()) listed.push_back(row.delta);
    else
      for (const auto& row : data().curve_rows(id)) listed.push_back(gfe::arith::AlgElem::from_components(spec.algebra, {row.delta}));
    std::size_t soluble = 0;
    for (const auto& d : deltas) {
      auto sys = gfe::descent::build_descent_forms(d);
      auto r = is_locally_soluble(sys, 3);
      ASSERT_NE(r.status, LocalVerdict::Status::Undecided) << d.to_string();
      if (r.soluble()) {
        ++soluble;
        EXPECT_TRUE(verify_certificate(descent_curve(sys), 3, *r.witness));
        std::size_t hits = 0;
        for (const auto& l : listed) hits += gfe::descent::same_cube_class(d, l);
        EXPECT_EQ(hits, 1u) << d.to_string();
      }
    }
    EXPECT_EQ(soluble, expected) << "equation " << id;
  }
}

TEST(Local, CubesInCompletionsRandom) {
  std::mt19937_64 rng(8086);
  std::uniform_int_distribution<long> coef(-40, 40);
  auto Q = gfe::arith::NumberField::rationals();
  auto q3 = RamifiedCompletion::get(Q, 3);
  auto K = data().selmer(1).algebra->components()[0].field;
  auto k3 = RamifiedCompletion::get(K, 3);
  EXPECT_EQ(k3->e(), 4);
  for (int i = 0; i < 240; ++i) {
    long n = coef(rng) * 9 + coef(rng);
    if (n == 0 || n % 3 == 0) continue;
    long r = ((n % 9) + 9) % 9;
    EXPECT_EQ(q3->is_cube(NfElem::from_rat(Q, Rat(n))), r == 1 || r == 8) << n;
    std::vector<Rat> c;
    for (int j = 0; j < 4; ++j) c.push_back(Rat(coef(rng)));
    NfElem x(K, c);
    if (x.is_zero()) continue;
    NfElem x3 = x * x * x;
    EXPECT_TRUE(k3->is_cube(x3));
    EXPECT_FALSE(k3->is_cube(x3 * k3->uniformizer()));
    auto y = k3->cube_root(x3, 30);
    ASSERT_TRUE(y.has_value());
    EXPECT_GE(k3->valuation(*y * *y * *y - x3), k3->valuation(x3) + 30);
  }
}
