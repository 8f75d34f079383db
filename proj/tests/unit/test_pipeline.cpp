#include <gtest/gtest.h>

#include <random>

#include "gfe/pipeline/report.hpp"

using namespace gfe::pipeline;
using gfe::arith::Int;

namespace {

const DataSet& data() {
  static const DataSet d;
  return d;
}

const PipelineReport& report() {
  static const PipelineReport r = run_pipeline(data());
  return r;
}

SolutionTriple triple(long x, long y, long z) { return {Rat(x), Rat(y), Rat(z)}; }

bool contains(const std::vector<SolutionTriple>& v, const SolutionTriple& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST(Search, YZero) {
  std::vector<SolutionTriple> expect{triple(1, 0, -1), triple(1, 0, 1)};
  EXPECT_EQ(brute_search(0, 50), expect);
}

TEST(Search, SmallBoxes) {
  auto s = brute_search(2, 100);
  EXPECT_TRUE(contains(s, triple(-7, 2, 13)));
  EXPECT_TRUE(contains(s, triple(-7, 2, -13)));
  EXPECT_TRUE(contains(s, triple(2, 1, 3)));
  EXPECT_FALSE(contains(s, triple(1, 1, 0)));
  for (auto& t : s) EXPECT_TRUE(t.holds());
  EXPECT_EQ(brute_search(3, 10000).size(), 10u);
}

TEST(Descent, IdentityOnEverySystem) {
  std::size_t n = 0;
  for (int eq : data().selmer_equations()) {
    for (auto& d : gfe::descent::enumerate_delta(data().selmer(eq))) {
      EXPECT_TRUE(descent_identity_holds(gfe::descent::build_descent_forms(d)));
      ++n;
    }
  }
  EXPECT_GE(n, 243u + 9u + 9u);
}

TEST(Descent, IdentityRejectsTamperedForm) {
  auto d = gfe::descent::enumerate_delta(data().selmer(1)).front();
  auto sys = gfe::descent::build_descent_forms(d);
  sys.Q[1] = sys.Q[1] + gfe::arith::MPoly::variable(static_cast<int>(sys.Q.size()), 0).pow(3);
  EXPECT_FALSE(descent_identity_holds(sys));
}

TEST(Tables, Verdicts) {
  auto claims = verify_tables(data());
  std::set<std::string> corrected;
  for (auto& c : claims) {
    EXPECT_NE(c.verdict, Verdict::Fail) << c.id << ": " << c.printed << " vs " << c.recomputed;
    if (c.verdict == Verdict::Corrected) corrected.insert(c.id);
  }
  std::set<std::string> expect{"torsion/E1/c=2/(2:1:8)", "torsion/E2/c=3/(2:-1:8)", "quotient/E1/form",
                               "quotient/E1/base_point"};
  EXPECT_EQ(corrected, expect);
  EXPECT_TRUE(verdicts_ok(claims));
}

TEST(Tables, VerdictsOkRejectsUnexpectedCorrection) {
  std::vector<Claim> c{{"constants/row1/c1", Verdict::Corrected, "1", "2", ""}};
  EXPECT_FALSE(verdicts_ok(c));
  c[0].id = "valueset/eq2";
  EXPECT_TRUE(verdicts_ok(c));
  c.push_back({"x", Verdict::Fail, "", "", ""});
  EXPECT_FALSE(verdicts_ok(c));
}

TEST(Lifting, PrintedRow) {
  auto rows = lifting_table({}, {STValue::of(Rat(-1, 2))});
  bool seen = false;
  for (auto& r : rows) {
    if (r.s == -1 && r.t == 2 && r.x == -63 && r.v == 72 && r.z == -351) seen = true;
    EXPECT_EQ(r.x * r.x * r.x + r.v * r.v * r.v, r.z * r.z);
  }
  EXPECT_TRUE(seen);
  EXPECT_EQ(Int(-63) * -63 * -63 + Int(72) * 72 * 72, Int(351) * 351);
}

TEST(Lifting, RandomValuesGiveCubeSumSquares) {
  std::mt19937_64 rng(6007);
  std::uniform_int_distribution<int> num(-60, 60), den(1, 60);
  for (int i = 0; i < 200; ++i) {
    Rat q(num(rng), den(rng));
    q.canonicalize();
    auto rows = lifting_table({STValue::of(q)}, {STValue::of(q)});
    ASSERT_FALSE(rows.empty());
    for (auto& r : rows) {
      ASSERT_EQ(r.x * r.x * r.x + r.v * r.v * r.v, r.z * r.z) << r.parametrization << " at " << q;
      if (r.lifted) {
        EXPECT_TRUE(r.lifted->holds());
        EXPECT_EQ(gfe::arith::gcd(gfe::arith::gcd(r.lifted->x.get_num(), r.lifted->y.get_num()), r.lifted->z.get_num()), 1);
      }
    }
  }
}

TEST(Pipeline, MatchesBruteForce) {
  const auto& r = report();
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.solutions, brute_search(3, 10000));
  EXPECT_TRUE(contains(r.solutions, triple(1, -1, 0)));
  EXPECT_TRUE(contains(r.solutions, triple(-1, 1, 0)));
}

TEST(Pipeline, ValueSets) {
  auto str = [](const std::vector<STValue>& v) {
    std::string s;
    for (auto& x : v) s += x.to_string() + " ";
    return s;
  };
  const auto& vs = report().value_sets;
  EXPECT_EQ(str(vs.at(1)), "-1 0 1 inf ");
  EXPECT_EQ(str(vs.at(2)), "-3 -1 0 1 3 inf ");
  EXPECT_EQ(str(vs.at(5)), "-2 0 1 2 4 inf ");
  EXPECT_EQ(str(vs.at(6)), "-2 -1 -1/2 0 1 inf ");
  EXPECT_EQ(vs.at(3), vs.at(1));
  EXPECT_EQ(vs.at(4), vs.at(2));
}

TEST(Pipeline, SweepsAndCurves) {
  const auto& r = report();
  std::map<int, std::size_t> soluble;
  for (auto& s : r.sweeps) {
    soluble[s.equation] = s.soluble();
    EXPECT_EQ(s.undecided(), 0u);
  }
  EXPECT_EQ(soluble[5], 22u);
  EXPECT_EQ(soluble[1], 4u);
  EXPECT_EQ(soluble[2], 4u);
  EXPECT_EQ(r.eq5.size(), 22u);
  ASSERT_EQ(r.curves.size(), 8u);
  for (auto& c : r.curves) {
    EXPECT_TRUE(c.outcome.complete()) << "eq" << c.equation << " row " << c.row;
    EXPECT_TRUE(gfe::chabauty::audit(c.outcome));
    EXPECT_TRUE(c.torsion_trivial);
    EXPECT_TRUE(c.saturated);
  }
}

TEST(Pipeline, CorrectionsAreExactlyTheExpectedOnes) {
  std::set<std::string> corrected;
  for (auto& c : report().claims) {
    EXPECT_NE(c.verdict, Verdict::Fail) << c.id;
    if (c.verdict == Verdict::Corrected) corrected.insert(c.id);
  }
  EXPECT_EQ(corrected, expected_corrections());
}

TEST(Report, DeterministicJson) {
  auto a = dump(to_json(report()));
  auto b = dump(to_json(run_pipeline(data())));
  EXPECT_EQ(a, b);
  auto j = json::parse(a);
  EXPECT_EQ(j.at("schema_version"), kReportSchemaVersion);
  EXPECT_TRUE(j.at("ok").get<bool>());
  EXPECT_EQ(j.at("solutions").size(), 10u);
  EXPECT_EQ(j.at("verification").at("fail"), 0);
  EXPECT_EQ(j.at("trusted_data").size(), data().hashes().size());
}

TEST(Report, HashesAreSha256) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  for (auto& [name, h] : data().hashes()) {
    EXPECT_EQ(h.size(), 64u) << name;
    EXPECT_EQ(h, sha256_hex(data().read_file(name)));
  }
}

TEST(Lifting, ZeroOnePair) {
  auto rows = lifting_table({STValue::of(Rat(0))}, {});
  bool seen = false;
  for (auto& r : rows)
    if (r.s == 0 && r.t == 1 && r.x == -3 && r.v == 3 && r.z == 0) seen = true;
  EXPECT_TRUE(seen);
}

TEST(Pipeline, LiftingInputIsExactlyTheChabautyValues) {
  const auto& r = report();
  std::set<STValue> chab, fam12, fam3, eq56;
  for (auto& c : r.curves)
    for (auto& v : c.outcome.values) chab.insert(v);
  for (int eq : {5, 6})
    for (auto& v : r.value_sets.at(eq)) eq56.insert(v);
  for (auto& l : r.lifts) {
    auto v = l.t == 0 ? STValue::infinity() : STValue::of(Rat(l.s, l.t));
    (l.parametrization.rfind("family3", 0) == 0 ? fam3 : fam12).insert(v);
  }
  EXPECT_EQ(fam12, chab);
  EXPECT_EQ(fam3, eq56);
}
