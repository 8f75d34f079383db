#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gfe/chabauty/chabauty.hpp"
#include "gfe/descent/descent.hpp"
#include "gfe/local/local.hpp"
#include "gfe/param/param.hpp"
#include "gfe/pipeline/data.hpp"

namespace gfe::pipeline {

using arith::Int;
using param::SolutionTriple;
using param::STValue;

enum class Verdict { Pass, Fail, Corrected };
std::string verdict_name(Verdict v);

struct Claim {
  std::string id;
  Verdict verdict = Verdict::Fail;
  std::string printed;
  std::string recomputed;
  std::string detail;
};

/* Claims whose printed form is known to be wrong and must come out CORRECTED. */
const std::set<std::string>& expected_corrections();
/* Every claim PASS, or CORRECTED with an id in expected_corrections(). */
bool verdicts_ok(const std::vector<Claim>& claims);

/* Quotient constants, generator memberships, curve-row s/t values and curves, the torsion claims,
   the quotient forms and the printed flex/psi example. */
std::vector<Claim> verify_tables(const DataSet& data);

/* Primitive (x, y, z) with x^3 + y^9 = z^2, |y| <= y_bound, |x| <= aux_bound. Sorted. */
std::vector<SolutionTriple> brute_search(long y_bound, long aux_bound);

/* delta (sum y_i theta^i)^3 = sum Q_i theta^i as polynomials, and Q(1,0,0,0) = delta. */
bool descent_identity_holds(const descent::CubicFormSystem& sys);

struct SweepEntry {
  arith::AlgElem delta;
  local::LocalVerdict verdict;
};

struct LocalSweep {
  int equation = 0;
  std::size_t enumerated = 0;
  std::size_t candidates = 0;  // after the cubic-norm filter
  std::vector<SweepEntry> entries;
  std::size_t soluble() const;
  std::size_t undecided() const;
  std::vector<arith::AlgElem> survivors() const;
};

LocalSweep local_sweep(const DataSet& data, int equation, int max_depth = 12, long p = 3);

struct QuotientValues {
  std::string label;
  Rat c;
  int rank = 0;
  std::string torsion;
  std::vector<STValue> values;  // s/t of the torsion points, when the rank is 0
};

struct Eq5Row {
  arith::AlgElem delta;
  std::vector<QuotientValues> quotients;
  std::vector<STValue> values;  // common to every rank-0 quotient
};

struct CurveRun {
  int equation = 0;
  std::size_t row = 0;
  NfElem delta;
  int curve = 0;
  STValue printed;
  bool torsion_trivial = false;
  bool saturated = false;  // no combination of the generators is divisible by 3
  chabauty::ChabautyOutcome outcome;
};

struct LiftRow {
  std::string parametrization;
  Int s, t, x, v, z;
  std::optional<SolutionTriple> lifted;
};

struct PipelineOptions {
  int precision = 30;
  std::vector<long> primes{11, 31};
};

/* Twisted-cubic quotient data for one curve row: curve, generators and s/t. */
struct ChabautyInput {
  ec::CurveK E;
  std::vector<ec::PointK> gens;
  chabauty::PsiK psi;
};
ChabautyInput chabauty_input(const DataSet& data, int equation, std::size_t row);

CurveRun run_curve(const DataSet& data, int equation, std::size_t row, const PipelineOptions& opt = PipelineOptions{});

struct PipelineReport {
  std::vector<LocalSweep> sweeps;
  std::vector<Eq5Row> eq5;
  std::vector<CurveRun> curves;
  std::map<int, std::vector<STValue>> value_sets;  // equation -> s/t values
  std::vector<LiftRow> lifts;
  std::vector<SolutionTriple> solutions;
  std::vector<Claim> claims;
  std::vector<std::pair<std::string, std::string>> hashes;
  bool ok = false;
};

PipelineReport run_pipeline(const DataSet& data, const PipelineOptions& opt = PipelineOptions{});

/* Solutions of x^3 + v^3 = z^2 along every parametrization at the given s/t values. */
std::vector<LiftRow> lifting_table(const std::vector<STValue>& family12_values, const std::vector<STValue>& family3_values);

}  // namespace gfe::pipeline
