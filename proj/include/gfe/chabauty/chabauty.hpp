#pragma once

#include <map>
#include <string>
#include <vector>

#include "gfe/chabauty/formal.hpp"
#include "gfe/chabauty/series.hpp"
#include "gfe/ec/models.hpp"
#include "gfe/ec/reduction.hpp"
#include "gfe/param/param.hpp"

namespace gfe::chabauty {

using ec::CurveK;
using ec::PointK;
using param::STValue;
using PsiK = ec::RationalFunctionOnE<arith::NfElem>;

class RankConditionViolated : public ec::EcError {
 public:
  using ec::EcError::EcError;
};

/* sum n_i g_i + torsion[t] */
struct Combination {
  std::vector<long> n;
  int torsion = 0;
  std::string to_string() const;
};

struct SieveResult {
  std::vector<long> primes;
  long modulus = 1;
  std::size_t total = 0;
  std::vector<Combination> survivors;  // class representatives with entries in [0, modulus)
};

/* Classes of E(K) = torsion + sum Z g_i modulo M, M the exponent of the generators'
   reductions at every prime above the given p; a class survives when psi takes one value
   of P^1(F_p) at every such prime (indeterminate reductions survive). */
SieveResult residue_sieve(const CurveK& E, const std::vector<PointK>& gens, const std::vector<PointK>& torsion,
                          const PsiK& psi, const std::vector<long>& primes);

struct ClassRecord {
  Combination cls;
  long modulus = 1;
  long p = 0;
  std::string mechanism;  // exact, strassman, hensel, constant, refined
  int bound = 0;
  int known = 0;
  int depth = 0;
  std::string detail;
  bool closed = false;
  std::vector<ClassRecord> children;
};

struct ChabautyOutcome {
  enum class Status { Complete, Inconclusive };
  Status status = Status::Inconclusive;
  std::string reason;
  std::vector<STValue> values;
  std::map<STValue, Combination> witnesses;
  std::vector<long> primes;  // the stage that closed every class
  long modulus = 1;
  std::size_t classes_total = 0;
  std::size_t classes_excluded = 0;
  int precision = 0;
  std::vector<ClassRecord> certificate;
  std::vector<std::string> attempts;

  bool complete() const { return status == Status::Complete; }
};

struct ChabautyOptions {
  int precision = 30;
  int series_degree = 8;
  int max_refinement_depth = 3;
  int search_bound = 3;
};

/* Points with psi value in P^1(Q) among torsion + sum n_i g_i, |n_i| <= bound. */
std::vector<std::pair<Combination, STValue>> known_rational_points(const CurveK& E, const std::vector<PointK>& gens,
                                                                  const std::vector<PointK>& torsion, const PsiK& psi,
                                                                  int bound);

PointK combination_point(const CurveK& E, const std::vector<PointK>& gens, const std::vector<PointK>& torsion,
                         const Combination& c);

/* Tries each prime in turn, then all of them together. */
ChabautyOutcome rational_st_values(const CurveK& E, const std::vector<PointK>& gens, const std::vector<PointK>& torsion,
                                   const PsiK& psi, const std::vector<long>& primes,
                                   const ChabautyOptions& opt = ChabautyOptions{});

/* Every class record closed, with bound = known count. */
bool audit(const ChabautyOutcome& out);

}  // namespace gfe::chabauty
