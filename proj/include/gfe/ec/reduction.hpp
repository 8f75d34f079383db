#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gfe/arith/modp.hpp"
#include "gfe/ec/curve.hpp"

namespace gfe::ec {

using arith::FieldPtr;
using arith::FqPtr;
using arith::LocalFieldPtr;

/* A prime of Z[alpha] above an unramified p: p together with a factor h of the minimal
   polynomial mod p. */
struct KPrime {
  long p = 0;
  int index = 0;  // position in primes_above order
  arith::ModPoly h;
  int f = 1;
  FqPtr residue;
  LocalFieldPtr completion;
  std::string label() const;
};

/* Sorted by (degree, coefficients of h). */
std::vector<KPrime> primes_above(const FieldPtr& K, long p, int precision = 30);

arith::PadicElem embed_at(const NfElem& a, const KPrime& P);
FqElem reduce(const NfElem& a, const KPrime& P);

CurveQp embed_curve(const CurveK& E, const KPrime& P);
PointQp embed_point(const PointK& Q, const KPrime& P);
/* Requires integral coefficients and unit discriminant at P. */
CurveFq reduce_curve(const CurveK& E, const KPrime& P);
PointFq reduce_point(const PointQp& Q, const KPrime& P);
PointFq reduce_point(const PointK& Q, const KPrime& P);

std::vector<PointFq> all_points(const CurveFq& E);
std::int64_t count_points(const CurveFq& E);
/* Order of Q given a multiple N of it. */
std::int64_t point_order(const CurveFq& E, const PointFq& Q, std::int64_t N);
/* Whether Q lies in m E(F_q), with N = #E(F_q). */
bool in_multiple_subgroup(const CurveFq& E, const PointFq& Q, long m, std::int64_t N);

class Inconclusive : public EcError {
 public:
  using EcError::EcError;
};

struct SieveWitness {
  std::vector<long> combination;  // coefficients in Z/m, first nonzero entry 1
  long p;
  int prime_index;
};

/* Certifies that no nonzero combination of the points lies in m E(K) by finding, for each
   combination, a prime above one of the given p where its reduction is not in m E(F_q).
   Throws Inconclusive naming the first combination that survives every prime. */
std::vector<SieveWitness> non_divisibility_sieve(const CurveK& E, const std::vector<PointK>& points, long m,
                                                 const std::vector<long>& primes);

}  // namespace gfe::ec
