#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gfe/ec/curve.hpp"
#include "gfe/ec/plane_cubic.hpp"
#include "gfe/ec/reduction.hpp"

namespace gfe::ec {

struct TorsionGroup {
  std::vector<long> invariants;  // Z/n1 x Z/n2 with n1 | n2; empty for the trivial group
  std::vector<PointQ> points;    // all torsion points on the input model, O first
  std::vector<PointQ> generators;
  std::int64_t reduction_gcd = 0;
  std::vector<long> primes;
  std::size_t order() const { return points.size(); }
  std::string structure() const;
};

/* Integral short model y^2 = x^3 + A x + B isomorphic to E, with the isomorphism from E. */
struct IntegralShortModel {
  CurveQ curve;
  WeierstrassIso<Rat> iso;
};
IntegralShortModel integral_short_model(const CurveQ& E);

/* Nagell-Lutz search on an integral short model, checked against #E(F_p) at good odd primes. */
TorsionGroup torsion_over_Q(const CurveQ& E, std::size_t reduction_primes = 5);

/* gcd of #E(F_q) over the primes of K above the given p with good reduction. */
std::int64_t torsion_bound_over_K(const CurveK& E, const std::vector<long>& primes);

/* For y^2 = x^3 + B over K: true when E(K) has no point of order 2 or 3 and the reduction
   bound has no other prime factor, i.e. E(K)_tors = 0. */
struct KTorsionReport {
  std::int64_t bound = 0;
  bool has_2_torsion = false;
  bool has_3_torsion = false;
  bool trivial() const;
};
KTorsionReport torsion_over_K(const CurveK& E, const std::vector<long>& primes);

}  // namespace gfe::ec
