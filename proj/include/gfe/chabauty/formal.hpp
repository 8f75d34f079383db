#pragma once

#include <vector>

#include "gfe/chabauty/series.hpp"
#include "gfe/ec/curve.hpp"

namespace gfe::chabauty {

using ec::CurveQp;
using ec::PointQp;

/* Coefficients of the invariant differential omega = sum_k c_k z^k dz in the parameter
   z = -x/y, for k < terms. */
USeries invariant_differential(const CurveQp& E, int terms);

/* Formal logarithm sum_k c_k z^(k+1)/(k+1) at z(P); P must reduce to O. */
PadicElem formal_log(const CurveQp& E, const PointQp& P, int terms);

/* For y^2 = x^3 + B the series are supported on z^(6k+1) with coefficients B^k times a
   rational number. log_coeff[k] and exp_coeff[k] are those numbers; wcoeff[k] is the
   coefficient of (B z^6)^k in w / z^3, w = -1/y. */
struct JZeroFormalGroup {
  std::vector<Rat> log_coeff, exp_coeff, wcoeff;
  static const JZeroFormalGroup& get(int terms);
};

USeries jzero_log_series(const PadicElem& B, int degree);
USeries jzero_exp_series(const PadicElem& B, int degree);
/* log at z, for v(z) >= 1, with enough terms for the working precision */
PadicElem jzero_log(const PadicElem& B, const PadicElem& z);
/* truncation degree: terms of degree > D have valuation >= target at v(z) >= 1 */
int series_degree_for(long p, long target);

}  // namespace gfe::chabauty
