#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "gfe/arith/padic.hpp"

namespace gfe::chabauty {

using arith::LocalFieldPtr;
using arith::PadicElem;
using arith::PrecisionTooLow;
using arith::Rat;

/* Truncated univariate series, coefficient k of z^k. */
using USeries = std::vector<PadicElem>;

USeries useries_mul(const USeries& a, const USeries& b, std::size_t len);
/* Requires a unit constant term. */
USeries useries_inverse(const USeries& a, std::size_t len);
/* Drops the first k coefficients, which must vanish at their precision. */
USeries useries_shift(const USeries& a, std::size_t k);

/* Monomials in r variables of total degree <= D. */
struct MonomialBasis {
  int r = 0, D = 0;
  std::vector<std::vector<int>> exps;
  std::vector<int> degree;
  std::vector<std::vector<int>> product;  // index of exps[i] + exps[j], or -1

  static std::shared_ptr<const MonomialBasis> get(int r, int D);
  int index_of(const std::vector<int>& e) const;
};

/* Power series in m_1..m_r with p-adic coefficients, truncated at total degree D. */
class MSeries {
 public:
  MSeries() = default;
  MSeries(std::shared_ptr<const MonomialBasis> basis, const LocalFieldPtr& K);

  static MSeries constant(std::shared_ptr<const MonomialBasis> basis, const PadicElem& c);
  /* c0 + sum_i l_i m_i */
  static MSeries linear(std::shared_ptr<const MonomialBasis> basis, const PadicElem& c0, const std::vector<PadicElem>& l);

  const MonomialBasis& basis() const { return *basis_; }
  const std::shared_ptr<const MonomialBasis>& basis_ptr() const { return basis_; }
  std::size_t size() const { return c_.size(); }
  const PadicElem& coeff(std::size_t i) const { return c_[i]; }
  PadicElem& coeff(std::size_t i) { return c_[i]; }
  const PadicElem& constant_term() const { return c_[0]; }

  MSeries operator+(const MSeries& o) const;
  MSeries operator-(const MSeries& o) const;
  MSeries operator-() const;
  MSeries operator*(const MSeries& o) const;
  MSeries scaled(const PadicElem& s) const;
  MSeries inverse() const;
  MSeries pow(int e) const;
  /* coordinate j of every coefficient */
  MSeries coordinate(int j) const;
  /* sum_k g_k S^k by Horner */
  static MSeries compose(const USeries& g, const MSeries& S);

 private:
  std::shared_ptr<const MonomialBasis> basis_;
  LocalFieldPtr K_;
  std::vector<PadicElem> c_;
};

/* Lower bound for the valuation of a coefficient: its valuation, or its absolute
   precision when it is zero to that precision. */
long valuation_lower_bound(const PadicElem& c);
bool certified_nonzero(const PadicElem& c);

struct StrassmanResult {
  int bound = 0;
  long min_valuation = 0;
  std::vector<std::pair<int, long>> vertices;  // lower Newton polygon of the certified coefficients
};

/* Number of zeros in Z_p (with multiplicity) of sum c_k t^k, where every omitted
   coefficient of index > size-1 has valuation >= tail. Throws PrecisionTooLow when the
   index of the last dominant coefficient is not determined at this precision. */
StrassmanResult strassman_zero_bound(const std::vector<PadicElem>& coeffs, long tail = arith::kExactPrecision);

}  // namespace gfe::chabauty
