#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "gfe/descent/descent.hpp"
#include "gfe/local/local.hpp"

namespace gfe::local {

using arith::FieldPtr;
using arith::NfElem;

/* F tensor Q_p for a field F in which p is totally ramified (or F = Q), described by an
   element pi of F with Eisenstein characteristic polynomial. */
class RamifiedCompletion {
 public:
  static std::shared_ptr<const RamifiedCompletion> get(const FieldPtr& F, long p);

  long p() const { return p_; }
  int e() const { return e_; }
  const NfElem& uniformizer() const { return pi_; }
  const arith::UPoly& eisenstein() const { return eis_; }

  /* Normalised valuation of a nonzero element. */
  long valuation(const NfElem& x) const;
  bool is_cube(const NfElem& x) const;
  /* y with v(y^3 - x) > v(x) + 2e, the Hensel starting condition for y^3 = x. */
  std::optional<NfElem> approximate_cube_root(const NfElem& x) const;
  /* Newton-refined root with v(y^3 - x) >= v(x) + digits, or nullopt for non-cubes. */
  std::optional<NfElem> cube_root(const NfElem& x, long digits) const;

  /* Smallest n with 1 + pi^n O inside the cubes. */
  long cube_radius() const { return (3 * e_) / 2 + 1; }

 private:
  RamifiedCompletion(const FieldPtr& F, long p);
  std::vector<long> key(const NfElem& unit) const;
  NfElem from_pi_coords(const std::vector<Rat>& b) const;
  std::vector<Rat> pi_coords(const NfElem& x) const;
  NfElem truncate(const NfElem& x, long digits) const;

  FieldPtr F_;
  long p_;
  int e_;
  NfElem pi_;
  arith::UPoly eis_;
  std::vector<std::vector<Rat>> to_pi_;  // power basis -> pi basis
  std::vector<long> key_moduli_;
  std::map<std::vector<long>, std::vector<long>> cubes_;  // key of w^3 -> pi coordinates of w
};

/* Q_p-solubility of Q2 = Q3 = 0 through the s/t map: a ball of (s:t) values is soluble when
   lambda (s - theta t) / delta is a cube in every component for some lambda in Q_p*, with the
   ball radius controlled by the cube radius. Soluble verdicts carry a P^3 Hensel certificate. */
LocalVerdict is_locally_soluble(const descent::CubicFormSystem& sys, long p, int max_depth = 12);

ProjectiveSystem descent_curve(const descent::CubicFormSystem& sys);

}  // namespace gfe::local
