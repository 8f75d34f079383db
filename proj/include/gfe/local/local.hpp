#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfe/arith/mpoly.hpp"
#include "gfe/param/param.hpp"

namespace gfe::local {

using arith::Int;
using arith::MPoly;
using arith::Rat;

/* Homogeneous forms in n+1 variables with coprime integer coefficients. */
class ProjectiveSystem {
 public:
  ProjectiveSystem() = default;
  /* Clears denominators and content of each form. */
  ProjectiveSystem(int nvars, const std::vector<MPoly>& forms);

  int nvars() const { return nvars_; }
  const std::vector<MPoly>& forms() const { return forms_; }

 private:
  int nvars_ = 4;
  std::vector<MPoly> forms_;
};

class Undecided : public std::runtime_error {
 public:
  explicit Undecided(int depth) : std::runtime_error("local solubility undecided at depth " + std::to_string(depth)), depth_(depth) {}
  int depth() const { return depth_; }

 private:
  int depth_;
};

struct LiftCertificate {
  std::vector<Int> point;    // integer vector, primitive mod p, one coordinate equal to 1
  int precision = 0;         // the point is known modulo p^precision in the free coordinates
  std::vector<long> form_valuations;
  long minor_valuation = 0;  // valuation of the chosen 2x2 Jacobian minor
  std::vector<int> minor_columns;
  int unit_column = -1;      // a coordinate of valuation 0
};

struct LocalVerdict {
  enum class Status { Soluble, Insoluble, Undecided };
  long p = 0;
  Status status = Status::Undecided;
  std::optional<LiftCertificate> witness;
  int depth_searched = 0;
  std::uint64_t balls_examined = 0;
  std::optional<param::STValue> base_point;  // s/t of a soluble fibre, when searched on P^1
  Rat lambda = 0;

  /* Throws Undecided instead of guessing. */
  bool soluble() const;
  std::string status_name() const;
};

/* Ball refinement on the affine patches of P^3 with the quantitative Hensel criterion
   v(F(c)) > 2 v(minor); the system must consist of two forms in four variables. */
LocalVerdict is_locally_soluble(const ProjectiveSystem& sys, long p, int max_depth = 12);

/* Exact re-check of a certificate with big-integer arithmetic: the point is primitive,
   the minor avoids a unit coordinate, and every form has valuation > 2 v(minor). */
bool verify_certificate(const ProjectiveSystem& sys, long p, const LiftCertificate& cert);
/* Best certificate for an integer point (primitive after scaling), if the criterion holds. */
std::optional<LiftCertificate> certify_point(const ProjectiveSystem& sys, long p, std::vector<Int> point);

/* Points of P^n(F_p) on all forms, first nonzero coordinate 1, lexicographic order. */
std::vector<std::vector<long>> enumerate_points_mod_p(const ProjectiveSystem& sys, long p);

}  // namespace gfe::local
