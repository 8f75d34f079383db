#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gfe/arith/mpoly.hpp"
#include "gfe/arith/rational.hpp"

namespace gfe::param {

using arith::Int;
using arith::MPoly;
using arith::Rat;

/* Point of P^1(Q): a rational or infinity. */
class STValue {
 public:
  STValue() = default;
  static STValue infinity() { return STValue(); }
  static STValue of(const Rat& r) { return STValue(r); }
  /* s/t, with t = 0 giving infinity; (0,0) throws. */
  static STValue ratio(const Rat& s, const Rat& t);
  static STValue parse(const std::string& text);

  bool is_infinity() const { return !v_.has_value(); }
  const Rat& value() const { return *v_; }

  friend bool operator==(const STValue& a, const STValue& b) { return a.v_ == b.v_; }
  friend bool operator!=(const STValue& a, const STValue& b) { return !(a == b); }
  /* Finite values ascending, infinity last. */
  friend bool operator<(const STValue& a, const STValue& b);

  std::string to_string() const;

 private:
  explicit STValue(const Rat& r) : v_(r) {}
  std::optional<Rat> v_;
};

struct Parametrization {
  int family = 0;        // 1..3
  bool swapped = false;  // true when the first form gives v rather than x
  int z_sign = 1;
  MPoly x, v, z;         // forms in (s, t)
  std::string name() const;
  std::tuple<Rat, Rat, Rat> evaluate(const Rat& s, const Rat& t) const;
};

/* The 12 sign/swap variants of the three families, each verified on construction. */
std::vector<Parametrization> mordell_families();
bool verify_identity(const Parametrization& p);

struct QuarticEquation {
  int id = 0;
  Rat constant;
  MPoly form;  // binary quartic in (s, t)
  MPoly rhs() const { return constant * form; }
  std::string to_string() const;
};

std::vector<QuarticEquation> six_equations();
const QuarticEquation& equation(int id);

struct SolutionTriple {
  enum class Kind { CubeCubeSquare, CubeNinthSquare };
  Rat x, y, z;
  Kind kind = Kind::CubeNinthSquare;
  bool holds() const;
  friend bool operator==(const SolutionTriple& a, const SolutionTriple& b) {
    return a.kind == b.kind && a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend bool operator<(const SolutionTriple& a, const SolutionTriple& b) {
    return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
  }
  std::string to_string() const;
};

struct STY {
  Rat s, t, y;
};

/* (s,t,y) -> (-t/2, s/4, y/4) from equation 5 to equation 6, and back. */
STY eq5_eq6_transfer(const STY& a);
STY eq6_eq5_transfer(const STY& a);
STValue eq5_eq6_st_map(const STValue& v);
/* (s,t,y) -> (s/2, t/2, y/4): equation 1 to 3, and 2 to 4; s/t unchanged. */
STY halve_transfer(const STY& a);

bool is_S_primitive(const std::vector<Rat>& values, const std::vector<long>& S);
STY weighted_rescale(const STY& a, const Rat& lambda);
bool satisfies(const QuarticEquation& eq, const STY& a);

/* Representative (l^2 x, l^2 v, l^3 z) with coprime integer entries, if one exists. */
std::optional<std::tuple<Int, Int, Int>> primitive_representative(const Int& x, const Int& v, const Int& z);
/* Primitive solution of x^3 + y^9 = z^2 equivalent to the given x^3 + v^3 = z^2 solution. */
std::optional<SolutionTriple> lift_to_ninth(const Int& x, const Int& v, const Int& z);

}  // namespace gfe::param
