#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gfe/arith/rational.hpp"

namespace gfe::arith {

/* Dense univariate polynomial over Q, coefficient i multiplies x^i. */
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rat> coeffs);
  UPoly(std::initializer_list<Rat> coeffs) : UPoly(std::vector<Rat>(coeffs)) {}

  static UPoly constant(const Rat& c);
  static UPoly monomial(const Rat& c, int degree);
  static UPoly linear_root(const Rat& r);  // x - r

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rat coeff(int i) const;
  Rat leading() const;
  const std::vector<Rat>& coeffs() const { return c_; }

  Rat eval(const Rat& x) const;
  UPoly derivative() const;
  UPoly monic() const;
  /* Primitive integer multiple with positive leading coefficient. */
  std::vector<Int> primitive_integer() const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Rat& c, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly operator%(const UPoly& a, const UPoly& b);
UPoly gcd(const UPoly& a, const UPoly& b);  // monic, gcd(0,0) = 0
/* Returns (g, s, t) with s a + t b = g monic. */
struct Bezout {
  UPoly g, s, t;
};
Bezout xgcd(const UPoly& a, const UPoly& b);
bool is_squarefree(const UPoly& f);

/* Determinant of a square rational matrix by fraction-free elimination over Q. */
Rat determinant(std::vector<std::vector<Rat>> m);
/* Solves m x = b; throws if singular. */
std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> m, std::vector<Rat> b);
std::vector<std::vector<Rat>> inverse_matrix(const std::vector<std::vector<Rat>>& m);
/* Sylvester-matrix resultant. */
Rat resultant(const UPoly& a, const UPoly& b);
Rat discriminant(const UPoly& f);

}  // namespace gfe::arith
