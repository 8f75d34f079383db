#pragma once

#include <map>
#include <string>
#include <vector>

#include "gfe/arith/rational.hpp"

namespace gfe::arith {

using Exponent = std::vector<int>;

/* Sparse multivariate polynomial over Q in a fixed number of variables. */
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(int nvars) : nvars_(nvars) {}

  static MPoly constant(int nvars, const Rat& c);
  static MPoly variable(int nvars, int index);
  static MPoly monomial(const Rat& c, Exponent e);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, Rat>& terms() const { return terms_; }
  Rat coeff(const Exponent& e) const;
  void add_term(const Exponent& e, const Rat& c);

  int total_degree() const;
  bool is_homogeneous(int degree) const;
  MPoly derivative(int var) const;

  Rat eval(const std::vector<Rat>& point) const;
  /* Substitutes polynomial images (all in a common variable set) for each variable. */
  MPoly compose(const std::vector<MPoly>& images) const;
  MPoly pow(unsigned e) const;

  /* Content-free integer multiple with positive leading term. */
  MPoly primitive_integer() const;

  MPoly operator-() const;
  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const Rat& c, const MPoly& a);
  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  int nvars_ = 0;
  std::map<Exponent, Rat> terms_;
};

}  // namespace gfe::arith
