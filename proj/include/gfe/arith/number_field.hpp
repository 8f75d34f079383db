#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gfe/arith/rational.hpp"
#include "gfe/arith/upoly.hpp"

namespace gfe::arith {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/* Q[x]/(m) for a monic irreducible m of degree 1..4, in the power basis. */
class NumberField {
 public:
  static FieldPtr create(const UPoly& min_poly, std::string generator_name);
  static FieldPtr rationals();

  int degree() const { return min_poly_.degree(); }
  const UPoly& min_poly() const { return min_poly_; }
  const std::string& generator_name() const { return name_; }
  const Rat& poly_discriminant() const { return disc_; }
  bool has_integral_min_poly() const;
  /* Coordinates of x^k reduced modulo m, for 0 <= k <= 2 deg - 2. */
  const std::vector<Rat>& power(int k) const { return powers_[static_cast<std::size_t>(k)]; }

  bool same_as(const NumberField& other) const { return min_poly_ == other.min_poly_; }

 private:
  NumberField(UPoly m, std::string name);
  UPoly min_poly_;
  std::string name_;
  Rat disc_;
  std::vector<std::vector<Rat>> powers_;
};

class NfElem {
 public:
  NfElem() = default;
  NfElem(FieldPtr field, std::vector<Rat> coords);

  static NfElem from_rat(const FieldPtr& field, const Rat& r);
  static NfElem generator(const FieldPtr& field);
  static NfElem from_poly(const FieldPtr& field, const UPoly& p);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rat>& coords() const { return c_; }
  const Rat& coord(int i) const { return c_[static_cast<std::size_t>(i)]; }
  int degree() const { return static_cast<int>(c_.size()); }

  bool is_zero() const;
  bool is_rational() const;
  NfElem zero_like() const { return from_rat(field_, Rat(0)); }
  NfElem one_like() const { return from_rat(field_, Rat(1)); }
  NfElem from_int_like(long v) const { return from_rat(field_, Rat(v)); }
  NfElem from_rat_like(const Rat& v) const { return from_rat(field_, v); }

  NfElem operator-() const;
  NfElem& operator+=(const NfElem& o);
  NfElem& operator-=(const NfElem& o);
  NfElem& operator*=(const NfElem& o);
  NfElem& operator/=(const NfElem& o) { return *this *= o.inverse(); }
  friend NfElem operator+(NfElem a, const NfElem& b) { return a += b; }
  friend NfElem operator-(NfElem a, const NfElem& b) { return a -= b; }
  friend NfElem operator*(NfElem a, const NfElem& b) { return a *= b; }
  friend NfElem operator/(NfElem a, const NfElem& b) { return a /= b; }
  friend NfElem operator*(const Rat& r, const NfElem& a);
  friend bool operator==(const NfElem& a, const NfElem& b);
  friend bool operator!=(const NfElem& a, const NfElem& b) { return !(a == b); }

  NfElem inverse() const;
  NfElem pow(long e) const;
  /* Column j holds the coordinates of this * x^j. */
  std::vector<std::vector<Rat>> mult_matrix() const;
  Rat norm() const;
  Rat trace() const;
  UPoly as_poly() const;
  /* lcm of coordinate denominators. */
  Int denominator() const;

  std::string to_string() const;

 private:
  void check_same(const NfElem& o) const;
  FieldPtr field_;
  std::vector<Rat> c_;
};

NfElem eval_poly(const UPoly& p, const NfElem& x);
NfElem parse_nf_elem(const FieldPtr& field, const std::vector<std::string>& coords);
std::vector<std::string> coords_to_strings(const NfElem& a);

/* Exact n-th root in the field, or nullopt when a is not an n-th power.
   Requires an integral defining polynomial. */
std::optional<NfElem> nth_root(const NfElem& a, unsigned n);

}  // namespace gfe::arith
