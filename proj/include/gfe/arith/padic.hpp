#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gfe/arith/modp.hpp"
#include "gfe/arith/number_field.hpp"
#include "gfe/arith/rational.hpp"
#include "gfe/arith/upoly.hpp"

namespace gfe::arith {

class PrecisionTooLow : public ArithError {
 public:
  using ArithError::ArithError;
};

class NotLiftable : public ArithError {
 public:
  using ArithError::ArithError;
};

class LocalField;
using LocalFieldPtr = std::shared_ptr<const LocalField>;

/* Unramified extension Q_p[x]/(h) of degree f, h monic and irreducible mod p,
   with a capped working precision N (relative, in p-adic digits). */
class LocalField : public std::enable_shared_from_this<LocalField> {
 public:
  static LocalFieldPtr qp(long p, int precision);
  /* h given by integer coefficients modulo p^(precision + kGuardDigits). A
     linear h = x - r gives Q_p with the generator mapped to r. */
  static LocalFieldPtr unramified(long p, const ModPoly& h, int precision);
  static constexpr int kGuardDigits = 20;

  long p() const { return p_; }
  int degree() const { return static_cast<int>(h_.size()) - 1; }
  int precision() const { return prec_; }
  const Int& prime() const { return P_; }
  const Int& p_power(int k) const;
  const ModPoly& modulus() const { return h_; }
  /* Digits to which the modulus is known. */
  int modulus_precision() const { return prec_ + kGuardDigits; }
  /* Q_p with the same working precision. */
  LocalFieldPtr base() const;

 private:
  LocalField(long p, ModPoly h, int precision);
  long p_;
  Int P_;
  int prec_;
  ModPoly h_;
  std::vector<Int> pows_;
  LocalFieldPtr base_;
};

constexpr long kExactPrecision = 1L << 40;

/* Element of a LocalField: p^val * unit with the unit known modulo p^rel.
   Zero-at-precision elements store their absolute precision in val. */
class PadicElem {
 public:
  PadicElem() = default;

  static PadicElem zero(const LocalFieldPtr& K, long abs_precision = kExactPrecision);
  static PadicElem from_int(const LocalFieldPtr& K, const Int& n);
  static PadicElem from_rat(const LocalFieldPtr& K, const Rat& r);
  /* sum_j c_j x^j for rational coordinates, exact inputs. */
  static PadicElem from_coords(const LocalFieldPtr& K, const std::vector<Rat>& coords);
  /* p^val * sum_j u_j x^j with u known modulo p^rel. */
  static PadicElem from_unit(const LocalFieldPtr& K, long val, std::vector<Int> unit, long rel);
  static PadicElem generator(const LocalFieldPtr& K);

  const LocalFieldPtr& field() const { return K_; }
  bool is_zero() const { return zero_; }
  long valuation() const { return val_; }
  long relative_precision() const { return zero_ ? 0 : rel_; }
  long absolute_precision() const { return zero_ ? val_ : val_ + rel_; }
  const std::vector<Int>& unit() const { return unit_; }

  PadicElem zero_like() const { return zero(K_); }
  PadicElem one_like() const { return from_int(K_, Int(1)); }
  PadicElem from_int_like(long v) const { return from_int(K_, Int(v)); }
  PadicElem from_rat_like(const Rat& v) const { return from_rat(K_, v); }

  PadicElem operator-() const;
  friend PadicElem operator+(const PadicElem& a, const PadicElem& b);
  friend PadicElem operator-(const PadicElem& a, const PadicElem& b) { return a + (-b); }
  friend PadicElem operator*(const PadicElem& a, const PadicElem& b);
  friend PadicElem operator/(const PadicElem& a, const PadicElem& b) { return a * b.inverse(); }
  PadicElem& operator+=(const PadicElem& o) { return *this = *this + o; }
  PadicElem& operator-=(const PadicElem& o) { return *this = *this - o; }
  PadicElem& operator*=(const PadicElem& o) { return *this = *this * o; }
  PadicElem& operator/=(const PadicElem& o) { return *this = *this / o; }
  /* Equality up to the joint precision. */
  friend bool operator==(const PadicElem& a, const PadicElem& b) { return (a - b).is_zero(); }
  friend bool operator!=(const PadicElem& a, const PadicElem& b) { return !(a == b); }

  PadicElem inverse() const;
  PadicElem pow(long e) const;
  /* Reduces the absolute precision to at most n. */
  PadicElem truncate(long abs_precision) const;

  /* j-th coordinate in the basis 1, x, ..., x^(f-1), as an element of Q_p. */
  PadicElem coordinate(int j) const;
  /* Representative integer coordinates modulo p^abs (requires val >= 0). */
  std::vector<Int> integral_coords(long abs_precision) const;
  /* Residue modulo p, requires val >= 0. */
  std::vector<Int> residue() const;
  /* Base-p digits of the unit (degree 1 fields only), least significant first. */
  std::vector<long> digits() const;
  /* Rational representative of an element of Q_p (degree 1): p^val * unit. */
  Rat rational_representative() const;

  std::string to_string() const;

 private:
  static PadicElem normalize(const LocalFieldPtr& K, long base_val, std::vector<Int> x, long abs_precision);
  LocalFieldPtr K_;
  bool zero_ = true;
  long val_ = kExactPrecision;
  long rel_ = 0;
  std::vector<Int> unit_;
};

using PadicNum = PadicElem;

/* Image of a number field element under x -> generator of K (K defined by a factor of the minimal polynomial). */
PadicElem embed(const NfElem& a, const LocalFieldPtr& K);
PadicElem eval_poly(const UPoly& g, const PadicElem& x);

/* Newton lifting of a simple root; g has p-integral rational coefficients. */
PadicElem padic_hensel_root(const UPoly& g, const PadicElem& approx);

}  // namespace gfe::arith
