#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "gfe/arith/finite_field.hpp"
#include "gfe/arith/number_field.hpp"
#include "gfe/arith/padic.hpp"
#include "gfe/arith/rational.hpp"

namespace gfe::ec {

using arith::FqElem;
using arith::Int;
using arith::NfElem;
using arith::PadicElem;
using arith::Rat;

class EcError : public arith::ArithError {
 public:
  using arith::ArithError::ArithError;
};

class BadPrime : public EcError {
 public:
  using EcError::EcError;
};

/* Uniform constructors for Rat and the member-based field types. */
template <class F>
inline constexpr bool is_rational_v = std::is_convertible_v<F, Rat>;

template <class F>
auto field_zero(const F& like) {
  if constexpr (is_rational_v<F>) return Rat(0);
  else return like.zero_like();
}
template <class F>
auto field_int(const F& like, long v) {
  if constexpr (is_rational_v<F>) return Rat(v);
  else return like.from_int_like(v);
}
template <class F>
bool field_is_zero(const F& a) {
  if constexpr (is_rational_v<F>) return arith::is_zero(Rat(a));
  else return a.is_zero();
}
template <class F>
std::string field_str(const F& a) {
  if constexpr (is_rational_v<F>) return arith::to_string(Rat(a));
  else return a.to_string();
}

template <class F>
struct EcPoint {
  bool infinity = true;
  F x{}, y{};

  static EcPoint at_infinity() { return EcPoint{}; }
  static EcPoint affine(F x, F y) { return EcPoint{false, std::move(x), std::move(y)}; }
  bool is_infinity() const { return infinity; }
  friend bool operator==(const EcPoint& a, const EcPoint& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const EcPoint& a, const EcPoint& b) { return !(a == b); }
  std::string to_string() const { return infinity ? std::string("O") : "(" + field_str(x) + ", " + field_str(y) + ")"; }
};

/* y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6. */
template <class F>
class WeierstrassCurve {
 public:
  WeierstrassCurve() = default;
  WeierstrassCurve(F a1, F a2, F a3, F a4, F a6) : a_{a1, a2, a3, a4, a6} {
    if (field_is_zero(discriminant())) throw EcError("singular Weierstrass equation");
  }
  static WeierstrassCurve short_form(const F& A, const F& B) {
    F z = field_zero(B);
    return WeierstrassCurve(z, z, z, A, B);
  }

  const F& a1() const { return a_[0]; }
  const F& a2() const { return a_[1]; }
  const F& a3() const { return a_[2]; }
  const F& a4() const { return a_[3]; }
  const F& a6() const { return a_[4]; }

  F b2() const { return a1() * a1() + field_int(a1(), 4) * a2(); }
  F b4() const { return a1() * a3() + field_int(a1(), 2) * a4(); }
  F b6() const { return a3() * a3() + field_int(a1(), 4) * a6(); }
  F b8() const {
    return a1() * a1() * a6() + field_int(a1(), 4) * a2() * a6() - a1() * a3() * a4() + a2() * a3() * a3() - a4() * a4();
  }
  F c4() const { return b2() * b2() - field_int(a1(), 24) * b4(); }
  F c6() const { return -(b2() * b2() * b2()) + field_int(a1(), 36) * b2() * b4() - field_int(a1(), 216) * b6(); }
  F discriminant() const {
    F B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -(B2 * B2 * B8) - field_int(a1(), 8) * B4 * B4 * B4 - field_int(a1(), 27) * B6 * B6 + field_int(a1(), 9) * B2 * B4 * B6;
  }
  F j_invariant() const {
    F c = c4();
    return c * c * c / discriminant();
  }
  bool is_short() const {
    return field_is_zero(a1()) && field_is_zero(a2()) && field_is_zero(a3());
  }

  bool contains(const EcPoint<F>& P) const {
    if (P.infinity) return true;
    return field_is_zero(equation(P.x, P.y));
  }
  F equation(const F& x, const F& y) const {
    return y * y + a1() * x * y + a3() * y - (x * x * x + a2() * x * x + a4() * x + a6());
  }

  EcPoint<F> neg(const EcPoint<F>& P) const {
    if (P.infinity) return P;
    return EcPoint<F>::affine(P.x, -P.y - a1() * P.x - a3());
  }

  EcPoint<F> add(const EcPoint<F>& P, const EcPoint<F>& Q) const {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    F lambda, nu;
    if (P.x == Q.x) {
      F s = P.y + Q.y + a1() * Q.x + a3();
      if (field_is_zero(s)) return EcPoint<F>::at_infinity();
      F three = field_int(P.x, 3), two = field_int(P.x, 2);
      lambda = (three * P.x * P.x + two * a2() * P.x + a4() - a1() * P.y) / (two * P.y + a1() * P.x + a3());
      nu = (-(P.x * P.x * P.x) + a4() * P.x + two * a6() - a3() * P.y) / (two * P.y + a1() * P.x + a3());
    } else {
      lambda = (Q.y - P.y) / (Q.x - P.x);
      nu = (P.y * Q.x - Q.y * P.x) / (Q.x - P.x);
    }
    F x3 = lambda * lambda + a1() * lambda - a2() - P.x - Q.x;
    F y3 = -(lambda + a1()) * x3 - nu - a3();
    return EcPoint<F>::affine(x3, y3);
  }

  EcPoint<F> sub(const EcPoint<F>& P, const EcPoint<F>& Q) const { return add(P, neg(Q)); }

  EcPoint<F> mul(long n, const EcPoint<F>& P) const {
    if (n < 0) return mul(-n, neg(P));
    EcPoint<F> r = EcPoint<F>::at_infinity(), b = P;
    while (n) {
      if (n & 1) r = add(r, b);
      n >>= 1;
      if (n) b = add(b, b);
    }
    return r;
  }

  std::string to_string() const {
    return "[" + field_str(a1()) + ", " + field_str(a2()) + ", " + field_str(a3()) + ", " + field_str(a4()) + ", " +
           field_str(a6()) + "]";
  }

 private:
  std::array<F, 5> a_;
};

using CurveQ = WeierstrassCurve<Rat>;
using CurveK = WeierstrassCurve<NfElem>;
using CurveFq = WeierstrassCurve<FqElem>;
using CurveQp = WeierstrassCurve<PadicElem>;
using PointQ = EcPoint<Rat>;
using PointK = EcPoint<NfElem>;
using PointFq = EcPoint<FqElem>;
using PointQp = EcPoint<PadicElem>;

}  // namespace gfe::ec
