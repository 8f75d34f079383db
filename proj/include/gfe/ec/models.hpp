#pragma once

#include <optional>
#include <string>

#include "gfe/descent/descent.hpp"
#include "gfe/ec/plane_cubic.hpp"
#include "gfe/param/param.hpp"

namespace gfe::ec {

/* num / den with linear forms in (x, y, 1). */
template <class F>
struct RationalFunctionOnE {
  LinearForm<F> num, den;

  /* nullopt means the value infinity; throws when both forms vanish. */
  std::optional<F> eval(const EcPoint<F>& P) const {
    if (P.infinity) {
      // leading behaviour at O: y dominates x
      if (!field_is_zero(den.cy)) return num.cy / den.cy;
      if (!field_is_zero(num.cy)) return std::nullopt;
      if (!field_is_zero(den.cx)) return num.cx / den.cx;
      if (!field_is_zero(num.cx)) return std::nullopt;
      throw EcError("function undefined at O");
    }
    F n = num.eval(P), d = den.eval(P);
    if (field_is_zero(d)) {
      if (field_is_zero(n)) throw EcError("function indeterminate at point");
      return std::nullopt;
    }
    return n / d;
  }
  /* Composition with P -> -P on a short model. */
  RationalFunctionOnE negated_y() const {
    return {{num.cx, -num.cy, num.c1}, {den.cx, -den.cy, den.c1}};
  }
  /* Equal as functions: num * den' - num' * den is the zero quadric. */
  bool same_function(const RationalFunctionOnE& o) const {
    auto cross = [](const LinearForm<F>& a, const LinearForm<F>& b, const LinearForm<F>& c, const LinearForm<F>& d) {
      // coefficients of x^2, xy, y^2, x, y, 1 in ab - cd
      std::array<F, 6> r{a.cx * b.cx - c.cx * d.cx,
                         a.cx * b.cy + a.cy * b.cx - c.cx * d.cy - c.cy * d.cx,
                         a.cy * b.cy - c.cy * d.cy,
                         a.cx * b.c1 + a.c1 * b.cx - c.cx * d.c1 - c.c1 * d.cx,
                         a.cy * b.c1 + a.c1 * b.cy - c.cy * d.c1 - c.c1 * d.cy,
                         a.c1 * b.c1 - c.c1 * d.c1};
      return r;
    };
    for (const auto& c : cross(num, o.den, o.num, den))
      if (!field_is_zero(c)) return false;
    return true;
  }
  std::string to_string() const {
    auto f = [](const LinearForm<F>& l) {
      return "(" + field_str(l.cx) + ")*x + (" + field_str(l.cy) + ")*y + (" + field_str(l.c1) + ")";
    };
    return "[" + f(num) + "] / [" + f(den) + "]";
  }
};

/* A quotient c u^3 = g(s, t) in coordinates (u : s : t) taken to a Weierstrass model. */
template <class F>
struct QuotientModel {
  FlexModel<F> flex;
  WeierstrassIso<F> iso;  // flex model -> target
  WeierstrassCurve<F> target;

  Vec3<F> to_plane(const EcPoint<F>& P) const { return flex.to_plane(iso.backward(P)); }
  EcPoint<F> from_plane(const Vec3<F>& p) const { return iso.forward(flex.to_curve(p)); }
  LinearForm<F> coordinate_form(int i) const {
    LinearForm<F> l = flex.coordinate_form(i);
    F u2 = iso.u * iso.u;
    return {l.cx * u2 + l.cy * u2 * iso.s, l.cy * u2 * iso.u, l.cx * iso.r + l.cy * iso.t + l.c1};
  }
  /* s/t on the target model. */
  RationalFunctionOnE<F> st_function() const { return {coordinate_form(1), coordinate_form(2)}; }
};

using QuotientModelQ = QuotientModel<Rat>;
using QuotientModelK = QuotientModel<NfElem>;

/* c u^3 - g(s, t) in (u : s : t). */
TernaryCubic<NfElem> quotient_cubic(const descent::Genus1Quotient& q);
TernaryCubic<Rat> rational_cubic(const descent::Genus1Quotient& q);

/* Over Q: flex at the given base point, then the integral short model. */
QuotientModelQ rational_quotient_model(const descent::Genus1Quotient& q, const Vec3<Rat>& base);

/* Over K: flex model, short form, then y^2 = x^3 + B via (x, y) -> (mu^2 x, mu^3 y).
   Returns nullopt when the short model is not j = 0 or B'/B is not a sixth power. */
std::optional<QuotientModelK> model_onto(const TernaryCubic<NfElem>& cubic, const Vec3<NfElem>& flex, const NfElem& B);

/* The standard base points: (0 : -2 : 1) on E1 and (0 : 0 : 1) on E2 over Q; (0 : -theta : 1) on
   E_delta when the quartic is even. */
Vec3<Rat> rational_base_point(const descent::Genus1Quotient& q);
std::optional<Vec3<NfElem>> field_flex(const descent::Genus1Quotient& q);

/* (u : s : t) as a printable triple and as s/t. */
std::string plane_to_string(const Vec3<Rat>& p);
param::STValue plane_st(const Vec3<Rat>& p);
Vec3<Rat> primitive_plane(const Vec3<Rat>& p);

}  // namespace gfe::ec
