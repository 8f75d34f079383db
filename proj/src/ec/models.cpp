#include "gfe/ec/models.hpp"

#include "gfe/ec/torsion.hpp"

namespace gfe::ec {

TernaryCubic<NfElem> quotient_cubic(const descent::Genus1Quotient& q) {
  TernaryCubic<NfElem> C(q.c);
  C.at(3, 0) = q.c;
  C.at(0, 3) = -q.cubic[0];
  C.at(0, 2) = -q.cubic[1];
  C.at(0, 1) = -q.cubic[2];
  C.at(0, 0) = -q.cubic[3];
  return C;
}

TernaryCubic<Rat> rational_cubic(const descent::Genus1Quotient& q) {
  if (q.c.field()->degree() != 1) throw EcError("quotient is not defined over Q");
  TernaryCubic<Rat> C(Rat(0));
  C.at(3, 0) = q.c.coord(0);
  C.at(0, 3) = -q.cubic[0].coord(0);
  C.at(0, 2) = -q.cubic[1].coord(0);
  C.at(0, 1) = -q.cubic[2].coord(0);
  C.at(0, 0) = -q.cubic[3].coord(0);
  return C;
}

QuotientModelQ rational_quotient_model(const descent::Genus1Quotient& q, const Vec3<Rat>& base) {
  QuotientModelQ m;
  m.flex = flex_to_weierstrass(rational_cubic(q), base);
  auto im = integral_short_model(m.flex.E);
  m.iso = im.iso;
  m.target = im.curve;
  return m;
}

std::optional<QuotientModelK> model_onto(const TernaryCubic<NfElem>& cubic, const Vec3<NfElem>& flex, const NfElem& B) {
  QuotientModelK m;
  m.flex = flex_to_weierstrass(cubic, flex);
  auto s = to_short_form(m.flex.E);
  CurveK S = s.apply(m.flex.E);
  if (!S.a4().is_zero()) return std::nullopt;
  auto mu = arith::nth_root(B / S.a6(), 6);
  if (!mu) return std::nullopt;
  WeierstrassIso<NfElem> scale{mu->inverse(), B.zero_like(), B.zero_like(), B.zero_like()};
  m.iso = s.then(scale);
  m.target = m.iso.apply(m.flex.E);
  if (!(m.target.a6() == B) || !m.target.is_short() || !m.target.a4().is_zero()) throw EcError("model_onto: scaling failed");
  return m;
}

Vec3<Rat> rational_base_point(const descent::Genus1Quotient& q) {
  // u = 0 and a rational root of the binary cubic
  auto C = rational_cubic(q);
  for (long s = -4; s <= 4; ++s) {
    Vec3<Rat> p{Rat(0), Rat(s), Rat(1)};
    if (arith::is_zero(C.eval(p))) return p;
  }
  Vec3<Rat> p{Rat(0), Rat(1), Rat(0)};
  if (arith::is_zero(C.eval(p))) return p;
  throw EcError("no small rational base point on " + q.label);
}

std::optional<Vec3<NfElem>> field_flex(const descent::Genus1Quotient& q) {
  auto C = quotient_cubic(q);
  const NfElem& c = q.c;
  NfElem z = c.zero_like(), one = c.one_like();
  // the s^2 t coefficient is theta_i when the roots sum to zero
  Vec3<NfElem> p{z, -q.cubic[1], one};
  if (C.eval(p).is_zero()) return p;
  return std::nullopt;
}

std::string plane_to_string(const Vec3<Rat>& p) {
  auto q = primitive_plane(p);
  return "(" + arith::to_string(q[1]) + ":" + arith::to_string(q[2]) + ":" + arith::to_string(q[0]) + ")";
}

param::STValue plane_st(const Vec3<Rat>& p) {
  if (arith::is_zero(p[2])) return param::STValue::infinity();
  return param::STValue::of(p[1] / p[2]);
}

Vec3<Rat> primitive_plane(const Vec3<Rat>& p) {
  Int den = 1;
  for (const auto& c : p) den = arith::lcm(den, Int(c.get_den()));
  Int g = 0;
  for (const auto& c : p) g = arith::gcd(g, Int(Rat(c * den).get_num()));
  Vec3<Rat> q;
  for (std::size_t i = 0; i < 3; ++i) q[i] = Rat(p[i] * den) / Rat(g);
  // make the first nonzero of (s, t, u) positive
  for (int i : {1, 2, 0})
    if (!arith::is_zero(q[static_cast<std::size_t>(i)])) {
      if (q[static_cast<std::size_t>(i)] < 0)
        for (auto& c : q) c = -c;
      break;
    }
  return q;
}

}  // namespace gfe::ec
