#pragma once

#include <array>
#include <vector>

#include "gfe/ec/curve.hpp"

namespace gfe::ec {

template <class F>
using Vec3 = std::array<F, 3>;
template <class F>
using Mat3 = std::array<Vec3<F>, 3>;  // row-major

/* Homogeneous cubic in X0, X1, X2; coefficient of X0^i X1^j X2^(3-i-j) at index(i, j). */
template <class F>
class TernaryCubic {
 public:
  TernaryCubic() = default;
  explicit TernaryCubic(const F& like) { c_.fill(field_zero(like)); }

  static int index(int i, int j) {
    // (i, j) with i + j <= 3, ordered by i then j
    static const int base[4] = {0, 4, 7, 9};
    return base[i] + j;
  }
  F& at(int i, int j) { return c_[static_cast<std::size_t>(index(i, j))]; }
  const F& at(int i, int j) const { return c_[static_cast<std::size_t>(index(i, j))]; }

  F eval(const Vec3<F>& p) const {
    F r = field_zero(c_[0]);
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; i + j <= 3; ++j) {
        const F& c = at(i, j);
        if (field_is_zero(c)) continue;
        r = r + c * pw(p[0], i) * pw(p[1], j) * pw(p[2], 3 - i - j);
      }
    return r;
  }

  Vec3<F> gradient(const Vec3<F>& p) const {
    Vec3<F> g{field_zero(c_[0]), field_zero(c_[0]), field_zero(c_[0])};
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; i + j <= 3; ++j) {
        const F& c = at(i, j);
        if (field_is_zero(c)) continue;
        int k = 3 - i - j;
        if (i) g[0] = g[0] + field_int(c, i) * c * pw(p[0], i - 1) * pw(p[1], j) * pw(p[2], k);
        if (j) g[1] = g[1] + field_int(c, j) * c * pw(p[0], i) * pw(p[1], j - 1) * pw(p[2], k);
        if (k) g[2] = g[2] + field_int(c, k) * c * pw(p[0], i) * pw(p[1], j) * pw(p[2], k - 1);
      }
    return g;
  }

  Mat3<F> hessian_matrix(const Vec3<F>& p) const {
    F z = field_zero(c_[0]);
    Mat3<F> H{Vec3<F>{z, z, z}, Vec3<F>{z, z, z}, Vec3<F>{z, z, z}};
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; i + j <= 3; ++j) {
        const F& c = at(i, j);
        if (field_is_zero(c)) continue;
        std::array<int, 3> e{i, j, 3 - i - j};
        for (int r = 0; r < 3; ++r)
          for (int s = 0; s < 3; ++s) {
            std::array<int, 3> d = e;
            long coef = d[static_cast<std::size_t>(r)];
            if (!coef) continue;
            --d[static_cast<std::size_t>(r)];
            coef *= d[static_cast<std::size_t>(s)];
            if (!coef) continue;
            --d[static_cast<std::size_t>(s)];
            H[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] =
                H[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] +
                field_int(c, coef) * c * pw(p[0], d[0]) * pw(p[1], d[1]) * pw(p[2], d[2]);
          }
      }
    return H;
  }

  /* F(M X) as a cubic in X. */
  TernaryCubic substitute(const Mat3<F>& M) const {
    // polynomials in X as dense 4x4x4 arrays
    using Dense = std::array<F, 64>;
    F z = field_zero(c_[0]);
    auto zero = [&] {
      Dense d;
      d.fill(z);
      return d;
    };
    auto idx = [](int a, int b, int c) { return static_cast<std::size_t>(a * 16 + b * 4 + c); };
    auto mul = [&](const Dense& A, const Dense& B) {
      Dense C = zero();
      for (int a = 0; a < 4; ++a)
        for (int b = 0; a + b < 4; ++b)
          for (int c = 0; a + b + c < 4; ++c) {
            if (field_is_zero(A[idx(a, b, c)])) continue;
            for (int d = 0; a + d < 4; ++d)
              for (int e = 0; a + b + d + e < 4; ++e)
                for (int f = 0; a + b + c + d + e + f < 4; ++f)
                  if (!field_is_zero(B[idx(d, e, f)]))
                    C[idx(a + d, b + e, c + f)] = C[idx(a + d, b + e, c + f)] + A[idx(a, b, c)] * B[idx(d, e, f)];
          }
      return C;
    };
    std::array<Dense, 3> lin;
    for (int r = 0; r < 3; ++r) {
      lin[static_cast<std::size_t>(r)] = zero();
      lin[static_cast<std::size_t>(r)][idx(1, 0, 0)] = M[static_cast<std::size_t>(r)][0];
      lin[static_cast<std::size_t>(r)][idx(0, 1, 0)] = M[static_cast<std::size_t>(r)][1];
      lin[static_cast<std::size_t>(r)][idx(0, 0, 1)] = M[static_cast<std::size_t>(r)][2];
    }
    Dense one = zero();
    one[idx(0, 0, 0)] = field_int(z, 1);
    Dense total = zero();
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; i + j <= 3; ++j) {
        const F& c = at(i, j);
        if (field_is_zero(c)) continue;
        Dense m = one;
        for (int q = 0; q < i; ++q) m = mul(m, lin[0]);
        for (int q = 0; q < j; ++q) m = mul(m, lin[1]);
        for (int q = 0; q < 3 - i - j; ++q) m = mul(m, lin[2]);
        for (std::size_t q = 0; q < 64; ++q)
          if (!field_is_zero(m[q])) total[q] = total[q] + c * m[q];
      }
    TernaryCubic out(z);
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; i + j <= 3; ++j) out.at(i, j) = total[idx(i, j, 3 - i - j)];
    return out;
  }

 private:
  static F pw(const F& x, int e) {
    F r = field_int(x, 1);
    for (int q = 0; q < e; ++q) r = r * x;
    return r;
  }
  std::array<F, 10> c_;
};

template <class F>
F det3(const Mat3<F>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

template <class F>
Mat3<F> inverse3(const Mat3<F>& m) {
  F d = det3(m);
  if (field_is_zero(d)) throw EcError("singular 3x3 matrix");
  Mat3<F> r = m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          (m[static_cast<std::size_t>(i1)][static_cast<std::size_t>(j1)] * m[static_cast<std::size_t>(i2)][static_cast<std::size_t>(j2)] -
           m[static_cast<std::size_t>(i1)][static_cast<std::size_t>(j2)] * m[static_cast<std::size_t>(i2)][static_cast<std::size_t>(j1)]) /
          d;
    }
  return r;
}

template <class F>
Vec3<F> apply3(const Mat3<F>& m, const Vec3<F>& v) {
  Vec3<F> r;
  for (std::size_t i = 0; i < 3; ++i) r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return r;
}

template <class F>
bool proportional(const Vec3<F>& a, const Vec3<F>& b) {
  return field_is_zero(a[0] * b[1] - a[1] * b[0]) && field_is_zero(a[0] * b[2] - a[2] * b[0]) &&
         field_is_zero(a[1] * b[2] - a[2] * b[1]);
}

/* x = u^2 x' + r, y = u^3 y' + u^2 s x' + t, taking the old model to the new one. */
template <class F>
struct WeierstrassIso {
  F u, r, s, t;

  static WeierstrassIso identity(const F& like) { return {field_int(like, 1), field_zero(like), field_zero(like), field_zero(like)}; }

  WeierstrassCurve<F> apply(const WeierstrassCurve<F>& E) const {
    F two = field_int(u, 2), three = field_int(u, 3);
    F u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    F a1 = (E.a1() + two * s) / u;
    F a2 = (E.a2() - s * E.a1() + three * r - s * s) / u2;
    F a3 = (E.a3() + r * E.a1() + two * t) / u3;
    F a4 = (E.a4() - s * E.a3() + two * r * E.a2() - (t + r * s) * E.a1() + three * r * r - two * s * t) / u4;
    F a6 = (E.a6() + r * E.a4() + r * r * E.a2() + r * r * r - t * E.a3() - t * t - r * t * E.a1()) / u6;
    return WeierstrassCurve<F>(a1, a2, a3, a4, a6);
  }
  EcPoint<F> forward(const EcPoint<F>& P) const {
    if (P.infinity) return P;
    F u2 = u * u;
    F xn = (P.x - r) / u2;
    F yn = (P.y - s * (P.x - r) - t) / (u2 * u);
    return EcPoint<F>::affine(xn, yn);
  }
  EcPoint<F> backward(const EcPoint<F>& P) const {
    if (P.infinity) return P;
    F u2 = u * u;
    return EcPoint<F>::affine(u2 * P.x + r, u2 * u * P.y + u2 * s * P.x + t);
  }
  /* this, then next. */
  WeierstrassIso then(const WeierstrassIso& n) const {
    F u2 = u * u;
    return {u * n.u, u2 * n.r + r, u * n.s + s, u2 * u * n.t + u2 * s * n.r + t};
  }
};

/* The change of variables removing a1, a2, a3. */
template <class F>
WeierstrassIso<F> to_short_form(const WeierstrassCurve<F>& E) {
  F two = field_int(E.a1(), 2), twelve = field_int(E.a1(), 12);
  F r = -E.b2() / twelve;
  F s = -E.a1() / two;
  F t = -(E.a3() + r * E.a1()) / two;
  return {field_int(E.a1(), 1), r, s, t};
}

/* c0 x + c1 y + c2 on a Weierstrass model (projectively c0 X + c1 Y + c2 Z). */
template <class F>
struct LinearForm {
  F cx, cy, c1;
  F eval(const EcPoint<F>& P) const { return cx * P.x + cy * P.y + c1; }
};

/* A smooth plane cubic with a flex P sent to the origin of a Weierstrass model:
   plane = A (X, Y, 1) with X = -(a/kappa) x, Y = (a/kappa) y on E. */
template <class F>
struct FlexModel {
  TernaryCubic<F> cubic;
  Vec3<F> flex;
  Mat3<F> A, Ainv;
  F a, kappa;
  WeierstrassCurve<F> E;

  EcPoint<F> to_curve(const Vec3<F>& p) const {
    if (!field_is_zero(cubic.eval(p))) throw EcError("point not on the plane cubic");
    Vec3<F> X = apply3(Ainv, p);
    if (field_is_zero(X[2])) {
      if (!proportional(p, flex)) throw EcError("unexpected point on the flex tangent");
      return EcPoint<F>::at_infinity();
    }
    F Xa = X[0] / X[2], Ya = X[1] / X[2];
    return EcPoint<F>::affine(-(kappa / a) * Xa, (kappa / a) * Ya);
  }
  Vec3<F> to_plane(const EcPoint<F>& P) const {
    if (P.infinity) return flex;
    F one = field_int(a, 1);
    return apply3(A, Vec3<F>{-(a / kappa) * P.x, (a / kappa) * P.y, one});
  }
  /* Plane coordinate i as a linear form in (x, y, 1) on E. */
  LinearForm<F> coordinate_form(int i) const {
    const auto& row = A[static_cast<std::size_t>(i)];
    return {-(a / kappa) * row[0], (a / kappa) * row[1], row[2]};
  }
};

template <class F>
FlexModel<F> flex_to_weierstrass(const TernaryCubic<F>& cubic, const Vec3<F>& P) {
  if (!field_is_zero(cubic.eval(P))) throw EcError("flex point not on the cubic");
  Vec3<F> L = cubic.gradient(P);
  int k = -1;
  for (int i = 0; i < 3; ++i)
    if (!field_is_zero(L[static_cast<std::size_t>(i)])) k = i;
  if (k < 0) throw EcError("cubic singular at the chosen point");
  if (!field_is_zero(det3(cubic.hessian_matrix(P)))) throw EcError("chosen point is not a flex");
  const F& lk = L[static_cast<std::size_t>(k)];
  F z = field_zero(lk), one = field_int(lk, 1);
  Vec3<F> c2{z, z, z};
  c2[static_cast<std::size_t>(k)] = one / lk;
  Vec3<F> c0{z, z, z};
  bool found = false;
  for (int i = 0; i < 3 && !found; ++i) {
    if (i == k) continue;
    Vec3<F> v{z, z, z};
    v[static_cast<std::size_t>(i)] = one;
    v[static_cast<std::size_t>(k)] = -L[static_cast<std::size_t>(i)] / lk;
    if (!proportional(v, P)) {
      c0 = v;
      found = true;
    }
  }
  FlexModel<F> m;
  m.cubic = cubic;
  m.flex = P;
  for (std::size_t r = 0; r < 3; ++r) m.A[r] = Vec3<F>{c0[r], P[r], c2[r]};
  m.Ainv = inverse3(m.A);
  TernaryCubic<F> G = cubic.substitute(m.A);
  // G(X0, X1, 0) = kappa X0^3 at a flex with tangent X2 = 0
  if (!field_is_zero(G.at(0, 3)) || !field_is_zero(G.at(1, 2)) || !field_is_zero(G.at(2, 1)))
    throw EcError("flex normal form failed");
  m.kappa = G.at(3, 0);
  m.a = G.at(0, 2);
  if (field_is_zero(m.kappa) || field_is_zero(m.a)) throw EcError("singular cubic rejected");
  const F& a = m.a;
  const F& kap = m.kappa;
  F b = G.at(1, 1), d = G.at(2, 0), c = G.at(0, 1), e = G.at(1, 0), f = G.at(0, 0);
  m.E = WeierstrassCurve<F>(-b / a, -d / a, c * kap / (a * a), e * kap / (a * a), -f * kap * kap / (a * a * a));
  return m;
}

}  // namespace gfe::ec
