#include "gfe/param/param.hpp"

#include <algorithm>
#include <sstream>

namespace gfe::param {

using arith::ArithError;

STValue STValue::ratio(const Rat& s, const Rat& t) {
  if (arith::is_zero(t)) {
    if (arith::is_zero(s)) throw ArithError("s/t indeterminate at (0,0)");
    return infinity();
  }
  return of(s / t);
}

STValue STValue::parse(const std::string& text) {
  if (text == "inf" || text == "oo" || text == "infinity") return infinity();
  return of(arith::parse_rat(text));
}

bool operator<(const STValue& a, const STValue& b) {
  if (a.is_infinity()) return false;
  if (b.is_infinity()) return true;
  return a.value() < b.value();
}

std::string STValue::to_string() const { return is_infinity() ? "inf" : arith::to_string(*v_); }

namespace {

MPoly S() { return MPoly::variable(2, 0); }
MPoly T() { return MPoly::variable(2, 1); }
MPoly C(const Rat& c) { return MPoly::constant(2, c); }

MPoly F1() { return S().pow(4) + C(6) * S().pow(2) * T().pow(2) - C(3) * T().pow(4); }
MPoly F2() { return -S().pow(4) + C(6) * S().pow(2) * T().pow(2) + C(3) * T().pow(4); }

}  // namespace

std::string Parametrization::name() const {
  std::ostringstream os;
  os << "family" << family << (swapped ? "-swap" : "") << (z_sign > 0 ? "+" : "-");
  return os.str();
}

std::tuple<Rat, Rat, Rat> Parametrization::evaluate(const Rat& s, const Rat& t) const {
  std::vector<Rat> pt{s, t};
  return {x.eval(pt), v.eval(pt), z.eval(pt)};
}

bool verify_identity(const Parametrization& p) {
  MPoly lhs = p.x.pow(3) + p.v.pow(3) - p.z.pow(2);
  return lhs.is_zero();
}

std::vector<Parametrization> mordell_families() {
  struct Base {
    MPoly first, second, z;
  };
  std::vector<Base> bases{
      {F1(), F2(), C(6) * S() * T() * (S().pow(4) + C(3) * T().pow(4))},
      {C(Rat(1, 4)) * F1(), C(Rat(1, 4)) * F2(), C(Rat(3, 4)) * S() * T() * (S().pow(4) + C(3) * T().pow(4))},
      {S() * (S().pow(3) + C(8) * T().pow(3)), C(4) * T() * (T().pow(3) - S().pow(3)),
       S().pow(6) - C(20) * S().pow(3) * T().pow(3) - C(8) * T().pow(6)},
  };
  std::vector<Parametrization> out;
  for (std::size_t fam = 0; fam < bases.size(); ++fam)
    for (bool swap : {false, true})
      for (int sign : {1, -1}) {
        Parametrization p;
        p.family = static_cast<int>(fam) + 1;
        p.swapped = swap;
        p.z_sign = sign;
        p.x = swap ? bases[fam].second : bases[fam].first;
        p.v = swap ? bases[fam].first : bases[fam].second;
        p.z = Rat(sign) * bases[fam].z;
        if (!verify_identity(p)) throw ArithError("parametrization identity fails: " + p.name());
        out.push_back(std::move(p));
      }
  return out;
}

std::string QuarticEquation::to_string() const {
  std::ostringstream os;
  os << "y^3 = ";
  if (constant != 1) os << arith::to_string(constant) << "*(";
  os << form.to_string({"s", "t"});
  if (constant != 1) os << ")";
  return os.str();
}

std::vector<QuarticEquation> six_equations() {
  return {
      {1, Rat(1), F1()},
      {2, Rat(1), F2()},
      {3, Rat(1, 4), F1()},
      {4, Rat(1, 4), F2()},
      {5, Rat(1), S() * (S().pow(3) + C(8) * T().pow(3))},
      {6, Rat(4), T() * (T().pow(3) - S().pow(3))},
  };
}

const QuarticEquation& equation(int id) {
  static const std::vector<QuarticEquation> eqs = six_equations();
  if (id < 1 || id > 6) throw ArithError("equation id must be 1..6");
  return eqs[static_cast<std::size_t>(id - 1)];
}

bool SolutionTriple::holds() const {
  if (kind == Kind::CubeCubeSquare) return x * x * x + y * y * y == z * z;
  return x * x * x + arith::pow_rat(y, 9) == z * z;
}

std::string SolutionTriple::to_string() const {
  std::ostringstream os;
  os << "(" << arith::to_string(x) << "," << arith::to_string(y) << "," << arith::to_string(z) << ")";
  return os.str();
}

STY eq5_eq6_transfer(const STY& a) { return {-a.t / 2, a.s / 4, a.y / 4}; }

STY eq6_eq5_transfer(const STY& a) { return {4 * a.t, -2 * a.s, 4 * a.y}; }

STValue eq5_eq6_st_map(const STValue& v) {
  if (v.is_infinity()) return STValue::of(Rat(0));
  if (arith::is_zero(v.value())) return STValue::infinity();
  return STValue::of(Rat(-2) / v.value());
}

STY halve_transfer(const STY& a) { return {a.s / 2, a.t / 2, a.y / 4}; }

bool is_S_primitive(const std::vector<Rat>& values, const std::vector<long>& S) {
  Int g = 0;
  for (const auto& r : values) {
    Int den = r.get_den();
    for (long p : S)
      while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) den /= p;
    if (den != 1) throw ArithError("is_S_primitive: value not integral outside S");
    g = arith::gcd(g, r.get_num());
  }
  if (g == 0) return false;
  for (long p : S)
    while (mpz_divisible_ui_p(g.get_mpz_t(), static_cast<unsigned long>(p))) g /= p;
  return g == 1;
}

STY weighted_rescale(const STY& a, const Rat& lambda) {
  if (arith::is_zero(lambda)) throw ArithError("weighted_rescale with lambda = 0");
  Rat l3 = lambda * lambda * lambda;
  return {l3 * a.s, l3 * a.t, l3 * lambda * a.y};
}

bool satisfies(const QuarticEquation& eq, const STY& a) {
  return a.y * a.y * a.y == eq.rhs().eval({a.s, a.t});
}

std::optional<std::tuple<Int, Int, Int>> primitive_representative(const Int& x, const Int& v, const Int& z) {
  Int g = arith::gcd(arith::gcd(x, v), z);
  if (g == 0) return std::nullopt;
  Rat lambda = 1;
  const long kInf = 1L << 40;
  for (auto& [p, e] : arith::factor_small(g)) {
    long a = x == 0 ? kInf : arith::valuation(x, p);
    long b = v == 0 ? kInf : arith::valuation(v, p);
    long c = z == 0 ? kInf : arith::valuation(z, p);
    // min(2k + a, 2k + b, 3k + c) is strictly increasing in k; it must hit 0.
    bool found = false;
    long lo = -std::min({a, b, c});
    for (long k = lo; k <= 0; ++k) {
      long m = std::min({2 * k + a, 2 * k + b, 3 * k + c});
      if (m == 0) {
        lambda *= arith::pow_rat(Rat(p), k);
        found = true;
        break;
      }
      if (m > 0) break;
    }
    if (!found) return std::nullopt;
  }
  Rat l2 = lambda * lambda;
  Rat X = l2 * x, V = l2 * v, Z = l2 * lambda * z;
  if (!arith::is_integer(X) || !arith::is_integer(V) || !arith::is_integer(Z)) return std::nullopt;
  return std::make_tuple(X.get_num(), V.get_num(), Z.get_num());
}

std::optional<SolutionTriple> lift_to_ninth(const Int& x, const Int& v, const Int& z) {
  if (x * x * x + v * v * v != z * z) throw ArithError("lift_to_ninth: not a solution of x^3 + v^3 = z^2");
  auto rep = primitive_representative(x, v, z);
  if (!rep) return std::nullopt;
  auto [X, V, Z] = *rep;
  if (auto y = arith::exact_root(V, 3)) return SolutionTriple{Rat(X), Rat(*y), Rat(Z)};
  if (auto y = arith::exact_root(X, 3)) return SolutionTriple{Rat(V), Rat(*y), Rat(Z)};
  return std::nullopt;
}

}  // namespace gfe::param
