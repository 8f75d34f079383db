#include "gfe/arith/etale.hpp"

#include "gfe/arith/factor.hpp"

namespace gfe::arith {

EtaleAlgebra::EtaleAlgebra(UPoly f, std::vector<AlgebraComponent> comps)
    : f_(std::move(f)), comps_(std::move(comps)) {
  lead_ = f_.leading();
  monic_ = f_.monic();
  int n = f_.degree();
  for (int k = 0; k <= 2 * n - 2; ++k) {
    UPoly r = UPoly::monomial(Rat(1), k) % monic_;
    std::vector<Rat> c(static_cast<std::size_t>(n), Rat(0));
    for (int i = 0; i <= r.degree(); ++i) c[static_cast<std::size_t>(i)] = r.coeff(i);
    powers_.push_back(std::move(c));
  }
}

AlgebraPtr EtaleAlgebra::from_factorization(const UPoly& f, const std::string& component_name) {
  if (!is_squarefree(f)) throw ArithError("etale algebra needs a squarefree polynomial");
  auto fac = factor_deg_le4(f);
  std::vector<AlgebraComponent> comps;
  for (auto& [g, mult] : fac.factors) {
    if (g.degree() == 1) {
      FieldPtr q = NumberField::rationals();
      comps.push_back({q, NfElem::from_rat(q, -g.coeff(0))});
    } else {
      FieldPtr k = NumberField::create(g, component_name);
      comps.push_back({k, NfElem::generator(k)});
    }
  }
  return with_components(f, std::move(comps));
}

AlgebraPtr EtaleAlgebra::with_components(const UPoly& f, std::vector<AlgebraComponent> components) {
  if (!is_squarefree(f)) throw ArithError("etale algebra needs a squarefree polynomial");
  int total = 0;
  for (auto& c : components) {
    total += c.field->degree();
    if (!eval_poly(f, c.theta_image).is_zero()) throw ArithError("component image is not a root of f");
    // The image must generate the component field.
    if (c.field->degree() > 1) {
      std::vector<std::vector<Rat>> m(static_cast<std::size_t>(c.field->degree()));
      NfElem p = c.theta_image.one_like();
      for (int j = 0; j < c.field->degree(); ++j) {
        for (auto& x : p.coords()) m[static_cast<std::size_t>(j)].push_back(x);
        p *= c.theta_image;
      }
      if (is_zero(determinant(m))) throw ArithError("component image does not generate the field");
    }
  }
  if (total != f.degree()) throw ArithError("component degrees do not add up");
  return AlgebraPtr(new EtaleAlgebra(f, std::move(components)));
}

AlgElem::AlgElem(AlgebraPtr alg, std::vector<Rat> coords) : alg_(std::move(alg)), c_(std::move(coords)) {
  if (static_cast<int>(c_.size()) != alg_->degree()) throw ArithError("AlgElem coordinate count mismatch");
  for (auto& c : c_) c.canonicalize();
}

AlgElem AlgElem::from_rat(const AlgebraPtr& alg, const Rat& r) {
  std::vector<Rat> c(static_cast<std::size_t>(alg->degree()), Rat(0));
  c[0] = r;
  return AlgElem(alg, std::move(c));
}

AlgElem AlgElem::theta(const AlgebraPtr& alg) {
  std::vector<Rat> c(static_cast<std::size_t>(alg->degree()), Rat(0));
  c[1] = 1;
  return AlgElem(alg, std::move(c));
}

AlgElem AlgElem::from_components(const AlgebraPtr& alg, const std::vector<NfElem>& parts) {
  const auto& comps = alg->components();
  if (parts.size() != comps.size()) throw ArithError("from_components: wrong number of parts");
  int n = alg->degree();
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> rhs;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (!parts[i].field()->same_as(*comps[i].field)) throw ArithError("from_components: field mismatch");
    int d = comps[i].field->degree();
    std::vector<NfElem> pw{comps[i].theta_image.one_like()};
    for (int j = 1; j < n; ++j) pw.push_back(pw.back() * comps[i].theta_image);
    for (int k = 0; k < d; ++k) {
      std::vector<Rat> row;
      for (int j = 0; j < n; ++j) row.push_back(pw[static_cast<std::size_t>(j)].coord(k));
      rows.push_back(std::move(row));
      rhs.push_back(parts[i].coord(k));
    }
  }
  return AlgElem(alg, solve_linear(std::move(rows), std::move(rhs)));
}

NfElem AlgElem::component(std::size_t i) const {
  return eval_poly(UPoly(c_), alg_->components().at(i).theta_image);
}

bool AlgElem::is_invertible() const {
  for (std::size_t i = 0; i < alg_->components().size(); ++i)
    if (component(i).is_zero()) return false;
  return true;
}

bool AlgElem::is_one() const { return *this == from_rat(alg_, Rat(1)); }

AlgElem AlgElem::operator-() const { return Rat(-1) * *this; }

AlgElem operator+(const AlgElem& a, const AlgElem& b) {
  std::vector<Rat> c = a.c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
  return AlgElem(a.alg_, std::move(c));
}

AlgElem operator-(const AlgElem& a, const AlgElem& b) { return a + (-b); }

AlgElem operator*(const AlgElem& a, const AlgElem& b) {
  int n = a.alg_->degree();
  std::vector<Rat> prod(static_cast<std::size_t>(2 * n - 1), Rat(0));
  for (int i = 0; i < n; ++i) {
    if (is_zero(a.c_[static_cast<std::size_t>(i)])) continue;
    for (int j = 0; j < n; ++j) prod[static_cast<std::size_t>(i + j)] += a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
  }
  std::vector<Rat> out(static_cast<std::size_t>(n), Rat(0));
  for (int k = 0; k <= 2 * n - 2; ++k) {
    if (is_zero(prod[static_cast<std::size_t>(k)])) continue;
    const auto& red = a.alg_->power(k);
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] += prod[static_cast<std::size_t>(k)] * red[static_cast<std::size_t>(i)];
  }
  return AlgElem(a.alg_, std::move(out));
}

AlgElem operator*(const Rat& r, const AlgElem& a) {
  std::vector<Rat> c = a.c_;
  for (auto& x : c) x *= r;
  return AlgElem(a.alg_, std::move(c));
}

std::vector<std::vector<Rat>> AlgElem::mult_matrix() const {
  int n = alg_->degree();
  std::vector<std::vector<Rat>> m(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n)));
  AlgElem cur = *this, t = theta(alg_);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cur.c_[static_cast<std::size_t>(i)];
    cur = cur * t;
  }
  return m;
}

AlgElem AlgElem::inverse() const {
  for (std::size_t i = 0; i < alg_->components().size(); ++i)
    if (component(i).is_zero())
      throw ZeroDivisorError(i, "zero divisor: component " + std::to_string(i) + " vanishes");
  std::vector<Rat> e(static_cast<std::size_t>(alg_->degree()), Rat(0));
  e[0] = 1;
  return AlgElem(alg_, solve_linear(mult_matrix(), e));
}

AlgElem AlgElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  AlgElem r = from_rat(alg_, Rat(1)), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Rat AlgElem::norm() const {
  Rat n = 1;
  for (std::size_t i = 0; i < alg_->components().size(); ++i) n *= component(i).norm();
  return n;
}

Rat AlgElem::norm_by_resultant() const {
  UPoly a(c_);
  if (a.is_zero()) return Rat(0);
  return resultant(alg_->defining_poly(), a) / pow_rat(alg_->leading_coefficient(), a.degree());
}

std::string AlgElem::to_string(const std::string& var) const { return UPoly(c_).to_string(var); }

AlgElem parse_alg_elem(const AlgebraPtr& alg, const std::vector<std::string>& coords) {
  std::vector<Rat> c;
  for (auto& s : coords) c.push_back(parse_rat(s));
  return AlgElem(alg, std::move(c));
}

std::vector<std::string> coords_to_strings(const AlgElem& a) {
  std::vector<std::string> out;
  for (auto& c : a.coords()) out.push_back(arith::to_string(c));
  return out;
}

}  // namespace gfe::arith
