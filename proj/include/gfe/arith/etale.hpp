#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfe/arith/number_field.hpp"
#include "gfe/arith/upoly.hpp"

namespace gfe::arith {

struct AlgebraComponent {
  FieldPtr field;
  NfElem theta_image;  // m_i(theta), a root of the defining polynomial in `field`
};

class EtaleAlgebra;
using AlgebraPtr = std::shared_ptr<const EtaleAlgebra>;

/* A = Q[x]/(f) for squarefree f of degree 4, together with its component maps. */
class EtaleAlgebra {
 public:
  /* Components from the factorization of f over Q; each irreducible factor g
     of degree > 1 gives a field Q[x]/(g) with theta mapped to its generator. */
  static AlgebraPtr from_factorization(const UPoly& f, const std::string& component_name = "beta");
  /* Components supplied explicitly, e.g. theta = alpha^2 - 2 alpha in a field given by alpha. */
  static AlgebraPtr with_components(const UPoly& f, std::vector<AlgebraComponent> components);

  const UPoly& defining_poly() const { return f_; }
  const UPoly& monic_poly() const { return monic_; }
  const Rat& leading_coefficient() const { return lead_; }
  int degree() const { return f_.degree(); }
  const std::vector<AlgebraComponent>& components() const { return comps_; }
  /* coordinates of theta^k modulo the monic polynomial, 0 <= k <= 2 deg - 2 */
  const std::vector<Rat>& power(int k) const { return powers_[static_cast<std::size_t>(k)]; }

 private:
  EtaleAlgebra(UPoly f, std::vector<AlgebraComponent> comps);
  UPoly f_, monic_;
  Rat lead_;
  std::vector<AlgebraComponent> comps_;
  std::vector<std::vector<Rat>> powers_;
};

class ZeroDivisorError : public ArithError {
 public:
  ZeroDivisorError(std::size_t component, const std::string& what) : ArithError(what), component_(component) {}
  std::size_t component() const { return component_; }

 private:
  std::size_t component_;
};

class AlgElem {
 public:
  AlgElem() = default;
  AlgElem(AlgebraPtr alg, std::vector<Rat> coords);
  static AlgElem from_rat(const AlgebraPtr& alg, const Rat& r);
  static AlgElem theta(const AlgebraPtr& alg);
  /* Inverse of the component map: the element whose i-th image is parts[i]. */
  static AlgElem from_components(const AlgebraPtr& alg, const std::vector<NfElem>& parts);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<Rat>& coords() const { return c_; }
  const Rat& coord(int i) const { return c_[static_cast<std::size_t>(i)]; }

  NfElem component(std::size_t i) const;
  bool is_invertible() const;
  bool is_one() const;

  AlgElem operator-() const;
  friend AlgElem operator+(const AlgElem& a, const AlgElem& b);
  friend AlgElem operator-(const AlgElem& a, const AlgElem& b);
  friend AlgElem operator*(const AlgElem& a, const AlgElem& b);
  friend AlgElem operator*(const Rat& r, const AlgElem& a);
  friend bool operator==(const AlgElem& a, const AlgElem& b) { return a.c_ == b.c_; }

  /* Column j holds the coordinates of this * theta^j. */
  std::vector<std::vector<Rat>> mult_matrix() const;
  AlgElem inverse() const;
  AlgElem pow(long e) const;
  Rat norm() const;
  /* Independent route: Res(f, a(x)) / lc(f)^deg(a). */
  Rat norm_by_resultant() const;

  std::string to_string(const std::string& var = "theta") const;

 private:
  AlgebraPtr alg_;
  std::vector<Rat> c_;
};

AlgElem parse_alg_elem(const AlgebraPtr& alg, const std::vector<std::string>& coords);
std::vector<std::string> coords_to_strings(const AlgElem& a);

}  // namespace gfe::arith
