#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gfe/arith/etale.hpp"
#include "gfe/arith/mpoly.hpp"
#include "gfe/param/param.hpp"

namespace gfe::descent {

using arith::AlgebraPtr;
using arith::AlgElem;
using arith::FieldPtr;
using arith::Int;
using arith::MPoly;
using arith::NfElem;
using arith::Rat;
using arith::UPoly;
using param::STValue;

class DescentError : public arith::ArithError {
 public:
  using arith::ArithError::ArithError;
};

class IndeterminatePoint : public arith::ArithError {
 public:
  IndeterminatePoint() : arith::ArithError("Q0 and Q1 both vanish") {}
};

struct SelmerSetSpec {
  int equation_id = 0;
  AlgebraPtr algebra;
  std::vector<long> S;
  std::vector<AlgElem> generators;
  Rat C = 1;
};

/* A degree-one place of the algebra: theta -> root mod q, with q = 1 mod 3. */
struct CubicPlace {
  long q;
  long root;
};

std::vector<CubicPlace> cubic_places(const AlgebraPtr& alg, const std::vector<AlgElem>& nonvanishing, std::size_t count);
/* Cubic residue symbols in Z/3 at the given places; throws if a value is 0 mod a place. */
std::vector<int> cube_character_signature(const AlgElem& a, const std::vector<CubicPlace>& places);
int rank_mod3(std::vector<std::vector<int>> rows);

struct GeneratorReport {
  bool invertible = true;
  bool s_unit_mod_cubes = true;  // component norms have valuation 0 mod 3 outside S
  int character_rank = 0;        // F_3-rank of the cubic residue signatures
  bool independent() const;
  std::size_t count = 0;
};

GeneratorReport check_generators(const SelmerSetSpec& spec);
/* Throws DescentError when check_generators does not pass. */
void verify_generators(const SelmerSetSpec& spec);

/* Exponent vector of the index-th product, first generator most significant. */
std::vector<int> delta_exponents(std::size_t r, std::size_t index);
AlgElem delta_from_exponents(const SelmerSetSpec& spec, const std::vector<int>& e);
std::vector<AlgElem> enumerate_delta(const SelmerSetSpec& spec);

std::vector<AlgElem> cubic_norm_filter(const std::vector<AlgElem>& candidates, const Rat& C);
bool has_cubic_norm(const AlgElem& delta, const Rat& C);
/* a/b is a cube in every component. */
bool same_cube_class(const AlgElem& a, const AlgElem& b);
std::optional<AlgElem> cube_root(const AlgElem& a);

struct CubicFormSystem {
  AlgElem delta;
  std::array<MPoly, 4> Q;  // in y0..y3
};

/* f is the dehomogenised quartic f(x,1); it must define delta's algebra. */
CubicFormSystem build_descent_forms(const UPoly& f, const AlgElem& delta);
CubicFormSystem build_descent_forms(const AlgElem& delta);

STValue st_map(const CubicFormSystem& sys, const std::vector<Rat>& y);
/* y-vector on the curve Q2 = Q3 = 0 with s/t equal to v, found by taking cube roots
   of mu (s - theta t) / delta for mu in 2^a 3^b. */
std::optional<std::vector<Rat>> point_with_st(const CubicFormSystem& sys, const STValue& v);

struct Genus1Quotient {
  std::string label;
  std::size_t component = 0;
  NfElem c;                   // N(delta) / m_i(delta)
  std::array<NfElem, 4> cubic;  // coefficients of s^3, s^2 t, s t^2, t^3
  NfElem eval_cubic(const NfElem& s, const NfElem& t) const;
  bool contains(const NfElem& u, const NfElem& s, const NfElem& t) const;
  std::string to_string() const;
};

/* E_{1,delta}, E_{2,delta} for the split shape (1,1,2) and E_delta over K for an irreducible quartic. */
std::vector<Genus1Quotient> genus1_quotients(const AlgElem& delta);

}  // namespace gfe::descent
