#pragma once

#include <vector>

#include "gfe/arith/rational.hpp"
#include "gfe/arith/upoly.hpp"

namespace gfe::arith {

/* Dense polynomial with coefficients reduced modulo some M (constant term first). */
using ModPoly = std::vector<Int>;

ModPoly modpoly_reduce(const UPoly& f, const Int& m);
ModPoly modpoly_trim(ModPoly a);
ModPoly modpoly_add(const ModPoly& a, const ModPoly& b, const Int& m);
ModPoly modpoly_sub(const ModPoly& a, const ModPoly& b, const Int& m);
ModPoly modpoly_mul(const ModPoly& a, const ModPoly& b, const Int& m);
/* Division by a monic divisor. */
void modpoly_divmod_monic(const ModPoly& a, const ModPoly& b, const Int& m, ModPoly& q, ModPoly& r);
Int modpoly_eval(const ModPoly& a, const Int& x, const Int& m);
int modpoly_degree(const ModPoly& a);

/* Factorization of a squarefree polynomial of degree at most 4 over F_p into
   monic irreducibles (trial division by degree 1 and 2 polynomials). Throws if
   the reduction is not squarefree. Factors sorted by (degree, coefficients). */
std::vector<ModPoly> factor_mod_p_deg_le4(const UPoly& f, long p);
std::vector<Int> roots_mod_p(const ModPoly& f, long p);

/* Lifts a coprime monic factorization f = prod g_i mod p to mod p^n. f monic integral. */
std::vector<ModPoly> hensel_lift_factorization(const UPoly& f, const std::vector<ModPoly>& factors, long p,
                                               int n);

/* Lifts a simple root of f modulo p to a root modulo p^n. */
Int hensel_lift_root(const ModPoly& f, Int root, long p, int n);

/* Solves V c = w modulo M = q^k, where V is invertible modulo the prime q. */
std::vector<Int> solve_mod_prime_power(std::vector<std::vector<Int>> v, std::vector<Int> w, const Int& q,
                                       const Int& M);

}  // namespace gfe::arith
