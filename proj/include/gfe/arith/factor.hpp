#pragma once

#include <utility>
#include <vector>

#include "gfe/arith/upoly.hpp"

namespace gfe::arith {

struct Factorization {
  Rat unit;                                  // leading coefficient of the input
  std::vector<std::pair<UPoly, int>> factors;  // monic irreducible, ascending degree
};

/* Complete factorization over Q of a nonzero polynomial of degree at most 4. */
Factorization factor_deg_le4(const UPoly& f);
bool is_irreducible_deg_le4(const UPoly& f);
UPoly expand(const Factorization& fac);

}  // namespace gfe::arith
