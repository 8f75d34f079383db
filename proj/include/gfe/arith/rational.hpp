#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gfe::arith {

using Int = mpz_class;
using Rat = mpq_class;

class ArithError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/* Parses "a", "-a/b" (whitespace free). Result is canonicalized. */
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);
std::string to_string(const Int& n);

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }
inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

Int abs_int(const Int& n);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int pow_int(const Int& base, unsigned long e);
Rat pow_rat(const Rat& base, long e);

/* Floor of the n-th root of a nonnegative integer, and exact-root tests. */
Int iroot_floor(const Int& a, unsigned long n);
std::optional<Int> exact_root(const Int& a, unsigned long n);
std::optional<Rat> exact_root(const Rat& a, unsigned long n);
bool is_cube(const Rat& a);
bool is_square(const Int& a);

/* v_p of a nonzero integer / rational; p prime. */
long valuation(const Int& n, const Int& p);
long valuation(const Rat& r, const Int& p);

/* Trial-division factorization, intended for small arguments only. */
std::vector<std::pair<Int, unsigned>> factor_small(Int n);
std::vector<Int> positive_divisors(const Int& n);

/* Cube-free positive integer representing the class of a in Q* / Q*^3. */
Int cube_class_representative(const Rat& a);

bool is_probable_prime(const Int& n);
Int mod_pos(const Int& a, const Int& m);
/* Inverse of a modulo m; throws when a is not a unit. */
Int mod_inverse(const Int& a, const Int& m);
/* Reduction of a rational with denominator prime to m. */
Int rat_mod(const Rat& a, const Int& m);
/* Symmetric residue in (-m/2, m/2]. */
Int symmetric_residue(const Int& a, const Int& m);

}  // namespace gfe::arith
