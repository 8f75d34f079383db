#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gfe/arith/modp.hpp"

namespace gfe::arith {

class FiniteField;
using FqPtr = std::shared_ptr<const FiniteField>;

/* F_q = F_p[x]/(h) with p < 2^31 and degree f <= 4. */
class FiniteField {
 public:
  static FqPtr create(long p, const ModPoly& h);
  static FqPtr prime_field(long p);

  long p() const { return p_; }
  int degree() const { return f_; }
  /* q = p^f as a 64-bit integer. */
  std::int64_t order() const { return q_; }
  const std::array<std::int64_t, 5>& modulus() const { return h_; }

 private:
  FiniteField(long p, const ModPoly& h);
  long p_;
  int f_;
  std::int64_t q_;
  std::array<std::int64_t, 5> h_{};
};

class FqElem {
 public:
  FqElem() = default;
  FqElem(FqPtr F, std::array<std::int64_t, 4> c);
  static FqElem from_int(const FqPtr& F, std::int64_t v);
  static FqElem from_coords(const FqPtr& F, const std::vector<Int>& c);
  /* Element with index in [0, q), coordinates as base-p digits. */
  static FqElem from_index(const FqPtr& F, std::int64_t idx);

  const FqPtr& field() const { return F_; }
  const std::array<std::int64_t, 4>& coords() const { return c_; }
  std::int64_t index() const;
  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
  bool in_prime_field() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

  FqElem zero_like() const { return from_int(F_, 0); }
  FqElem one_like() const { return from_int(F_, 1); }
  FqElem from_int_like(long v) const { return from_int(F_, v); }

  FqElem operator-() const;
  friend FqElem operator+(const FqElem& a, const FqElem& b);
  friend FqElem operator-(const FqElem& a, const FqElem& b);
  friend FqElem operator*(const FqElem& a, const FqElem& b);
  friend FqElem operator/(const FqElem& a, const FqElem& b) { return a * b.inverse(); }
  FqElem& operator+=(const FqElem& o) { return *this = *this + o; }
  FqElem& operator-=(const FqElem& o) { return *this = *this - o; }
  FqElem& operator*=(const FqElem& o) { return *this = *this * o; }
  FqElem& operator/=(const FqElem& o) { return *this = *this / o; }
  friend bool operator==(const FqElem& a, const FqElem& b) { return a.c_ == b.c_; }
  friend bool operator!=(const FqElem& a, const FqElem& b) { return a.c_ != b.c_; }
  friend bool operator<(const FqElem& a, const FqElem& b) { return a.c_ < b.c_; }

  FqElem inverse() const;
  FqElem pow(std::uint64_t e) const;
  std::string to_string() const;

 private:
  FqPtr F_;
  std::array<std::int64_t, 4> c_{};
};

}  // namespace gfe::arith
