#include "gfe/arith/finite_field.hpp"

#include <sstream>

namespace gfe::arith {

namespace {

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

}  // namespace

FiniteField::FiniteField(long p, const ModPoly& h) : p_(p) {
  if (p < 2 || p >= (1L << 31)) throw ArithError("finite field characteristic out of range");
  f_ = static_cast<int>(h.size()) - 1;
  if (f_ < 1 || f_ > 4) throw ArithError("finite field degree must be 1..4");
  q_ = 1;
  for (int i = 0; i < f_; ++i) q_ *= p;
  Int P = p;
  for (int i = 0; i <= f_; ++i) h_[static_cast<std::size_t>(i)] = mod_pos(h[static_cast<std::size_t>(i)], P).get_si();
  if (h_[static_cast<std::size_t>(f_)] != 1) throw ArithError("finite field modulus must be monic");
}

FqPtr FiniteField::create(long p, const ModPoly& h) { return FqPtr(new FiniteField(p, h)); }

FqPtr FiniteField::prime_field(long p) { return create(p, ModPoly{Int(0), Int(1)}); }

FqElem::FqElem(FqPtr F, std::array<std::int64_t, 4> c) : F_(std::move(F)), c_(c) {
  long p = F_->p();
  for (int i = 0; i < 4; ++i) {
    auto& x = c_[static_cast<std::size_t>(i)];
    if (i >= F_->degree()) {
      x = 0;
      continue;
    }
    x %= p;
    if (x < 0) x += p;
  }
}

FqElem FqElem::from_int(const FqPtr& F, std::int64_t v) { return FqElem(F, {v, 0, 0, 0}); }

FqElem FqElem::from_coords(const FqPtr& F, const std::vector<Int>& c) {
  std::array<std::int64_t, 4> a{};
  Int P = F->p();
  for (std::size_t i = 0; i < c.size() && i < 4; ++i) a[i] = mod_pos(c[i], P).get_si();
  return FqElem(F, a);
}

FqElem FqElem::from_index(const FqPtr& F, std::int64_t idx) {
  std::array<std::int64_t, 4> a{};
  for (int i = 0; i < F->degree(); ++i) {
    a[static_cast<std::size_t>(i)] = idx % F->p();
    idx /= F->p();
  }
  return FqElem(F, a);
}

std::int64_t FqElem::index() const {
  std::int64_t idx = 0;
  for (int i = F_->degree() - 1; i >= 0; --i) idx = idx * F_->p() + c_[static_cast<std::size_t>(i)];
  return idx;
}

FqElem FqElem::operator-() const {
  FqElem r = *this;
  for (auto& x : r.c_)
    if (x) x = F_->p() - x;
  return r;
}

FqElem operator+(const FqElem& a, const FqElem& b) {
  FqElem r = a;
  long p = a.F_->p();
  for (std::size_t i = 0; i < 4; ++i) {
    r.c_[i] += b.c_[i];
    if (r.c_[i] >= p) r.c_[i] -= p;
  }
  return r;
}

FqElem operator-(const FqElem& a, const FqElem& b) {
  FqElem r = a;
  long p = a.F_->p();
  for (std::size_t i = 0; i < 4; ++i) {
    r.c_[i] -= b.c_[i];
    if (r.c_[i] < 0) r.c_[i] += p;
  }
  return r;
}

FqElem operator*(const FqElem& a, const FqElem& b) {
  const FiniteField& F = *a.F_;
  long p = F.p();
  int f = F.degree();
  FqElem r = a;
  if (f == 1) {
    r.c_[0] = mulmod(a.c_[0], b.c_[0], p);
    return r;
  }
  std::array<std::int64_t, 7> prod{};
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j)
      prod[static_cast<std::size_t>(i + j)] =
          (prod[static_cast<std::size_t>(i + j)] + mulmod(a.c_[static_cast<std::size_t>(i)], b.c_[static_cast<std::size_t>(j)], p)) % p;
  const auto& h = F.modulus();
  for (int k = 2 * f - 2; k >= f; --k) {
    std::int64_t c = prod[static_cast<std::size_t>(k)];
    if (!c) continue;
    prod[static_cast<std::size_t>(k)] = 0;
    for (int j = 0; j < f; ++j) {
      auto& slot = prod[static_cast<std::size_t>(k - f + j)];
      slot = (slot - mulmod(c, h[static_cast<std::size_t>(j)], p)) % p;
      if (slot < 0) slot += p;
    }
  }
  for (int i = 0; i < 4; ++i) r.c_[static_cast<std::size_t>(i)] = i < f ? prod[static_cast<std::size_t>(i)] : 0;
  return r;
}

FqElem FqElem::pow(std::uint64_t e) const {
  FqElem r = one_like(), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

FqElem FqElem::inverse() const {
  if (is_zero()) throw ArithError("inverse of zero in finite field");
  return pow(static_cast<std::uint64_t>(F_->order() - 2));
}

std::string FqElem::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < F_->degree(); ++i) os << (i ? "," : "") << c_[static_cast<std::size_t>(i)];
  os << "]";
  return os.str();
}

}  // namespace gfe::arith
