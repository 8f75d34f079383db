#include "gfe/chabauty/series.hpp"

#include <map>
#include <mutex>

namespace gfe::chabauty {

USeries useries_mul(const USeries& a, const USeries& b, std::size_t len) {
  const auto& K = a.empty() ? b.front().field() : a.front().field();
  USeries c(len, PadicElem::zero(K));
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i].is_zero() && a[i].valuation() >= arith::kExactPrecision) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

USeries useries_inverse(const USeries& a, std::size_t len) {
  if (a.empty() || a[0].is_zero() || a[0].valuation() != 0) throw arith::ArithError("series inverse needs a unit constant term");
  const auto& K = a[0].field();
  USeries r(len, PadicElem::zero(K));
  PadicElem inv0 = a[0].inverse();
  r[0] = inv0;
  for (std::size_t n = 1; n < len; ++n) {
    PadicElem s = PadicElem::zero(K);
    for (std::size_t k = 1; k <= n && k < a.size(); ++k) s += a[k] * r[n - k];
    r[n] = -(s * inv0);
  }
  return r;
}

USeries useries_shift(const USeries& a, std::size_t k) {
  for (std::size_t i = 0; i < k && i < a.size(); ++i)
    if (!a[i].is_zero()) throw arith::ArithError("series shift of a nonvanishing term");
  if (a.size() <= k) return {};
  return USeries(a.begin() + static_cast<long>(k), a.end());
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(int r, int D) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{r, D}];
  if (slot) return slot;
  auto b = std::make_shared<MonomialBasis>();
  b->r = r;
  b->D = D;
  for (int d = 0; d <= D; ++d) {
    // exponent vectors of total degree d, lexicographically descending
    std::vector<int> e(static_cast<std::size_t>(r), 0);
    std::vector<std::vector<int>> level;
    auto rec = [&](auto&& self, int i, int left) -> void {
      if (i == r - 1) {
        e[static_cast<std::size_t>(i)] = left;
        level.push_back(e);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[static_cast<std::size_t>(i)] = k;
        self(self, i + 1, left - k);
      }
    };
    if (r == 0) {
      if (d == 0) level.push_back({});
    } else {
      rec(rec, 0, d);
    }
    for (auto& x : level) {
      b->exps.push_back(x);
      b->degree.push_back(d);
    }
  }
  std::size_t n = b->exps.size();
  b->product.assign(n, std::vector<int>(n, -1));
  std::map<std::vector<int>, int> idx;
  for (std::size_t i = 0; i < n; ++i) idx[b->exps[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (b->degree[i] + b->degree[j] > D) continue;
      std::vector<int> s = b->exps[i];
      for (std::size_t k = 0; k < s.size(); ++k) s[k] += b->exps[j][k];
      b->product[i][j] = idx[s];
    }
  slot = b;
  return slot;
}

int MonomialBasis::index_of(const std::vector<int>& e) const {
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] == e) return static_cast<int>(i);
  return -1;
}

MSeries::MSeries(std::shared_ptr<const MonomialBasis> basis, const LocalFieldPtr& K)
    : basis_(std::move(basis)), K_(K), c_(basis_->exps.size(), PadicElem::zero(K)) {}

MSeries MSeries::constant(std::shared_ptr<const MonomialBasis> basis, const PadicElem& c) {
  MSeries s(std::move(basis), c.field());
  s.c_[0] = c;
  return s;
}

MSeries MSeries::linear(std::shared_ptr<const MonomialBasis> basis, const PadicElem& c0, const std::vector<PadicElem>& l) {
  MSeries s = constant(basis, c0);
  if (basis->D < 1) return s;
  for (int i = 0; i < basis->r; ++i) {
    std::vector<int> e(static_cast<std::size_t>(basis->r), 0);
    e[static_cast<std::size_t>(i)] = 1;
    s.c_[static_cast<std::size_t>(basis->index_of(e))] = l[static_cast<std::size_t>(i)];
  }
  return s;
}

MSeries MSeries::operator+(const MSeries& o) const {
  MSeries r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

MSeries MSeries::operator-(const MSeries& o) const {
  MSeries r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

MSeries MSeries::operator-() const {
  MSeries r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

MSeries MSeries::operator*(const MSeries& o) const {
  MSeries r(basis_, K_);
  std::size_t n = c_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (c_[i].is_zero() && c_[i].valuation() >= arith::kExactPrecision) continue;
    const auto& row = basis_->product[i];
    for (std::size_t j = 0; j < n; ++j) {
      int k = row[j];
      if (k < 0) continue;
      if (o.c_[j].is_zero() && o.c_[j].valuation() >= arith::kExactPrecision) continue;
      r.c_[static_cast<std::size_t>(k)] += c_[i] * o.c_[j];
    }
  }
  return r;
}

MSeries MSeries::scaled(const PadicElem& s) const {
  MSeries r = *this;
  for (auto& c : r.c_) c = c * s;
  return r;
}

MSeries MSeries::inverse() const {
  if (c_[0].is_zero()) throw arith::ArithError("series inverse with vanishing constant term");
  PadicElem inv0 = c_[0].inverse();
  MSeries g = scaled(inv0);
  g.c_[0] = PadicElem::zero(K_);
  MSeries result = constant(basis_, inv0.one_like());
  MSeries term = result;
  MSeries neg = -g;
  for (int k = 1; k <= basis_->D; ++k) {
    term = term * neg;
    result = result + term;
  }
  return result.scaled(inv0);
}

MSeries MSeries::pow(int e) const {
  MSeries r = constant(basis_, c_[0].one_like()), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

MSeries MSeries::coordinate(int j) const {
  LocalFieldPtr B = K_->base();
  MSeries r(basis_, B);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i].coordinate(j);
  return r;
}

MSeries MSeries::compose(const USeries& g, const MSeries& S) {
  std::size_t len = g.size();
  if (S.constant_term().is_zero()) len = std::min(len, static_cast<std::size_t>(S.basis().D + 1));
  MSeries r(S.basis_, S.K_);
  for (std::size_t k = len; k-- > 0;) {
    r = r * S;
    r.c_[0] += g[k];
  }
  return r;
}

long valuation_lower_bound(const PadicElem& c) { return c.is_zero() ? c.absolute_precision() : c.valuation(); }

bool certified_nonzero(const PadicElem& c) { return !c.is_zero(); }

StrassmanResult strassman_zero_bound(const std::vector<PadicElem>& coeffs, long tail) {
  StrassmanResult res;
  bool any = false;
  long mu = 0;
  for (const auto& c : coeffs)
    if (certified_nonzero(c)) {
      if (!any || c.valuation() < mu) mu = c.valuation();
      any = true;
    }
  if (!any) throw PrecisionTooLow("no coefficient is known to be nonzero");
  int N = -1;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (certified_nonzero(coeffs[k]) && coeffs[k].valuation() == mu) N = static_cast<int>(k);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (certified_nonzero(coeffs[k])) continue;
    long lb = valuation_lower_bound(coeffs[k]);
    if (lb < mu || (lb == mu && static_cast<int>(k) > N))
      throw PrecisionTooLow("coefficient " + std::to_string(k) + " not determined to valuation " + std::to_string(mu));
  }
  if (tail <= mu) throw PrecisionTooLow("truncation tail may reach the dominant valuation");
  res.bound = N;
  res.min_valuation = mu;
  // lower convex hull of the certified points
  std::vector<std::pair<int, long>> pts;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (certified_nonzero(coeffs[k])) pts.emplace_back(static_cast<int>(k), coeffs[k].valuation());
  std::vector<std::pair<int, long>> hull;
  for (auto& q : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      // drop b when it lies on or above the segment a-q
      long cross = (b.first - a.first) * (q.second - a.second) - (b.second - a.second) * (q.first - a.first);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(q);
  }
  // keep the part up to the last minimal point
  while (!hull.empty() && hull.back().first > N) hull.pop_back();
  res.vertices = hull;
  return res;
}

}  // namespace gfe::chabauty
