#include "hodge/taylor.hpp"

#include <algorithm>
#include <cmath>

namespace hodge {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Taylor Taylor::constant(cplx v, int order) {
  Taylor t(order);
  t[0] = v;
  return t;
}

Taylor Taylor::variable(cplx z0, int order) {
  Taylor t(order);
  t[0] = z0;
  if (order >= 1) t[1] = 1.0;
  return t;
}

Taylor Taylor::from_derivatives(std::span<const cplx> derivs) {
  require(!derivs.empty(), "Taylor::from_derivatives: empty derivative stack");
  Taylor t(static_cast<int>(derivs.size()) - 1);
  for (int k = 0; k <= t.order(); ++k) t[k] = derivs[static_cast<std::size_t>(k)] / factorial(k);
  return t;
}

std::vector<cplx> Taylor::derivatives() const {
  std::vector<cplx> d(c_.size());
  for (int k = 0; k <= order(); ++k) d[static_cast<std::size_t>(k)] = c_[static_cast<std::size_t>(k)] * factorial(k);
  return d;
}

Taylor Taylor::truncated(int order) const {
  Taylor t(order);
  for (int k = 0; k <= std::min(order, this->order()); ++k) t[k] = (*this)[k];
  return t;
}

Taylor Taylor::derivative() const {
  Taylor d(std::max(order() - 1, 0));
  for (int k = 0; k + 1 <= order(); ++k) d[k] = (*this)[k + 1] * static_cast<double>(k + 1);
  return d;
}

Taylor& Taylor::operator+=(const Taylor& o) {
  const int n = std::min(order(), o.order());
  c_.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) (*this)[k] += o[k];
  return *this;
}

Taylor& Taylor::operator-=(const Taylor& o) {
  const int n = std::min(order(), o.order());
  c_.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) (*this)[k] -= o[k];
  return *this;
}

Taylor& Taylor::operator*=(cplx s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Taylor operator*(const Taylor& a, const Taylor& b) {
  const int n = std::min(a.order(), b.order());
  Taylor r(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i] == cplx{}) continue;
    for (int j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Taylor Taylor::reciprocal() const {
  if (std::abs(c_.front()) == 0.0) throw NumericalError("Taylor::reciprocal: zero constant term");
  Taylor r(order());
  r[0] = 1.0 / c_.front();
  for (int k = 1; k <= order(); ++k) {
    cplx s{};
    for (int j = 1; j <= k; ++j) s += (*this)[j] * r[k - j];
    r[k] = -s * r[0];
  }
  return r;
}

Taylor Taylor::pow(cplx exponent) const {
  const cplx a0 = c_.front();
  if (std::abs(a0) == 0.0) throw NumericalError("Taylor::pow: zero constant term");
  Taylor r(order());
  r[0] = std::pow(a0, exponent);
  // Miller's recurrence: k a0 b_k = sum_j ((alpha+1) j - k) a_j b_{k-j}
  for (int k = 1; k <= order(); ++k) {
    cplx s{};
    for (int j = 1; j <= k; ++j) s += ((exponent + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * (*this)[j] * r[k - j];
    r[k] = s / (static_cast<double>(k) * a0);
  }
  return r;
}

Taylor Taylor::ipow(int exponent) const {
  if (exponent < 0) return ipow(-exponent).reciprocal();
  Taylor result = constant(1.0, order());
  Taylor base = *this;
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e != 0) base = base * base;
  }
  return result;
}

Taylor Taylor::exp() const {
  Taylor r(order());
  r[0] = std::exp(c_.front());
  for (int k = 1; k <= order(); ++k) {
    cplx s{};
    for (int j = 1; j <= k; ++j) s += static_cast<double>(j) * (*this)[j] * r[k - j];
    r[k] = s / static_cast<double>(k);
  }
  return r;
}

Taylor Taylor::compose(const Taylor& inner) const {
  const int n = std::min(order(), inner.order());
  Taylor shift = inner.truncated(n);
  shift[0] = 0.0;
  Taylor r = constant((*this)[order()], n);
  for (int k = order() - 1; k >= 0; --k) {
    r = r * shift;
    r[0] += (*this)[k];
  }
  return r;
}

}  // namespace hodge
