#pragma once

#include <span>
#include <vector>

#include "hodge/common.hpp"

namespace hodge {

/// Truncated Taylor series about a point: coefficient k holds f^(k)(z0)/k!.
///
/// All jet bookkeeping (chain rule, automorphy factors, term-wise
/// differentiation of Poincaré series) goes through this type, so the
/// arithmetic below is the single place where Faà di Bruno-style
/// combinatorics live.
class Taylor {
 public:
  Taylor() = default;
  explicit Taylor(int order) : c_(static_cast<std::size_t>(order) + 1, cplx{}) {}

  static Taylor constant(cplx v, int order);
  /// The identity function z expanded about z0.
  static Taylor variable(cplx z0, int order);
  /// Builds a series from a derivative stack f, f', f'', ...
  static Taylor from_derivatives(std::span<const cplx> derivs);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  cplx& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  const cplx& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  cplx value() const { return c_.front(); }

  /// f^(k)(z0) for k = 0..order.
  std::vector<cplx> derivatives() const;

  Taylor truncated(int order) const;
  Taylor derivative() const;

  Taylor reciprocal() const;
  Taylor pow(cplx exponent) const;  // principal branch at the constant term
  Taylor ipow(int exponent) const;
  Taylor exp() const;

  /// this(inner(h)), where this is expanded about inner[0].
  Taylor compose(const Taylor& inner) const;

  Taylor& operator+=(const Taylor& o);
  Taylor& operator-=(const Taylor& o);
  Taylor& operator*=(cplx s);

  friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
  friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
  friend Taylor operator*(const Taylor& a, const Taylor& b);
  friend Taylor operator*(Taylor a, cplx s) { return a *= s; }
  friend Taylor operator*(cplx s, Taylor a) { return a *= s; }
  friend Taylor operator-(Taylor a) { return a *= -1.0; }

 private:
  std::vector<cplx> c_;
};

/// k!
double factorial(int k);

}  // namespace hodge
