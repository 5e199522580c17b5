#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hodge/hyp.hpp"
#include "hodge/taylor.hpp"

namespace hodge::forms {

/// A holomorphic function presented by point-evaluable derivative stacks.
///
/// Copies share the underlying evaluator, so a provider is cheap to pass by
/// value. Evaluation is deterministic: the same (z, order) always returns the
/// same bits.
class JetProvider {
 public:
  using TaylorFn = std::function<Taylor(cplx z, int order)>;
  using ValueFn = std::function<cplx(cplx z)>;
  static constexpr int kUnbounded = std::numeric_limits<int>::max();

  /// The zero function.
  JetProvider();
  explicit JetProvider(TaylorFn taylor, int max_order = kUnbounded, ValueFn value = {});

  /// f(z), f'(z), ..., f^(order)(z).
  std::vector<cplx> evaluate(cplx z, int order) const;
  Taylor taylor(cplx z, int order) const;
  cplx value(cplx z) const;
  int max_order() const { return max_order_; }
  bool is_zero() const { return zero_; }

  static JetProvider zero() { return JetProvider(); }
  static JetProvider constant(cplx c);
  /// The coordinate function z.
  static JetProvider coordinate();

 private:
  std::shared_ptr<const TaylorFn> taylor_;
  std::shared_ptr<const ValueFn> value_;
  int max_order_ = kUnbounded;
  bool zero_ = true;
};

JetProvider operator+(const JetProvider& f, const JetProvider& g);
JetProvider operator*(const JetProvider& f, const JetProvider& g);
JetProvider scale(const JetProvider& f, cplx s);
/// f(g(z)).
JetProvider compose(const JetProvider& outer, const JetProvider& inner);
/// The m-th derivative of f.
JetProvider derivative(const JetProvider& f, int m = 1);
/// z -> exp(f(z)).
JetProvider exp_of(const JetProvider& f);
/// Wraps a provider with a per-(point, order) cache of exact results.
JetProvider cached(const JetProvider& f);

/// coeff * (z - pole)^power; power may be negative.
struct RationalTerm {
  cplx coeff{1.0};
  cplx pole{};
  int power = 0;
};

/// Exact jets of a sum of RationalTerms. Evaluation within 1e-8 of a pole of a
/// negative-power term is rejected.
JetProvider jet_of_rational(std::vector<RationalTerm> terms);
/// sum_j coeffs[j] * (z - poles[j])^power
JetProvider jet_of_rational(std::span<const cplx> coeffs, std::span<const cplx> poles, int power);

/// (z - conj(w0))^{-2k}: the default seed for weight-k Poincaré series.
JetProvider default_seed(int k, cplx w0 = I_unit);

/// Truncated Poincaré series sum_{|gamma| <= radius} seed(gamma z) (gamma'(z))^k,
/// summed over the distinct elements of the word ball in word-ball order.
struct AutomorphicForm {
  int k = 2;
  hyp::FuchsianGroup group;
  int truncation_radius = 0;
  JetProvider seed;
  JetProvider jets;
};

AutomorphicForm poincare_series(const hyp::FuchsianGroup& g, int k, const JetProvider& seed, int radius);

/// The same form evaluated by first moving z into the Dirichlet domain around
/// i and applying the automorphy factor, F(z) = F_r(gamma z) (gamma'(z))^k.
/// Automorphy then holds to rounding everywhere, at the price of seams of the
/// size of the truncation error along the domain boundary.
AutomorphicForm domain_reduced(const AutomorphicForm& f);

using AutomorphySample = std::pair<hyp::GroupWord, cplx>;

/// max over samples of |F(gamma z) (gamma'(z))^k - F(z)|.
double automorphy_residual(const AutomorphicForm& f, std::span<const AutomorphySample> samples);
/// Generators and their inverses at three points near the basepoint i.
std::vector<AutomorphySample> default_samples(const hyp::FuchsianGroup& g);

/// Form descriptor: {"k":2,"radius":6,"seed":{"type":"rational","poles":[[0,-1]],"power":-4}}
/// (an optional "coeffs" array defaults to all ones).
AutomorphicForm form_from_descriptor(const nlohmann::json& descriptor, const hyp::FuchsianGroup& g);
nlohmann::json default_form_descriptor(int k, int radius);

/// CSV with header z_re,z_im,order,value_re,value_im; one row per derivative.
std::string sample_csv(const JetProvider& f, std::span<const cplx> points, int order);

}  // namespace hodge::forms
