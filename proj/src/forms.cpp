#include "hodge/forms.hpp"

#include <bit>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace hodge::forms {

JetProvider::JetProvider() = default;

JetProvider::JetProvider(TaylorFn taylor, int max_order, ValueFn value)
    : taylor_(std::make_shared<const TaylorFn>(std::move(taylor))),
      value_(value ? std::make_shared<const ValueFn>(std::move(value)) : nullptr),
      max_order_(max_order),
      zero_(false) {}

Taylor JetProvider::taylor(cplx z, int order) const {
  require(order >= 0, "jet order must be nonnegative");
  require(order <= max_order_, "jet order " + std::to_string(order) + " exceeds provider capability " + std::to_string(max_order_));
  if (zero_) return Taylor(order);
  Taylor t = (*taylor_)(z, order);
  return t.order() == order ? t : t.truncated(order);
}

std::vector<cplx> JetProvider::evaluate(cplx z, int order) const { return taylor(z, order).derivatives(); }

cplx JetProvider::value(cplx z) const {
  if (zero_) return {};
  if (value_) return (*value_)(z);
  return (*taylor_)(z, 0).value();
}

JetProvider JetProvider::constant(cplx c) {
  return JetProvider([c](cplx, int order) { return Taylor::constant(c, order); }, kUnbounded, [c](cplx) { return c; });
}

JetProvider JetProvider::coordinate() {
  return JetProvider([](cplx z, int order) { return Taylor::variable(z, order); }, kUnbounded, [](cplx z) { return z; });
}

JetProvider operator+(const JetProvider& f, const JetProvider& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  return JetProvider([f, g](cplx z, int order) { return f.taylor(z, order) + g.taylor(z, order); },
                     std::min(f.max_order(), g.max_order()), [f, g](cplx z) { return f.value(z) + g.value(z); });
}

JetProvider operator*(const JetProvider& f, const JetProvider& g) {
  if (f.is_zero() || g.is_zero()) return JetProvider::zero();
  return JetProvider([f, g](cplx z, int order) { return f.taylor(z, order) * g.taylor(z, order); },
                     std::min(f.max_order(), g.max_order()), [f, g](cplx z) { return f.value(z) * g.value(z); });
}

JetProvider scale(const JetProvider& f, cplx s) {
  if (f.is_zero() || s == cplx{}) return JetProvider::zero();
  return JetProvider([f, s](cplx z, int order) { return f.taylor(z, order) * s; }, f.max_order(),
                     [f, s](cplx z) { return s * f.value(z); });
}

JetProvider compose(const JetProvider& outer, const JetProvider& inner) {
  return JetProvider(
      [outer, inner](cplx z, int order) {
        const Taylor in = inner.taylor(z, order);
        return outer.taylor(in.value(), order).compose(in);
      },
      std::min(outer.max_order(), inner.max_order()), [outer, inner](cplx z) { return outer.value(inner.value(z)); });
}

JetProvider derivative(const JetProvider& f, int m) {
  require(m >= 0, "derivative order must be nonnegative");
  if (f.is_zero() || m == 0) return f;
  require(f.max_order() >= m, "derivative: provider capability too low");
  const int cap = f.max_order() == JetProvider::kUnbounded ? JetProvider::kUnbounded : f.max_order() - m;
  return JetProvider(
      [f, m](cplx z, int order) {
        Taylor t = f.taylor(z, order + m);
        for (int i = 0; i < m; ++i) t = t.derivative();
        return t;
      },
      cap);
}

JetProvider exp_of(const JetProvider& f) {
  return JetProvider([f](cplx z, int order) { return f.taylor(z, order).exp(); }, f.max_order(),
                     [f](cplx z) { return std::exp(f.value(z)); });
}

namespace {

struct JetCache {
  using Key = std::tuple<std::uint64_t, std::uint64_t, int>;
  std::mutex mutex;
  std::map<Key, Taylor> entries;
  static constexpr std::size_t kMaxEntries = 1 << 18;

  static Key key(cplx z, int order) {
    return {std::bit_cast<std::uint64_t>(z.real()), std::bit_cast<std::uint64_t>(z.imag()), order};
  }
};

}  // namespace

JetProvider cached(const JetProvider& f) {
  if (f.is_zero()) return f;
  auto cache = std::make_shared<JetCache>();
  auto lookup = [f, cache](cplx z, int order) {
    const auto key = JetCache::key(z, order);
    {
      std::lock_guard lock(cache->mutex);
      if (auto it = cache->entries.find(key); it != cache->entries.end()) return it->second;
    }
    Taylor t = order == 0 ? Taylor::constant(f.value(z), 0) : f.taylor(z, order);
    std::lock_guard lock(cache->mutex);
    if (cache->entries.size() >= JetCache::kMaxEntries) cache->entries.clear();
    cache->entries.emplace(key, t);
    return t;
  };
  return JetProvider(lookup, f.max_order(), [lookup](cplx z) { return lookup(z, 0).value(); });
}

namespace {

// coefficient k of (p + h)^m about h = 0, i.e. binom(m, k) p^(m-k)
Taylor power_series(cplx base, int power, int order) {
  Taylor t(order);
  double binom = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) binom *= static_cast<double>(power - (k - 1)) / static_cast<double>(k);
    if (binom == 0.0) break;
    t[k] = binom * ipow(base, power - k);
  }
  return t;
}

}  // namespace

JetProvider jet_of_rational(std::vector<RationalTerm> terms) {
  auto check = [terms](cplx z) {
    for (const auto& t : terms)
      if (t.power < 0 && std::abs(z - t.pole) < 1e-8)
        throw ValidationError("jet_of_rational: evaluation within 1e-8 of a pole");
  };
  auto taylor = [terms, check](cplx z, int order) {
    check(z);
    Taylor sum(order);
    for (const auto& t : terms) sum += power_series(z - t.pole, t.power, order) * t.coeff;
    return sum;
  };
  auto value = [terms, check](cplx z) {
    check(z);
    cplx s{};
    for (const auto& t : terms) s += t.coeff * ipow(z - t.pole, t.power);
    return s;
  };
  return JetProvider(taylor, JetProvider::kUnbounded, value);
}

JetProvider jet_of_rational(std::span<const cplx> coeffs, std::span<const cplx> poles, int power) {
  require(coeffs.size() == poles.size(), "jet_of_rational: coeffs and poles differ in length");
  std::vector<RationalTerm> terms;
  for (std::size_t i = 0; i < poles.size(); ++i) terms.push_back({coeffs[i], poles[i], power});
  return jet_of_rational(std::move(terms));
}

JetProvider default_seed(int k, cplx w0) { return jet_of_rational({{1.0, std::conj(w0), -2 * k}}); }

AutomorphicForm poincare_series(const hyp::FuchsianGroup& g, int k, const JetProvider& seed, int radius) {
  require(k >= 2, "poincare_series: weight k must be >= 2 for absolute convergence");
  require(radius >= 0, "poincare_series: radius must be nonnegative");
  AutomorphicForm form;
  form.k = k;
  form.group = g;
  form.truncation_radius = radius;
  form.seed = seed;
  if (seed.is_zero()) {
    form.jets = JetProvider::zero();
    return form;
  }
  auto ball = std::make_shared<const std::vector<hyp::Moebius>>(hyp::ball_elements(g, radius));

  auto taylor = [ball, seed, k](cplx z, int order) {
    Taylor sum(order);
    for (const auto& m : *ball) {
      const cplx j = m.c * z + m.d;
      Taylor num(order), den(order);
      num[0] = m.a * z + m.b;
      den[0] = j;
      if (order >= 1) {
        num[1] = m.a;
        den[1] = m.c;
      }
      const Taylor moved = num * den.reciprocal();
      sum += seed.taylor(moved.value(), order).compose(moved) * den.ipow(-2 * k);
    }
    return sum;
  };
  auto value = [ball, seed, k](cplx z) {
    cplx sum{};
    for (const auto& m : *ball) {
      const cplx j = m.c * z + m.d;
      sum += seed.value((m.a * z + m.b) / j) * ipow(j, -2 * k);
    }
    return sum;
  };
  form.jets = cached(JetProvider(taylor, std::min(seed.max_order(), 64), value));
  return form;
}

AutomorphicForm domain_reduced(const AutomorphicForm& f) {
  AutomorphicForm out = f;
  if (f.jets.is_zero()) return out;
  const JetProvider inner = f.jets;
  const hyp::FuchsianGroup g = f.group;
  const int k = f.k;
  auto taylor = [inner, g, k](cplx z, int order) {
    const auto red = hyp::reduce_to_domain(g, z);
    const hyp::Moebius& m = red.gamma;
    Taylor num(order), den(order);
    num[0] = m.a * z + m.b;
    den[0] = m.c * z + m.d;
    if (order >= 1) {
      num[1] = m.a;
      den[1] = m.c;
    }
    const Taylor moved = num * den.reciprocal();
    return inner.taylor(red.point, order).compose(moved) * den.ipow(-2 * k);
  };
  auto value = [inner, g, k](cplx z) {
    const auto red = hyp::reduce_to_domain(g, z);
    return inner.value(red.point) * ipow(red.gamma.cocycle(z), -2 * k);
  };
  out.jets = JetProvider(taylor, inner.max_order(), value);
  return out;
}

double automorphy_residual(const AutomorphicForm& f, std::span<const AutomorphySample> samples) {
  double worst = 0.0;
  for (const auto& [word, z] : samples) {
    require(z.imag() > 0.0, "automorphy_residual: sample point not in the upper half-plane");
    if (word.is_identity()) continue;
    const cplx moved = hyp::mobius_apply(word.matrix, z);
    const cplx factor = ipow(word.matrix.derivative(z), f.k);
    worst = std::max(worst, std::abs(f.jets.value(moved) * factor - f.jets.value(z)));
  }
  return worst;
}

std::vector<AutomorphySample> default_samples(const hyp::FuchsianGroup& g) {
  const cplx points[] = {I_unit, cplx{0.3, 1.2}, cplx{-0.2, 0.8}};
  std::vector<AutomorphySample> out;
  for (int l = 1; l <= g.num_generators(); ++l) {
    for (int s : {l, -l}) {
      const auto w = hyp::make_word(g, {s});
      for (cplx z : points) out.emplace_back(w, z);
    }
  }
  return out;
}

nlohmann::json default_form_descriptor(int k, int radius) {
  return {{"k", k}, {"radius", radius}, {"seed", {{"type", "rational"}, {"poles", {{0.0, -1.0}}}, {"power", -2 * k}}}};
}

AutomorphicForm form_from_descriptor(const nlohmann::json& d, const hyp::FuchsianGroup& g) {
  for (const auto& [key, _] : d.items())
    require(key == "k" || key == "radius" || key == "seed", "form descriptor: unknown key '" + key + "'");
  const int k = d.value("k", 2);
  const int radius = d.value("radius", 6);
  require(d.contains("seed"), "form descriptor: missing 'seed'");
  const auto& s = d.at("seed");
  require(s.value("type", std::string{}) == "rational", "form descriptor: only rational seeds are supported");
  std::vector<cplx> poles;
  for (const auto& p : s.at("poles")) poles.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  std::vector<cplx> coeffs(poles.size(), cplx{1.0});
  if (s.contains("coeffs")) {
    coeffs.clear();
    for (const auto& c : s.at("coeffs")) coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
  }
  const int power = s.value("power", -2 * k);
  return poincare_series(g, k, jet_of_rational(coeffs, poles, power), radius);
}

std::string sample_csv(const JetProvider& f, std::span<const cplx> points, int order) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "z_re,z_im,order,value_re,value_im\n";
  for (cplx z : points) {
    const auto d = f.evaluate(z, order);
    for (int k = 0; k <= order; ++k)
      os << z.real() << ',' << z.imag() << ',' << k << ',' << d[static_cast<std::size_t>(k)].real() << ','
         << d[static_cast<std::size_t>(k)].imag() << '\n';
  }
  return os.str();
}

}  // namespace hodge::forms
