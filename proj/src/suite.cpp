#include "hodge/suite.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "hodge/cli.hpp"
#include "hodge/forms.hpp"
#include "hodge/gauge.hpp"
#include "hodge/harmonic.hpp"
#include "hodge/hn.hpp"
#include "hodge/linalg.hpp"
#include "hodge/mesh.hpp"
#include "hodge/oper.hpp"
#include "hodge/report.hpp"
#include "hodge/rep.hpp"

namespace hodge::suite {

using nlohmann::json;

Level parse_level(const std::string& s) {
  if (s == "smoke") return Level::smoke;
  if (s == "full") return Level::full;
  throw ValidationError("suite level must be 'smoke' or 'full'");
}

std::string level_name(Level level) { return level == Level::smoke ? "smoke" : "full"; }

namespace {

using Rng = std::mt19937_64;

std::string sci(double x) {
  std::ostringstream os;
  os << std::setprecision(2) << std::scientific << x;
  return os.str();
}

struct Context {
  SuiteOptions opts;
  Rng rng;
  hyp::FuchsianGroup G = hyp::octagon_group();
  oper::MonodromyOptions mono;
  std::vector<std::pair<std::string, oper::MonodromyRep>> monodromies;
  bool full() const { return opts.level == Level::full; }
};

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

cplx upper_point(Rng& rng) { return {uniform(rng, -0.8, 0.8), uniform(rng, 0.6, 1.8)}; }

/// Sum of terms c (z - p)^power with poles well below the real axis.
forms::JetProvider random_rational(Rng& rng, int power, int terms, double size = 1.0) {
  std::vector<forms::RationalTerm> t;
  for (int i = 0; i < terms; ++i)
    t.push_back({size * cplx(uniform(rng, -1, 1), uniform(rng, -1, 1)),
                 cplx(uniform(rng, -1, 1), uniform(rng, -2.0, -1.0)), power});
  return forms::jet_of_rational(std::move(t));
}

hyp::Moebius random_sl2r(Rng& rng) {
  const double a = uniform(rng, 0.5, 1.5), b = uniform(rng, -0.5, 0.5), c = uniform(rng, -0.5, 0.5);
  return {a, b, c, (1.0 + b * c) / a};
}

/// Sym^2 of a 2x2 matrix in the basis x^2, xy, y^2, written out by hand.
CMat sym2(const CMat& m) {
  const cplx a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  CMat s(3, 3);
  s << a * a, 2.0 * a * b, b * b, a * c, a * d + b * c, b * d, c * c, 2.0 * c * d, d * d;
  return s;
}

double sign_free_error(const CMat& x, const CMat& y) { return std::min(max_abs(x - y), max_abs(x + y)); }

const oper::MonodromyRep& monodromy_of(Context& ctx, const std::string& key, const oper::OperODE& D) {
  for (const auto& [k, m] : ctx.monodromies)
    if (k == key) return m;
  ctx.monodromies.emplace_back(key, oper::monodromy(D, ctx.G, I_unit, ctx.mono));
  return ctx.monodromies.back().second;
}

forms::AutomorphicForm poincare_quadratic(const Context& ctx) {
  return forms::domain_reduced(forms::poincare_series(ctx.G, 2, forms::default_seed(2), 4));
}

void compute_monodromies(Context& ctx) {
  monodromy_of(ctx, "n2-zero", oper::ode_from_projective(2, forms::JetProvider::zero()));
  monodromy_of(ctx, "n3-zero", oper::ode_from_projective(3, forms::JetProvider::zero()));
  const auto Q = poincare_quadratic(ctx);
  monodromy_of(ctx, "n2-poincare", oper::ode_from_projective(2, Q));
  if (ctx.full()) monodromy_of(ctx, "n3-poincare", oper::ode_from_projective(3, Q));
}

// ------------------------------------------------------------------ criteria

void schwarzian_suite(Context& ctx, CriterionResult& r) {
  auto& rng = ctx.rng;
  double mobius = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto m = random_sl2r(rng);
    if (std::abs(m.c) < 1e-3) continue;
    // (az+b)/(cz+d) = a/c - (1/c^2) / (z + d/c)
    const auto f = forms::jet_of_rational({{m.a / m.c, 0.0, 0}, {-1.0 / (m.c * m.c), -m.d / m.c, -1}});
    mobius = std::max(mobius, std::abs(oper::schwarzian(f, upper_point(rng))));
  }
  double cocycle = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto f = forms::JetProvider::coordinate() + random_rational(rng, -1, 2, 0.2);
    const auto g = forms::JetProvider::coordinate() + random_rational(rng, -1, 2, 0.2);
    const cplx z = upper_point(rng);
    const cplx lhs = oper::schwarzian(forms::compose(f, g), z);
    const cplx gp = forms::derivative(g).value(z);
    const cplx rhs = oper::schwarzian(f, g.value(z)) * gp * gp + oper::schwarzian(g, z);
    cocycle = std::max(cocycle, std::abs(lhs - rhs));
  }
  double ratio = 0.0;
  ode::Tolerances tol;
  tol.rtol = 1e-12;
  tol.atol = 1e-14;
  for (int i = 0; i < 5; ++i) {
    const auto Q = random_rational(rng, -2, 3);
    const auto D = oper::ode_from_projective(2, Q);
    const cplx z1 = upper_point(rng);
    const CMat Y = oper::integrate_ode(D, hyp::HPath{{I_unit, z1}}, linalg::identity(2), tol);
    const auto q = Q.evaluate(z1, 1);
    auto series = [&](int col) {
      const cplx y = Y(0, col), yp = Y(1, col);
      const std::vector<cplx> d{y, yp, -q[0] * y, -q[1] * y - q[0] * yp};
      return Taylor::from_derivatives(d);
    };
    const Taylor w = series(0) * series(1).reciprocal();
    ratio = std::max(ratio, std::abs(oper::schwarzian(w) - 2.0 * q[0]));
  }
  r.metrics = {{"mobius", mobius}, {"cocycle", cocycle}, {"ratio_law", ratio}};
  r.passed = mobius < 1e-12 && cocycle < 1e-9 && ratio < 1e-7;
  r.detail = "mobius " + sci(mobius) + ", cocycle " + sci(cocycle) + ", ratio " + sci(ratio);
}

void monodromy_oracle(Context& ctx, CriterionResult& r) {
  compute_monodromies(ctx);
  const auto& m2 = monodromy_of(ctx, "n2-zero", {});
  const auto& m3 = monodromy_of(ctx, "n3-zero", {});
  double e2 = 0.0, e3 = 0.0;
  for (int i = 0; i < ctx.G.num_generators(); ++i) {
    const CMat g = ctx.G.generators[static_cast<std::size_t>(i)].complex_matrix();
    e2 = std::max(e2, sign_free_error(oper::to_polynomial_basis(m2.rho.images[static_cast<std::size_t>(i)], I_unit), g));
    e3 = std::max(e3, sign_free_error(oper::to_polynomial_basis(m3.rho.images[static_cast<std::size_t>(i)], I_unit),
                                      sym2(g)));
  }
  const double rel = std::max(m2.relation_residual, m3.relation_residual);
  r.metrics = {{"n2_error", e2}, {"n3_error", e3}, {"relation_residual", rel}};
  r.passed = e2 < 1e-6 && e3 < 1e-6 && rel < 1e-5;
  r.detail = "n=2 " + sci(e2) + ", n=3 " + sci(e3) + ", relation " + sci(rel);
}

void wronskian_check(Context& ctx, CriterionResult& r) {
  compute_monodromies(ctx);
  double det = 0.0, drift = 0.0;
  for (const auto& [key, m] : ctx.monodromies) {
    det = std::max(det, m.det_defect);
    drift = std::max(drift, m.wronskian_drift);
    r.metrics[key] = {{"det_defect", m.det_defect}, {"wronskian_drift", m.wronskian_drift}};
  }
  r.passed = det < 1e-8 && drift < 1e-8;
  r.detail = std::to_string(ctx.monodromies.size()) + " monodromies, det " + sci(det) + ", drift " + sci(drift);
}

void wk_suite(Context& ctx, CriterionResult& r) {
  auto& rng = ctx.rng;
  oper::CovariantConstants k;
  if (ctx.opts.inject.count("w4-constant")) k.w4_quadratic_scale = 1.01;
  const auto Q = random_rational(rng, -2, 3);
  std::vector<cplx> pts;
  for (int i = 0; i < 20; ++i) pts.push_back(upper_point(rng));
  bool w2_exact = true;
  double w3 = 0.0, w4 = 0.0, covariance = 0.0;
  const auto change = random_sl2r(rng);
  for (int n = 3; n <= 6; ++n) {
    const auto D = oper::ode_from_projective(n, Q);
    for (cplx z : pts) {
      const auto c = oper::wk_covariants(D, z, k);
      w2_exact = w2_exact && c.w2 == D.Q(2).value(z);
      if (c.w3) w3 = std::max(w3, std::abs(*c.w3));
      if (c.w4) w4 = std::max(w4, std::abs(*c.w4));
    }
    covariance = std::max(covariance, oper::wk_transformation_check(D, change, pts));
    oper::OperODE general{n, {}, {}};
    for (int j = 2; j <= n; ++j) general.coefficients.push_back(random_rational(rng, -j, 2));
    covariance = std::max(covariance, oper::wk_transformation_check(general, change, pts));
  }
  r.metrics = {{"w2_exact", w2_exact}, {"w3_max", w3}, {"w4_max", w4}, {"covariance_defect", covariance}};
  r.passed = w2_exact && w3 < 1e-10 && w4 < 1e-10 && covariance < 1e-7;
  r.detail = std::string("w2 ") + (w2_exact ? "exact" : "inexact") + ", w3 " + sci(w3) + ", w4 " + sci(w4) +
             ", covariance " + sci(covariance);
}

void irreducibility(Context& ctx, CriterionResult& r) {
  compute_monodromies(ctx);
  bool irreducible = true;
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& [key, m] : ctx.monodromies) {
    const int dim = rep::commutant_dimension(m.rho);
    const double u = rep::unitarity_margin(m.rho, 3);
    irreducible = irreducible && dim == 1;
    margin = std::min(margin, u);
    r.metrics[key] = {{"commutant_dimension", dim}, {"unitarity_margin", u}};
  }
  r.passed = irreducible && margin > 0.1;
  r.detail = std::string(irreducible ? "all irreducible" : "reducible image found") + ", min unitarity margin " +
             sci(margin);
}

void eichler_suite(Context& ctx, CriterionResult& r) {
  const auto D = oper::ode_from_projective(3, forms::JetProvider::zero());
  const auto omega = forms::domain_reduced(forms::poincare_series(ctx.G, 2, forms::default_seed(2), 4));
  const auto c = oper::eichler_cocycle(D, omega, ctx.G, I_unit, ctx.mono);
  double pairs = 0.0;
  const int m = ctx.G.num_generators();
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= m; ++b) {
      if (!ctx.full() && a > 2) continue;
      const auto w = hyp::make_word(ctx.G, {a, b});
      pairs = std::max(pairs, max_abs(oper::eichler_vector(D, omega.jets, ctx.G, w, I_unit, ctx.mono) - c.extend(w)));
    }
  const double relation = max_abs(c.extend(hyp::relation_letters(ctx.G.genus)));
  forms::AutomorphicForm zero{2, ctx.G, 0, forms::JetProvider::zero(), forms::JetProvider::zero()};
  const auto zc = oper::eichler_cocycle(D, zero, ctx.G, I_unit, ctx.mono);
  bool zero_exact = true;
  for (const auto& v : zc.vectors) zero_exact = zero_exact && v.isZero(0.0);
  r.metrics = {{"pair_error", pairs}, {"relation_norm", relation}, {"zero_form_exact", zero_exact}};
  r.passed = pairs < 1e-6 && relation < 1e-5 && zero_exact;
  r.detail = "pairs " + sci(pairs) + ", relation " + sci(relation) + ", zero form " + (zero_exact ? "exact" : "nonzero");
}

void hn_maximality(Context&, CriterionResult& r) {
  bool maximal = true;
  std::size_t types = 0;
  for (int n = 2; n <= 5; ++n)
    for (int g = 2; g <= 3; ++g) {
      const auto rep = hn::verify_oper_maximality(n, g);
      maximal = maximal && rep.verdict();
      types += rep.count;
    }
  bool partial_sums = true;
  for (int n = 2; n <= 8; ++n)
    for (int g = 2; g <= 5; ++g) {
      const auto degs = hn::filtration_degrees(n, g);
      const auto mu = hn::oper_hn_type(n, g).expanded();
      hn::Rational sum = 0;
      for (int j = 1; j <= n; ++j) {
        sum += mu[static_cast<std::size_t>(j - 1)];
        const long long expected = static_cast<long long>(j) * (n - j) * (g - 1);
        partial_sums = partial_sums && degs.degs[static_cast<std::size_t>(j - 1)] == expected && sum == hn::Rational(expected);
      }
    }
  r.metrics = {{"types_checked", types}, {"maximal", maximal}, {"partial_sums", partial_sums}};
  r.passed = maximal && partial_sums;
  r.detail = std::to_string(types) + " unstable types, " + (maximal ? "oper type maximal" : "maximality violated") +
             ", partial sums " + (partial_sums ? "match" : "mismatch");
}

void dimensions(Context&, CriterionResult& r) {
  bool ok = true;
  for (long long n = 2; n <= 8; ++n)
    for (long long g = 2; g <= 5; ++g) {
      const auto d = rep::moduli_dimensions(static_cast<int>(n), static_cast<int>(g));
      ok = ok && d.betti == (n * n - 1) * (2 * g - 2) && d.hitchin_base == (n * n - 1) * (g - 1) &&
           d.betti == 2 * d.hitchin_base;
      long long cg = 0;
      for (int c : rep::clebsch_gordon_dims(static_cast<int>(n))) cg += c;
      ok = ok && cg == n * n - 1 && d.eichler_h1.size() == static_cast<std::size_t>(n - 1);
      for (long long q = 2; q <= n; ++q)
        ok = ok && rep::eichler_h1(static_cast<int>(q), static_cast<int>(g)) == 2 * (2 * q - 1) * (g - 1) &&
             d.eichler_h1[static_cast<std::size_t>(q - 2)] == 2 * (2 * q - 1) * (g - 1);
    }
  r.metrics = {{"exact", ok}};
  r.passed = ok;
  r.detail = ok ? "all identities exact for n <= 8, g <= 5" : "identity mismatch";
}

void harmonic_suite(Context& ctx, CriterionResult& r) {
  const int refinement = ctx.full() ? 2 : 1;
  const auto m = mesh::build_equivariant_mesh(ctx.G, refinement);
  const auto fuchsian = rep::named_representation("fuchsian", 2);
  const auto solved = harmonic::harmonic_solve(m, fuchsian, harmonic::constant_map(m, 2));
  const auto psi = harmonic::psi_field(m, fuchsian, solved.u);
  const auto unitary = harmonic::harmonic_solve(m, rep::named_representation("unitary", 2), harmonic::constant_map(m, 2));
  double drift = 0.0;
  for (const auto& u : unitary.u) drift = std::max(drift, max_abs(u - unitary.u.front()));
  const double unitary_energy = unitary.report.energy_trace.back();
  harmonic::HarmonicOptions div;
  div.max_iters = 2000;
  const auto diagonal = harmonic::harmonic_solve(m, rep::named_representation("diagonal", 2), harmonic::constant_map(m, 2), div);
  const auto& f = solved.report;
  r.metrics = {{"refinement", refinement},
               {"fuchsian_grad_norm", f.grad_norm},
               {"fuchsian_iterations", f.iterations},
               {"fuchsian_monotone", f.monotone},
               {"psi_identity_gap", psi.identity.relative_gap},
               {"unitary_energy", unitary_energy},
               {"unitary_spread", drift},
               {"diagonal_diverged", diagonal.report.diverged},
               {"diagonal_grad_norm", diagonal.report.grad_norm},
               {"diagonal_log_condition", diagonal.report.log_cond_trace.back()}};
  const bool fuchsian_ok = f.converged && f.grad_norm < 1e-8 && f.monotone;
  // |e^{it}|^2 is 1 only to rounding, so "energy 0" is read at roundoff level
  const bool unitary_ok = unitary_energy < 1e-24 && drift < 1e-12;
  r.passed = fuchsian_ok && psi.identity.relative_gap < 1e-12 && unitary_ok && diagonal.report.diverged;
  r.detail = "fuchsian grad " + sci(f.grad_norm) + (f.monotone ? " monotone" : " non-monotone") + ", gap " +
             sci(psi.identity.relative_gap) + ", unitary E " + sci(unitary_energy) + ", diagonal " +
             (diagonal.report.diverged ? "diverged" : "converged (no divergence flag)");
}

void gauge_suite(Context& ctx, CriterionResult& r) {
  auto& rng = ctx.rng;
  std::normal_distribution<double> normal;
  auto random_matrix = [&](int n, double s) {
    CMat x(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x(i, j) = s * cplx(normal(rng), normal(rng));
    return x;
  };
  const int n = 2;
  const auto m = mesh::build_equivariant_mesh(ctx.G, 1);
  gauge::DiscreteConnection A0;
  for (std::size_t e = 0; e < m.edges.size(); ++e) A0.U.push_back(linalg::skew_exp(linalg::skew_part(random_matrix(n, 0.3))));
  gauge::DiscreteHiggs P0;
  for (std::size_t v = 0; v < m.vertices.size(); ++v) P0.phi.push_back(linalg::traceless(random_matrix(n, 0.5)));

  // directional derivatives against central differences
  const auto grad = gauge::ymh_gradient(m, A0, P0);
  double fd = 0.0;
  for (int d = 0; d < 20; ++d) {
    gauge::YMHGradient dir;
    double slope = 0.0;
    for (std::size_t e = 0; e < m.edges.size(); ++e) {
      dir.edges.push_back(linalg::skew_part(random_matrix(n, 1.0)));
      slope += linalg::inner(grad.edges[e], dir.edges.back());
    }
    for (std::size_t v = 0; v < m.vertices.size(); ++v) {
      dir.phi.push_back(linalg::traceless(random_matrix(n, 1.0)));
      slope += linalg::inner(grad.phi[v], dir.phi.back());
    }
    const double h = 1e-5;
    auto value_at = [&](double t) {
      auto A = A0;
      auto P = P0;
      gauge::apply_step(dir, -t, A, P);
      return gauge::ymh_value(m, A, P).value;
    };
    const double numeric = (value_at(h) - value_at(-h)) / (2.0 * h);
    fd = std::max(fd, std::abs(numeric - slope) / std::max(std::abs(slope), 1e-12));
  }

  const int steps = ctx.full() ? 500 : 100;
  auto A = A0;
  auto P = P0;
  double prev = gauge::ymh_value(m, A, P).value;
  const double initial = prev;
  bool monotone = true;
  for (int s = 0; s < steps; ++s) {
    auto st = gauge::ymh_flow_step(m, A, P, 0.05);
    monotone = monotone && st.ymh_after <= prev;
    prev = st.ymh_after;
    A = std::move(st.A);
    P = std::move(st.Phi);
  }

  double invariance = 0.0;
  for (int k = 2; k <= 4; ++k)
    for (int t = 0; t < 10; ++t) {
      const CMat phi = linalg::traceless(random_matrix(k, 1.0));
      CMat g = random_matrix(k, 1.0) + 2.0 * linalg::identity(k);
      const auto before = gauge::hitchin_map_point(phi);
      const auto after = gauge::hitchin_map_point(g * phi * g.inverse());
      for (std::size_t i = 0; i < before.size(); ++i) invariance = std::max(invariance, std::abs(before[i] - after[i]));
    }

  const int trials = ctx.full() ? 10000 : 2000;
  double simpson = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= 4; ++k) {
    const double c = gauge::nilpotent_commutator_bound(k, trials, rng());
    simpson = std::min(simpson, c);
    r.metrics["nilpotent_constant_n" + std::to_string(k)] = c;
  }

  bool j_exact = true;
  for (double mu : {0.0, 0.75, -2.5}) {
    std::vector<CMat> f(m.faces.size(), mu * linalg::identity(n));
    j_exact = j_exact && gauge::donaldson_j(m, f, mu) == 0.0;
  }
  j_exact = j_exact && gauge::donaldson_j(m, gauge::trivial_connection(m, n), gauge::zero_higgs(m, n), 0.0) == 0.0;

  r.metrics["fd_relative_error"] = fd;
  r.metrics["flow_steps"] = steps;
  r.metrics["ymh_initial"] = initial;
  r.metrics["ymh_final"] = prev;
  r.metrics["monotone"] = monotone;
  r.metrics["hitchin_invariance"] = invariance;
  r.metrics["j_exact"] = j_exact;
  r.passed = monotone && fd < 1e-4 && invariance < 1e-10 && simpson > 0.0 && j_exact;
  r.detail = std::to_string(steps) + " steps " + (monotone ? "monotone" : "non-monotone") + ", fd " + sci(fd) +
             ", invariance " + sci(invariance) + ", C " + sci(simpson) + ", J " + (j_exact ? "exact" : "nonzero");
}

void determinism(Context& ctx, CriterionResult& r) {
  std::vector<std::pair<std::string, json>> runs{
      {"oper-wk", {{"seed", ctx.opts.seed}}},
      {"hn-verify", {{"n", 4}, {"g", 3}}},
      {"dims", {{"n", 5}, {"g", 3}}},
      {"gauge-flow", {{"steps", 20}, {"seed", ctx.opts.seed}}},
      {"harmonic-solve", {{"refinement", 1}}},
  };
  bool identical = true;
  for (const auto& [command, overrides] : runs) {
    const auto config = cli::resolve_config(command, nullptr, overrides);
    const auto a = cli::run(config), b = cli::run(config);
    const bool same = report::to_stable_json(a.report) == report::to_stable_json(b.report) && a.csv == b.csv;
    r.metrics[command] = same;
    identical = identical && same;
  }
  // opt-in threading must not move results
  auto threaded = ctx.mono;
  threaded.threads = std::max(2, ctx.opts.threads);
  const auto D = oper::ode_from_projective(2, forms::JetProvider::zero());
  const auto serial = oper::monodromy(D, ctx.G, I_unit, ctx.mono);
  const auto parallel = oper::monodromy(D, ctx.G, I_unit, threaded);
  double thread_gap = 0.0;
  for (std::size_t i = 0; i < serial.rho.images.size(); ++i)
    thread_gap = std::max(thread_gap, max_abs(serial.rho.images[i] - parallel.rho.images[i]));
  r.metrics["thread_gap"] = thread_gap;
  r.passed = identical && thread_gap <= 1e-12;
  r.detail = std::string(identical ? "byte-identical reports" : "reports differ") + ", thread gap " + sci(thread_gap);
}

struct Criterion {
  int id;
  const char* name;
  double budget;  // seconds, 0 when none is stated
  std::function<void(Context&, CriterionResult&)> run;
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const SuiteOptions& opts, std::ostream* progress) {
  Context ctx{opts, Rng(opts.seed), hyp::octagon_group(), {}, {}};
  ctx.mono.tol.rtol = 1e-10;
  ctx.mono.tol.atol = 1e-12;
  ctx.mono.max_step = 0.5;
  ctx.mono.threads = std::max(1, opts.threads);
  const std::vector<Criterion> criteria{
      {1, "schwarzian", 5, schwarzian_suite},
      {2, "monodromy-oracle", 30, monodromy_oracle},
      {3, "wronskian-sl", 0, wronskian_check},
      {4, "wk-covariants", 0, wk_suite},
      {5, "irreducible-nonunitary", 0, irreducibility},
      {6, "eichler", 0, eichler_suite},
      {7, "hn-maximality", 60, hn_maximality},
      {8, "dimensions", 0, dimensions},
      {9, "harmonic", 300, harmonic_suite},
      {10, "gauge", 180, gauge_suite},
      {11, "determinism", 0, determinism},
  };
  std::vector<CriterionResult> out;
  for (const auto& c : criteria) {
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(ctx, r);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget > 0 && r.seconds > c.budget) {
      r.passed = false;
      r.detail += ", over the " + std::to_string(static_cast<int>(c.budget)) + " s budget";
    }
    if (progress) *progress << (r.passed ? "PASS" : "FAIL") << " " << r.id << " " << r.name << ": " << r.detail << "\n";
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_table(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  os << std::left << std::setw(4) << "id" << std::setw(24) << "criterion" << std::setw(7) << "result" << std::setw(9)
     << "seconds"
     << "detail\n";
  int failed = 0;
  for (const auto& r : results) {
    os << std::left << std::setw(4) << r.id << std::setw(24) << r.name << std::setw(7) << (r.passed ? "PASS" : "FAIL")
       << std::setw(9) << std::fixed << std::setprecision(2) << r.seconds << r.detail << "\n";
    if (!r.passed) ++failed;
  }
  os << (failed == 0 ? std::string("all criteria passed") : std::to_string(failed) + " criteria failed:");
  for (const auto& r : results)
    if (!r.passed) os << " " << r.id;
  os << "\n";
  return os.str();
}

json results_to_json(const std::vector<CriterionResult>& results) {
  json list = json::array();
  bool all = true;
  for (const auto& r : results) {
    list.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"metrics", r.metrics}});
    all = all && r.passed;
  }
  return {{"criteria", list}, {"all_passed", all}};
}

}  // namespace hodge::suite
