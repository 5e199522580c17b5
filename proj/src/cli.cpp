#include "hodge/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "hodge/forms.hpp"
#include "hodge/gauge.hpp"
#include "hodge/harmonic.hpp"
#include "hodge/hn.hpp"
#include "hodge/linalg.hpp"
#include "hodge/mesh.hpp"
#include "hodge/oper.hpp"
#include "hodge/rep.hpp"
#include "hodge/suite.hpp"

namespace hodge::cli {

using nlohmann::json;

namespace {

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx json_cplx(const json& j, const char* what) {
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
          std::string(what) + " must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string num(double x) { return report::format_double(x); }

const std::map<std::string, json>& defaults_table() {
  static const std::map<std::string, json> table{
      {"oper-monodromy",
       {{"n", 2}, {"q", "zero"}, {"radius", 4}, {"tol", 1e-10}, {"max_step", 0.5}, {"z0", {0.0, 1.0}},
        {"threads", 1}, {"unitarity_radius", 3}}},
      {"oper-eichler",
       {{"n", 3}, {"radius", 4}, {"tol", 1e-10}, {"max_step", 0.5}, {"z0", {0.0, 1.0}}, {"check_pairs", true},
        {"threads", 1}}},
      {"oper-wk", {{"n", 4}, {"samples", 20}, {"seed", 7}}},
      {"hn-verify", {{"n", 2}, {"g", 2}}},
      {"rep-analyze", {{"rep", "fuchsian"}, {"n", 2}, {"radius", 3}, {"representation", nullptr}}},
      {"harmonic-solve",
       {{"rep", "fuchsian"}, {"n", 2}, {"refinement", 2}, {"tol", 1e-8}, {"max_iters", 5000}, {"window", 200},
        {"slope", 0.01}}},
      {"gauge-flow",
       {{"n", 2}, {"refinement", 1}, {"steps", 500}, {"seed", 7}, {"dt", 0.05}, {"connection_scale", 0.3},
        {"higgs_scale", 0.5}, {"mu", 0.0}}},
      {"forms-build", {{"k", 2}, {"radius", 4}, {"order", 2}, {"reduced", false}, {"form", nullptr}}},
      {"dims", {{"n", 2}, {"g", 2}}},
      {"suite", {{"level", "smoke"}, {"seed", 7}, {"inject", ""}, {"threads", 1}}},
  };
  return table;
}

bool same_kind(const json& def, const json& v) {
  if (def.is_null()) return true;
  if (def.is_number_float()) return v.is_number();
  if (def.is_number_integer()) return v.is_number_integer();
  if (def.is_boolean()) return v.is_boolean();
  if (def.is_string()) return v.is_string();
  if (def.is_array()) return v.is_array();
  return def.type() == v.type();
}

void merge(json& params, const json& src, const std::string& origin) {
  require(src.is_object(), origin + " must be a JSON object");
  for (auto it = src.begin(); it != src.end(); ++it) {
    require(params.contains(it.key()), "unknown key '" + it.key() + "' in " + origin);
    require(same_kind(params[it.key()], it.value()), "key '" + it.key() + "' in " + origin + " has the wrong type");
    params[it.key()] = it.value();
  }
}

int get_int(const json& p, const char* key) { return p.at(key).get<int>(); }
double get_double(const json& p, const char* key) { return p.at(key).get<double>(); }

std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

CMat random_complex(int n, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal;
  CMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = scale * cplx(normal(rng), normal(rng));
  return m;
}

// ---------------------------------------------------------------- oper

oper::MonodromyOptions monodromy_options(const json& p) {
  oper::MonodromyOptions o;
  o.tol.rtol = get_double(p, "tol");
  o.tol.atol = o.tol.rtol * 1e-2;
  o.max_step = get_double(p, "max_step");
  o.threads = get_int(p, "threads");
  require(o.tol.rtol > 0.0 && o.max_step > 0.0 && o.threads >= 1, "tol, max_step and threads must be positive");
  return o;
}

RunResult run_oper_monodromy(const json& p) {
  const int n = get_int(p, "n");
  require(n >= 2 && n <= 6, "oper monodromy: n must be in 2..6");
  const auto G = hyp::octagon_group();
  const cplx z0 = json_cplx(p.at("z0"), "z0");
  const std::string q = p.at("q").get<std::string>();
  oper::OperODE D;
  if (q == "zero") {
    D = oper::ode_from_projective(n, forms::JetProvider::zero());
  } else if (q == "poincare") {
    const int radius = get_int(p, "radius");
    D = oper::ode_from_projective(n, forms::domain_reduced(forms::poincare_series(G, 2, forms::default_seed(2), radius)));
  } else {
    throw ValidationError("oper monodromy: q must be 'zero' or 'poincare'");
  }
  const auto m = oper::monodromy(D, G, z0, monodromy_options(p));
  RunResult r;
  r.report = oper::monodromy_report(m);
  r.report["commutant_dimension"] = rep::commutant_dimension(m.rho);
  r.report["unitarity_margin"] = rep::unitarity_margin(m.rho, get_int(p, "unitarity_radius"));
  if (q == "zero") {
    double err = 0.0;
    for (int i = 0; i < G.num_generators(); ++i) {
      const CMat poly = oper::to_polynomial_basis(m.rho.images[static_cast<std::size_t>(i)], z0);
      const CMat oracle = rep::principal_embedding(n, G.generators[static_cast<std::size_t>(i)].complex_matrix());
      err = std::max(err, std::min(max_abs(poly - oracle), max_abs(poly + oracle)));
    }
    r.report["principal_oracle_error"] = err;
  }
  report::Table t{{"generator", "row", "col", "re", "im"}, {}};
  for (std::size_t i = 0; i < m.rho.images.size(); ++i)
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b)
        t.add({hyp::letter_name(static_cast<int>(i) + 1), std::to_string(a), std::to_string(b),
               num(m.rho.images[i](a, b).real()), num(m.rho.images[i](a, b).imag())});
  r.csv = t.to_csv();
  return r;
}

RunResult run_oper_eichler(const json& p) {
  const int n = get_int(p, "n");
  require(n >= 3 && n <= 5 && n % 2 == 1, "oper eichler: n must be 3 or 5");
  const int q = (n + 1) / 2;
  const auto G = hyp::octagon_group();
  const cplx z0 = json_cplx(p.at("z0"), "z0");
  const auto opts = monodromy_options(p);
  const auto D = oper::ode_from_projective(n, forms::JetProvider::zero());
  const auto omega = forms::domain_reduced(forms::poincare_series(G, q, forms::default_seed(q), get_int(p, "radius")));
  const auto cocycle = oper::eichler_cocycle(D, omega, G, z0, opts);
  RunResult r;
  json vecs = json::array();
  report::Table t{{"generator", "component", "re", "im"}, {}};
  for (std::size_t i = 0; i < cocycle.vectors.size(); ++i) {
    json v = json::array();
    for (Eigen::Index c = 0; c < cocycle.vectors[i].size(); ++c) {
      v.push_back(cplx_json(cocycle.vectors[i](c)));
      t.add({hyp::letter_name(static_cast<int>(i) + 1), std::to_string(c), num(cocycle.vectors[i](c).real()),
             num(cocycle.vectors[i](c).imag())});
    }
    vecs.push_back(v);
  }
  r.report["n"] = n;
  r.report["q"] = q;
  r.report["vectors"] = vecs;
  r.report["wronskian_drift"] = cocycle.wronskian_drift;
  r.report["relation_norm"] = cocycle.extend(hyp::relation_letters(G.genus)).cwiseAbs().maxCoeff();
  if (p.at("check_pairs").get<bool>()) {
    double worst = 0.0;
    for (int a = 1; a <= G.num_generators(); ++a)
      for (int b = 1; b <= G.num_generators(); ++b) {
        const auto w = hyp::make_word(G, {a, b});
        const RowCVec direct = oper::eichler_vector(D, omega.jets, G, w, z0, opts);
        worst = std::max(worst, max_abs(direct - cocycle.extend(w)));
      }
    r.report["pair_error"] = worst;
  }
  forms::AutomorphicForm zero{q, G, 0, forms::JetProvider::zero(), forms::JetProvider::zero()};
  const auto zc = oper::eichler_cocycle(D, zero, G, z0, opts);
  double zmax = 0.0;
  for (const auto& v : zc.vectors) zmax = std::max(zmax, max_abs(v));
  r.report["zero_form_cocycle"] = zmax;
  r.csv = t.to_csv();
  return r;
}

forms::JetProvider random_rational(std::mt19937_64& rng, int power, int terms) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<forms::RationalTerm> t;
  for (int i = 0; i < terms; ++i)
    t.push_back({cplx(u(rng), u(rng)), cplx(u(rng), -1.0 - 0.5 * (u(rng) + 1.0)), power});
  return forms::jet_of_rational(std::move(t));
}

hyp::Moebius random_real_moebius(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.5, 1.5), v(-0.5, 0.5);
  const double a = u(rng), b = v(rng), c = v(rng);
  return hyp::Moebius{a, b, c, (1.0 + b * c) / a};
}

std::vector<cplx> random_points(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> x(-1.0, 1.0), y(0.5, 2.0);
  std::vector<cplx> pts;
  for (int i = 0; i < count; ++i) pts.emplace_back(x(rng), y(rng));
  return pts;
}

RunResult run_oper_wk(const json& p) {
  const int n = get_int(p, "n");
  require(n >= 2 && n <= 6, "oper wk: n must be in 2..6");
  const int samples = get_int(p, "samples");
  require(samples >= 1, "oper wk: samples must be positive");
  auto rng = make_rng(p.at("seed").get<std::uint64_t>());
  const auto Q = random_rational(rng, -2, 3);
  const auto pts = random_points(rng, samples);
  const auto D = oper::ode_from_projective(n, Q);
  double w2 = 0.0, w3 = 0.0, w4 = 0.0;
  for (cplx z : pts) {
    const auto c = oper::wk_covariants(D, z);
    w2 = std::max(w2, std::abs(c.w2 - D.Q(2).value(z)));
    if (c.w3) w3 = std::max(w3, std::abs(*c.w3));
    if (c.w4) w4 = std::max(w4, std::abs(*c.w4));
  }
  oper::OperODE general{n, {}, {}};
  for (int j = 2; j <= n; ++j) general.coefficients.push_back(random_rational(rng, -j, 2));
  const auto change = random_real_moebius(rng);
  RunResult r;
  r.report["n"] = n;
  r.report["samples"] = samples;
  r.report["principal_w2_minus_q2"] = w2;
  r.report["principal_w3_max"] = w3;
  r.report["principal_w4_max"] = w4;
  r.report["principal_covariance_defect"] = oper::wk_transformation_check(D, change, pts);
  r.report["general_covariance_defect"] = oper::wk_transformation_check(general, change, pts);
  return r;
}

// ---------------------------------------------------------------- hn, rep, dims

RunResult run_hn_verify(const json& p) {
  const int n = get_int(p, "n"), g = get_int(p, "g");
  const auto rep = hn::verify_oper_maximality(n, g);
  RunResult r;
  r.report["n"] = n;
  r.report["g"] = g;
  r.report["types"] = rep.count;
  r.report["maximal"] = rep.verdict();
  r.report["all_dominated"] = rep.all_dominated;
  r.report["equality_only_at_oper"] = rep.equality_only_at_oper;
  r.report["oper_type"] = hn::oper_hn_type(n, g).to_string();
  r.csv = hn::types_csv(hn::enumerate_admissible_types(n, g));
  return r;
}

RunResult run_rep_analyze(const json& p) {
  const auto rho = p.at("representation").is_null()
                       ? rep::named_representation(p.at("rep").get<std::string>(), get_int(p, "n"))
                       : rep::representation_from_json(p.at("representation"));
  const int radius = get_int(p, "radius");
  require(radius >= 0 && radius <= 6, "rep analyze: radius must be in 0..6");
  RunResult r;
  r.report["n"] = rho.n;
  r.report["genus"] = rho.genus;
  r.report["relation_residual"] = rep::relation_residual_rep(rho);
  r.report["relation_residual_signed"] = rep::relation_residual_signed(rho);
  r.report["commutant_dimension"] = rep::commutant_dimension(rho);
  r.report["unitarity_margin"] = rep::unitarity_margin(rho, radius);
  r.report["clebsch_gordon_dims"] = rep::clebsch_gordon_dims(rho.n);
  r.report["representation"] = rep::to_json(rho);
  return r;
}

RunResult run_dims(const json& p) {
  const int n = get_int(p, "n"), g = get_int(p, "g");
  const auto d = rep::moduli_dimensions(n, g);
  const auto cg = rep::clebsch_gordon_dims(n);
  RunResult r;
  r.report["n"] = n;
  r.report["g"] = g;
  r.report["betti"] = d.betti;
  r.report["hitchin_base"] = d.hitchin_base;
  r.report["betti_is_twice_hitchin_base"] = d.betti == 2 * d.hitchin_base;
  json e = json::array();
  for (std::size_t i = 0; i < d.eichler_h1.size(); ++i) e.push_back({{"q", static_cast<int>(i) + 2}, {"dim", d.eichler_h1[i]}});
  r.report["eichler_h1"] = e;
  r.report["clebsch_gordon_dims"] = cg;
  long long sum = 0;
  for (int c : cg) sum += c;
  r.report["clebsch_gordon_sum"] = sum;
  return r;
}

// ---------------------------------------------------------------- harmonic, gauge

json mesh_json(const mesh::EquivariantMesh& m) {
  return {{"vertices", m.vertices.size()},
          {"edges", m.edges.size()},
          {"faces", m.faces.size()},
          {"euler_characteristic", m.euler_characteristic()},
          {"cycle_residual", m.cycle_residual}};
}

RunResult run_harmonic_solve(const json& p) {
  const int n = get_int(p, "n");
  const auto G = hyp::octagon_group();
  const auto m = mesh::build_equivariant_mesh(G, get_int(p, "refinement"));
  const auto rho = rep::named_representation(p.at("rep").get<std::string>(), n);
  harmonic::HarmonicOptions o;
  o.tol = get_double(p, "tol");
  o.max_iters = get_int(p, "max_iters");
  o.divergence.window = get_int(p, "window");
  o.divergence.slope = get_double(p, "slope");
  const auto res = harmonic::harmonic_solve(m, rho, harmonic::constant_map(m, n), o);
  const auto psi = harmonic::psi_field(m, rho, res.u);
  const auto A = gauge::connection_from_metric(m, rho, res.u);
  const auto mr = gauge::moment_residuals(m, A, psi.psi.edges);
  const auto higgs = harmonic::higgs_from_psi(m, psi.psi);
  cplx c2_mean{};
  for (const auto& phi : higgs.traceless) c2_mean += gauge::hitchin_map_point(phi).front();
  c2_mean /= static_cast<double>(higgs.traceless.size());
  const auto& rep = res.report;
  RunResult r;
  r.report["mesh"] = mesh_json(m);
  r.report["energy_trace"] = rep.energy_trace;
  r.report["grad_norm"] = rep.grad_norm;
  r.report["iterations"] = rep.iterations;
  r.report["converged"] = rep.converged;
  r.report["diverged"] = rep.diverged;
  r.report["monotone"] = rep.monotone;
  r.report["psi_identity_gap"] = psi.identity.relative_gap;
  r.report["mu3_sup"] = mr.mu3_sup;
  r.report["basepoint_log_condition"] = rep.log_cond_trace.back();
  r.report["hitchin_c2_mean"] = cplx_json(c2_mean);
  report::Table t{{"sweep", "energy", "grad_norm", "log_cond"}, {}};
  for (std::size_t i = 0; i < rep.energy_trace.size(); ++i)
    t.add({std::to_string(i), num(rep.energy_trace[i]), num(rep.grad_trace[i]), num(rep.log_cond_trace[i])});
  r.csv = t.to_csv();
  return r;
}

RunResult run_gauge_flow(const json& p) {
  const int n = get_int(p, "n");
  require(n >= 2 && n <= 6, "gauge flow: n must be in 2..6");
  const int steps = get_int(p, "steps");
  require(steps >= 0, "gauge flow: steps must be nonnegative");
  const double dt = get_double(p, "dt"), mu = get_double(p, "mu");
  const auto m = mesh::build_equivariant_mesh(hyp::octagon_group(), get_int(p, "refinement"));
  auto rng = make_rng(p.at("seed").get<std::uint64_t>());
  gauge::DiscreteConnection A;
  for (std::size_t e = 0; e < m.edges.size(); ++e)
    A.U.push_back(linalg::skew_exp(linalg::skew_part(random_complex(n, rng, get_double(p, "connection_scale")))));
  gauge::DiscreteHiggs Phi;
  for (std::size_t v = 0; v < m.vertices.size(); ++v)
    Phi.phi.push_back(linalg::traceless(random_complex(n, rng, get_double(p, "higgs_scale"))));
  report::Table t{{"step", "ymh", "j", "mu1_norm", "mu2_norm", "mu3_norm", "dt"}, {}};
  auto row = [&](int step, double taken) {
    const auto y = gauge::ymh_value(m, A, Phi);
    const auto mr = gauge::moment_residuals(m, A, gauge::higgs_edge_field(m, A, Phi));
    t.add({std::to_string(step), num(y.value), num(gauge::donaldson_j(m, y.f, mu)), num(mr.mu1_norm),
           num(mr.mu2_norm), num(mr.mu3_norm), num(taken)});
    return y.value;
  };
  const double initial = row(0, 0.0);
  const double hol0 = gauge::holomorphicity_residual(m, A, Phi);
  double prev = initial, hol_max = hol0;
  bool monotone = true;
  int stalls = 0;
  for (int s = 1; s <= steps; ++s) {
    auto st = gauge::ymh_flow_step(m, A, Phi, dt);
    if (st.stalled) ++stalls;
    if (st.ymh_after > prev) monotone = false;
    prev = st.ymh_after;
    A = std::move(st.A);
    Phi = std::move(st.Phi);
    row(s, st.dt);
    if (s <= 100) hol_max = std::max(hol_max, gauge::holomorphicity_residual(m, A, Phi));
  }
  RunResult r;
  r.report["mesh"] = mesh_json(m);
  r.report["ymh_initial"] = initial;
  r.report["ymh_final"] = prev;
  r.report["monotone"] = monotone;
  r.report["stalled_steps"] = stalls;
  r.report["j_final"] = gauge::donaldson_j(m, A, Phi, mu);
  r.report["holomorphicity_initial"] = hol0;
  r.report["holomorphicity_max_first_100"] = hol_max;
  r.csv = t.to_csv();
  return r;
}

// ---------------------------------------------------------------- forms

RunResult run_forms_build(const json& p) {
  const auto G = hyp::octagon_group();
  const json desc = p.at("form").is_null() ? forms::default_form_descriptor(get_int(p, "k"), get_int(p, "radius")) : p.at("form");
  auto f = forms::form_from_descriptor(desc, G);
  if (p.at("reduced").get<bool>()) f = forms::domain_reduced(f);
  const int order = get_int(p, "order");
  require(order >= 0 && order <= 8, "forms build: order must be in 0..8");
  std::vector<cplx> grid;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) grid.emplace_back(-0.45 + 0.3 * i, 0.6 + 0.4 * j);
  double peak = 0.0;
  for (cplx z : grid) peak = std::max(peak, std::abs(f.jets.value(z)));
  RunResult r;
  r.report["k"] = f.k;
  r.report["truncation_radius"] = f.truncation_radius;
  r.report["automorphy_residual"] = forms::automorphy_residual(f, forms::default_samples(G));
  r.report["max_abs_on_grid"] = peak;
  r.report["descriptor"] = desc;
  r.csv = forms::sample_csv(f.jets, grid, order);
  return r;
}

// ---------------------------------------------------------------- suite

RunResult run_suite(const json& p) {
  suite::SuiteOptions o;
  o.level = suite::parse_level(p.at("level").get<std::string>());
  o.seed = p.at("seed").get<std::uint64_t>();
  o.threads = get_int(p, "threads");
  std::stringstream ss(p.at("inject").get<std::string>());
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) o.inject.insert(item);
  const auto results = suite::run_acceptance(o, &std::cerr);
  RunResult r;
  r.report = suite::results_to_json(results);
  for (const auto& c : results)
    if (!c.passed) r.exit_code = 1;
  r.csv = suite::format_table(results);
  return r;
}

using Runner = RunResult (*)(const json&);

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table{
      {"oper-monodromy", run_oper_monodromy}, {"oper-eichler", run_oper_eichler}, {"oper-wk", run_oper_wk},
      {"hn-verify", run_hn_verify},           {"rep-analyze", run_rep_analyze},   {"harmonic-solve", run_harmonic_solve},
      {"gauge-flow", run_gauge_flow},         {"forms-build", run_forms_build},   {"dims", run_dims},
      {"suite", run_suite},
  };
  return table;
}

}  // namespace

std::uint64_t RunConfig::seed() const { return parameters.value("seed", std::uint64_t{7}); }

int RunConfig::threads() const { return parameters.value("threads", 1); }

json RunConfig::to_json() const { return {{"command", command}, {"parameters", parameters}}; }

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : defaults_table()) v.push_back(k);
    return v;
  }();
  return names;
}

json default_parameters(const std::string& command) {
  const auto it = defaults_table().find(command);
  if (it == defaults_table().end()) throw ValidationError("unknown command '" + command + "'");
  return it->second;
}

RunConfig resolve_config(const std::string& command, const json& file_config, const json& overrides) {
  RunConfig c;
  c.command = command;
  c.parameters = default_parameters(command);
  if (!file_config.is_null()) {
    require(file_config.is_object(), "config must be a JSON object");
    if (file_config.contains("config") && file_config.contains("tool")) {
      // a whole report: rerun its echoed config
      return resolve_config(command, file_config["config"], overrides);
    }
    if (file_config.contains("command") && file_config.contains("parameters")) {
      require(file_config.size() == 2, "echoed config must hold only command and parameters");
      require(file_config["command"] == command, "config was written for command '" +
                                                     file_config["command"].get<std::string>() + "'");
      merge(c.parameters, file_config["parameters"], "config");
    } else {
      merge(c.parameters, file_config, "config");
    }
  }
  if (!overrides.is_null()) merge(c.parameters, overrides, "flags");
  return c;
}

RunResult run(const RunConfig& config) {
  const auto it = runners().find(config.command);
  if (it == runners().end()) throw ValidationError("unknown command '" + config.command + "'");
  RunResult r = it->second(config.parameters);
  r.report["config"] = config.to_json();
  r.report["tool"] = {{"name", report::kToolName}, {"version", report::kToolVersion}};
  return r;
}

namespace {

std::string flag_name(const std::string& key) {
  std::string s = key;
  for (char& c : s)
    if (c == '_') c = '-';
  return "--" + s;
}

json parse_flag(const json& def, const std::string& key, const std::string& text) {
  const std::string where = "flag " + flag_name(key);
  try {
    std::size_t used = 0;
    if (def.is_boolean()) {
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      throw ValidationError(where + " expects true or false");
    }
    if (def.is_number_integer()) {
      const long long v = std::stoll(text, &used);
      require(used == text.size(), where + " expects an integer");
      return v;
    }
    if (def.is_number_float()) {
      const double v = std::stod(text, &used);
      require(used == text.size(), where + " expects a number");
      return v;
    }
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ValidationError*>(&e)) throw;
    throw ValidationError(where + ": cannot parse '" + text + "'");
  }
  return text;
}

struct Subcommand {
  CLI::App* app = nullptr;
  std::string command;
  std::map<std::string, std::string> values;
};

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv) {
  CLI::App app{"Numerical laboratory for Higgs bundles, opers and harmonic maps on a genus-2 surface", "hodge-lab"};
  app.require_subcommand(1);
  std::string config_path, out_path, csv_path;
  std::vector<std::unique_ptr<Subcommand>> subs;
  std::map<std::string, CLI::App*> groups;
  const std::map<std::string, std::string> descriptions{
      {"oper-monodromy", "monodromy of a principal oper ODE along the octagon generators"},
      {"oper-eichler", "Eichler cocycle of a Poincaré-series form"},
      {"oper-wk", "w_k covariants and their Möbius covariance"},
      {"hn-verify", "exhaustive Harder–Narasimhan maximality check"},
      {"rep-analyze", "relation residual, commutant and unitarity of a representation"},
      {"harmonic-solve", "equivariant harmonic map by Karcher relaxation"},
      {"gauge-flow", "line-searched Yang–Mills–Higgs flow from random data"},
      {"forms-build", "truncated Poincaré series and its automorphy residual"},
      {"dims", "moduli and Hitchin-base dimension bookkeeping"},
      {"suite", "acceptance battery"}};
  for (const auto& command : command_names()) {
    auto sub = std::make_unique<Subcommand>();
    sub->command = command;
    const auto dash = command.find('-');
    const bool nested = command != "suite" && command != "dims" && dash != std::string::npos;
    CLI::App* parent = &app;
    std::string leaf = command;
    if (nested) {
      const std::string group = command.substr(0, dash);
      if (!groups.count(group)) {
        groups[group] = app.add_subcommand(group, group + " commands");
        groups[group]->require_subcommand(1);
      }
      parent = groups[group];
      leaf = command.substr(dash + 1);
    }
    sub->app = parent->add_subcommand(leaf, descriptions.at(command));
    const json defaults = default_parameters(command);
    for (const auto& [key, def] : defaults.items()) {
      if (def.is_null() || def.is_array()) continue;  // config file only
      const char* type = def.is_boolean() ? "BOOL" : def.is_number_integer() ? "INT" : def.is_number() ? "FLOAT" : "TEXT";
      sub->app->add_option(flag_name(key), sub->values[key], "default " + def.dump())->type_name(type);
    }
    sub->app->add_option("--config", config_path, "JSON config file; flags override it")->type_name("PATH");
    sub->app->add_option("--out", out_path, "report path (default stdout)")->type_name("PATH");
    sub->app->add_option("--csv", csv_path, "CSV output path")->type_name("PATH");
    subs.push_back(std::move(sub));
  }
  if (argc <= 1) {
    std::cerr << app.help();
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }
  try {
    const Subcommand* chosen = nullptr;
    for (const auto& s : subs)
      if (s->app->parsed()) chosen = s.get();
    if (!chosen) throw ValidationError("no command given");
    const json defs = default_parameters(chosen->command);
    json overrides = json::object();
    for (const auto& [key, text] : chosen->values)
      if (chosen->app->count(flag_name(key)) > 0) overrides[key] = parse_flag(defs.at(key), key, text);
    json file_config;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      require(static_cast<bool>(f), "cannot read config " + config_path);
      try {
        file_config = json::parse(f);
      } catch (const json::exception& e) {
        throw ValidationError("config " + config_path + ": " + e.what());
      }
    }
    RunConfig config = resolve_config(chosen->command, file_config, overrides);
    config.out = out_path;
    config.csv = csv_path;
    const RunResult r = run(config);
    if (config.command == "suite") {
      std::cout << *r.csv;
      if (!out_path.empty()) report::emit_report(r.report, out_path);
    } else {
      report::emit_report(r.report, out_path);
      if (!csv_path.empty()) {
        require(r.csv.has_value(), "command " + config.command + " has no CSV output");
        report::write_text(csv_path, *r.csv);
      }
    }
    return r.exit_code;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace hodge::cli
