#include "hodge/oper.hpp"

#include <cmath>
#include <future>

#include "hodge/linalg.hpp"

namespace hodge::oper {

using forms::JetProvider;

const JetProvider& OperODE::Q(int j) const {
  require(j >= 2 && j <= n, "OperODE: coefficient index out of range");
  return coefficients[static_cast<std::size_t>(j - 2)];
}

cplx schwarzian(const Taylor& f) {
  require(f.order() >= 3, "schwarzian: need a series of order >= 3");
  const auto d = f.derivatives();
  require(std::abs(d[1]) > 1e-12, "schwarzian: critical point (f' = 0)");
  const cplx r = d[2] / d[1];
  return d[3] / d[1] - 1.5 * r * r;
}

cplx schwarzian(const JetProvider& f, cplx z) { return schwarzian(f.taylor(z, 3)); }

OperODE ode_from_projective(int n, const JetProvider& Q) {
  require(n >= 2 && n <= 6, "ode_from_projective: n must be in 2..6");
  using forms::derivative;
  using forms::scale;
  const JetProvider d1 = derivative(Q, 1);
  auto d = [&Q](int m) { return derivative(Q, m); };
  OperODE D{n, {}, {}};
  switch (n) {
    case 2:
      D.coefficients = {Q};
      break;
    case 3:
      D.coefficients = {scale(Q, 4.0), scale(d1, 2.0)};
      break;
    case 4:
      D.coefficients = {scale(Q, 10.0), scale(d1, 10.0), scale(Q * Q, 9.0) + scale(d(2), 3.0)};
      break;
    case 5:
      D.coefficients = {scale(Q, 20.0), scale(d1, 30.0), scale(Q * Q, 64.0) + scale(d(2), 18.0),
                        scale(Q * d1, 64.0) + scale(d(3), 4.0)};
      break;
    case 6:
      D.coefficients = {scale(Q, 35.0), scale(d1, 70.0), scale(d(2), 63.0) + scale(Q * Q, 259.0),
                        scale(d(3), 28.0) + scale(Q * d1, 518.0),
                        scale(d1 * d1, 130.0) + scale(Q * d(2), 155.0) + scale(d(4), 5.0) + scale(Q * Q * Q, 225.0)};
      break;
  }
  return D;
}

OperODE ode_from_projective(int n, const forms::AutomorphicForm& Q) {
  require(Q.k == 2, "ode_from_projective: Q must be a quadratic differential (k = 2)");
  OperODE D = ode_from_projective(n, Q.jets);
  D.sources = {Q};
  return D;
}

namespace {

// w_k from coefficient series at a point (q2 to order 2, q3 to order 1, q4 to order 0)
Covariants covariants_from_series(int n, const Taylor& q2, const Taylor* q3, const Taylor* q4,
                                  const CovariantConstants& k = {}) {
  Covariants out;
  out.w2 = q2[0];
  const double nn = n;
  if (n >= 3 && q3) out.w3 = (*q3)[0] - (nn - 2.0) / 2.0 * q2[1];
  if (n >= 4 && q3 && q4) {
    const cplx q2pp = 2.0 * q2[2];
    out.w4 = (*q4)[0] - (nn - 3.0) / 2.0 * (*q3)[1] + (nn - 2.0) * (nn - 3.0) / 10.0 * q2pp -
             k.w4_quadratic_scale * (nn - 2.0) * (nn - 3.0) * (5.0 * nn + 7.0) / (10.0 * nn * (nn * nn - 1.0)) * q2[0] *
                 q2[0];
  }
  return out;
}

Covariants subtract(const Covariants& a, const Covariants& b) {
  Covariants d;
  d.w2 = a.w2 - b.w2;
  if (a.w3 && b.w3) d.w3 = *a.w3 - *b.w3;
  if (a.w4 && b.w4) d.w4 = *a.w4 - *b.w4;
  return d;
}

// The Möbius map m expanded about z as a series in h.
Taylor moebius_series(const hyp::Moebius& m, cplx z, int order) {
  Taylor num(order), den(order);
  num[0] = m.a * z + m.b;
  den[0] = m.c * z + m.d;
  if (order >= 1) {
    num[1] = m.a;
    den[1] = m.c;
  }
  return num * den.reciprocal();
}

Taylor cocycle_series(const hyp::Moebius& m, cplx z, int order) {
  Taylor t(order);
  t[0] = m.c * z + m.d;
  if (order >= 1) t[1] = m.c;
  return t;
}

}  // namespace

Covariants wk_covariants(int n, const JetProvider& Q2, const JetProvider& Q3, const JetProvider& Q4, cplx z,
                         const CovariantConstants& k) {
  require(n >= 2, "wk_covariants: n must be >= 2");
  const Taylor q2 = Q2.taylor(z, 2);
  std::optional<Taylor> q3, q4;
  if (n >= 3) q3 = Q3.taylor(z, 1);
  if (n >= 4) q4 = Q4.taylor(z, 0);
  return covariants_from_series(n, q2, q3 ? &*q3 : nullptr, q4 ? &*q4 : nullptr, k);
}

Covariants wk_covariants(const OperODE& D, cplx z, const CovariantConstants& k) {
  const JetProvider zero;
  return wk_covariants(D.n, D.Q(2), D.n >= 3 ? D.Q(3) : zero, D.n >= 4 ? D.Q(4) : zero, z, k);
}

CMat companion(const OperODE& D, cplx z) {
  const int n = D.n;
  require(static_cast<int>(D.coefficients.size()) == n - 1, "OperODE: expected n-1 coefficients");
  CMat c = CMat::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) c(i, i + 1) = 1.0;
  for (int j = 2; j <= n; ++j) {
    const auto& q = D.Q(j);
    if (!q.is_zero()) c(n - 1, n - j) = -q.value(z);
  }
  return c;
}

std::vector<Taylor> solution_series(const OperODE& D, const CMat& jets, cplx z, int order) {
  const int n = D.n;
  require(jets.rows() == n, "solution_series: jets must have n rows");
  require(order >= n - 1, "solution_series: order must be at least n-1");
  const int extra = order - n;
  std::vector<Taylor> q;
  for (int j = 2; j <= n; ++j) q.push_back(extra >= 0 ? D.Q(j).taylor(z, extra) : Taylor(0));
  std::vector<Taylor> out;
  for (Eigen::Index col = 0; col < jets.cols(); ++col) {
    Taylor a(order);
    for (int i = 0; i < n; ++i) a[i] = jets(i, col) / factorial(i);
    // coefficient of h^p in y^(r) is a_{p+r} (p+r)!/p!
    auto dcoef = [&a](int p, int r) { return a[p + r] * (factorial(p + r) / factorial(p)); };
    for (int m = 0; m <= extra; ++m) {
      cplx s{};
      for (int j = 2; j <= n; ++j)
        for (int l = 0; l <= m; ++l) s += q[static_cast<std::size_t>(j - 2)][l] * dcoef(m - l, n - j);
      a[m + n] = -s * (factorial(m) / factorial(m + n));
    }
    out.push_back(a);
  }
  return out;
}

double wk_transformation_check(const OperODE& D, const hyp::Moebius& change, std::span<const cplx> samples) {
  const int n = D.n;
  const int order = n + 2;
  const hyp::Moebius back = change.inverse();
  double worst = 0.0;
  for (cplx z : samples) {
    const Covariants before = wk_covariants(D, z);
    const cplx w0 = hyp::mobius_apply(change, z);
    const auto basis = solution_series(D, linalg::identity(n), z, order);
    // y-hat(w) = y(psi(w)) (psi'(w))^{1-q} = y(psi(w)) (c' w + d')^{n-1}
    const Taylor psi = moebius_series(back, w0, order);
    const Taylor factor = cocycle_series(back, w0, order).ipow(n - 1);
    std::vector<std::vector<Taylor>> derivs;  // derivs[k][r] = y-hat_k^(r)
    for (const auto& y : basis) {
      std::vector<Taylor> d{y.compose(psi) * factor};
      for (int r = 1; r <= n; ++r) d.push_back(d.back().derivative());
      derivs.push_back(std::move(d));
    }
    // coefficient series c(h) = R(h) W(h)^{-1}, to order 2
    std::vector<CMat> W(3, CMat(n, n));
    std::vector<RowCVec> R(3, RowCVec(n));
    for (int m = 0; m <= 2; ++m)
      for (int k = 0; k < n; ++k) {
        for (int r = 0; r < n; ++r) W[m](r, k) = derivs[k][r][m];
        R[m](k) = derivs[k][n][m];
      }
    std::vector<CMat> V(3);
    V[0] = W[0].inverse();
    for (int m = 1; m <= 2; ++m) {
      CMat acc = CMat::Zero(n, n);
      for (int l = 1; l <= m; ++l) acc += W[l] * V[m - l];
      V[m] = -V[0] * acc;
    }
    std::vector<RowCVec> c(3, RowCVec::Zero(n));
    for (int m = 0; m <= 2; ++m)
      for (int l = 0; l <= m; ++l) c[m] += R[l] * V[m - l];
    auto q_hat = [&](int j) {
      Taylor t(2);
      for (int m = 0; m <= 2; ++m) t[m] = -c[m](n - j);
      return t;
    };
    const Taylor q2 = q_hat(2);
    std::optional<Taylor> q3, q4;
    if (n >= 3) q3 = q_hat(3);
    if (n >= 4) q4 = q_hat(4);
    const Covariants after = covariants_from_series(n, q2, q3 ? &*q3 : nullptr, q4 ? &*q4 : nullptr);
    const cplx wp = change.derivative(z);
    worst = std::max(worst, std::abs(after.w2 * wp * wp - before.w2));
    if (after.w3) worst = std::max(worst, std::abs(*after.w3 * ipow(wp, 3) - *before.w3));
    if (after.w4) worst = std::max(worst, std::abs(*after.w4 * ipow(wp, 4) - *before.w4));
  }
  return worst;
}

CMat integrate_path(const ode::MatrixField& field, const hyp::HPath& path, const CMat& initial,
                    const ode::Tolerances& tol, std::vector<ode::LegStats>* stats) {
  CMat y = initial;
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    const auto arc = hyp::geodesic_arc(path.vertices[i], path.vertices[i + 1]);
    const ode::Curve curve{[arc](double t) { return arc.point(t); }, [arc](double t) { return arc.velocity(t); }};
    ode::LegStats leg;
    y = ode::integrate_curve(field, curve, y, tol, &leg);
    if (stats) stats->push_back(leg);
  }
  return y;
}

CMat integrate_ode(const OperODE& D, const hyp::HPath& path, const CMat& initial, const ode::Tolerances& tol,
                   std::vector<ode::LegStats>* stats) {
  require(initial.rows() == D.n && initial.cols() == D.n, "integrate_ode: initial matrix must be n x n");
  require(std::abs(initial.determinant()) > 1e-10, "integrate_ode: initial matrix is singular");
  return integrate_path([&D](cplx z) { return companion(D, z); }, path, initial, tol, stats);
}

CMat automorphy_jet_transfer(int n, const hyp::Moebius& gamma, cplx z0) {
  const int order = n - 1;
  const Taylor moved = moebius_series(gamma, z0, order);
  Taylor shift = moved;
  shift[0] = 0.0;
  const Taylor factor = cocycle_series(gamma, z0, order).ipow(n - 1);
  CMat J(n, n);
  Taylor power = Taylor::constant(1.0, order);
  for (int i = 0; i < n; ++i) {
    const auto d = (power * factor * (1.0 / factorial(i))).derivatives();
    for (int r = 0; r < n; ++r) J(r, i) = d[static_cast<std::size_t>(r)];
    power = power * shift;
  }
  return J;
}

namespace {

double max_drift(const std::vector<ode::LegStats>& legs) {
  double d = 0.0;
  for (const auto& l : legs) d = std::max(d, l.wronskian_drift);
  return d;
}

}  // namespace

CMat continue_word(const OperODE& D, const hyp::FuchsianGroup& G, const hyp::GroupWord& word, cplx z0,
                   const MonodromyOptions& opts, std::vector<ode::LegStats>* stats) {
  const hyp::HPath path = hyp::translate_path(G, word, z0, opts.max_step);
  const CMat Y = integrate_ode(D, path, linalg::identity(D.n), opts.tol, stats);
  return (automorphy_jet_transfer(D.n, word.matrix, z0) * Y).transpose();
}

MonodromyRep monodromy(const OperODE& D, const hyp::FuchsianGroup& G, cplx z0, const MonodromyOptions& opts) {
  require(z0.imag() > 0.0, "monodromy: basepoint not in the upper half-plane");
  MonodromyRep out;
  out.z0 = z0;
  out.tol = opts.tol;
  out.rho = {G.genus, D.n, {}};
  if (!D.sources.empty()) {
    std::vector<forms::AutomorphySample> samples;
    for (int l = 1; l <= G.num_generators(); ++l)
      for (int s : {l, -l}) samples.emplace_back(hyp::make_word(G, {s}), z0);
    for (const auto& f : D.sources) {
      const double r = forms::automorphy_residual(f, samples);
      if (r > 1e-4)
        out.warnings.push_back("coefficient automorphy residual " + std::to_string(r) + " at basepoint exceeds 1e-4");
    }
  }
  // generators are continued independently, so threading does not change any bits
  const int ng = G.num_generators();
  std::vector<CMat> images(static_cast<std::size_t>(ng));
  std::vector<std::vector<ode::LegStats>> legs(static_cast<std::size_t>(ng));
  auto run = [&](int l) {
    const auto i = static_cast<std::size_t>(l - 1);
    images[i] = continue_word(D, G, hyp::make_word(G, {l}), z0, opts, &legs[i]);
  };
  if (opts.threads > 1) {
    std::vector<std::future<void>> jobs;
    for (int first = 1; first <= ng; first += opts.threads) {
      for (int l = first; l < first + opts.threads && l <= ng; ++l) jobs.push_back(std::async(std::launch::async, run, l));
      for (auto& j : jobs) j.get();
      jobs.clear();
    }
  } else {
    for (int l = 1; l <= ng; ++l) run(l);
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    out.wronskian_drift = std::max(out.wronskian_drift, max_drift(legs[i]));
    out.det_defect = std::max(out.det_defect, std::abs(images[i].determinant() - 1.0));
    out.rho.images.push_back(images[i]);
  }
  out.relation_residual = rep::relation_residual_signed(out.rho);
  return out;
}

CMat polynomial_basis_jets(int n, cplx z0) {
  CMat B = CMat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const int p = n - 1 - k;
    for (int i = 0; i <= p; ++i) B(i, k) = factorial(p) / factorial(p - i) * ipow(z0, p - i);
  }
  return B;
}

CMat to_polynomial_basis(const CMat& image, cplx z0) {
  const CMat B = polynomial_basis_jets(static_cast<int>(image.rows()), z0);
  return B.transpose() * image * B.transpose().inverse();
}

RowCVec EichlerCocycle::extend(const std::vector<int>& letters) const {
  RowCVec v = RowCVec::Zero(n);
  for (int l : letters) {
    const std::size_t i = static_cast<std::size_t>(std::abs(l) - 1);
    require(i < vectors.size(), "EichlerCocycle: letter out of range");
    // v_{g^-1} = -v_g rho(g)^{-1}
    const RowCVec vl = l > 0 ? vectors[i] : RowCVec(-vectors[i] * rho.letter(l));
    v = v * rho.letter(l) + vl;
  }
  return v;
}

namespace {

struct AugmentedResult {
  CMat image;
  RowCVec vector;
  double drift = 0.0;
};

AugmentedResult continue_augmented(const OperODE& D, const JetProvider& omega, const hyp::FuchsianGroup& G,
                                   const hyp::GroupWord& word, cplx z0, const MonodromyOptions& opts) {
  const int n = D.n;
  auto field = [&](cplx z) {
    CMat a = CMat::Zero(n + 1, n + 1);
    a.topLeftCorner(n, n) = companion(D, z);
    if (!omega.is_zero()) a(n - 1, n) = omega.value(z);
    return a;
  };
  const hyp::HPath path = hyp::translate_path(G, word, z0, opts.max_step);
  std::vector<ode::LegStats> legs;
  const CMat Y = integrate_path(field, path, linalg::identity(n + 1), opts.tol, &legs);
  const CMat J = automorphy_jet_transfer(n, word.matrix, z0);
  AugmentedResult r;
  r.image = (J * Y.topLeftCorner(n, n)).transpose();
  r.vector = (J * Y.topRightCorner(n, 1)).transpose();
  r.drift = max_drift(legs);
  return r;
}

void require_eichler_weight(const OperODE& D, int k) {
  require(D.n % 2 == 1, "eichler_cocycle: n must be odd so that q = (n+1)/2 is an integer");
  require(k == (D.n + 1) / 2, "eichler_cocycle: omega must have weight q = (n+1)/2");
}

}  // namespace

EichlerCocycle eichler_cocycle(const OperODE& D, const forms::AutomorphicForm& omega, const hyp::FuchsianGroup& G,
                               cplx z0, const MonodromyOptions& opts) {
  require_eichler_weight(D, omega.k);
  EichlerCocycle out;
  out.n = D.n;
  out.q = omega.k;
  out.rho = {G.genus, D.n, {}};
  for (int l = 1; l <= G.num_generators(); ++l) {
    const auto r = continue_augmented(D, omega.jets, G, hyp::make_word(G, {l}), z0, opts);
    out.rho.images.push_back(r.image);
    out.vectors.push_back(r.vector);
    out.wronskian_drift = std::max(out.wronskian_drift, r.drift);
  }
  return out;
}

RowCVec eichler_vector(const OperODE& D, const JetProvider& omega, const hyp::FuchsianGroup& G,
                       const hyp::GroupWord& word, cplx z0, const MonodromyOptions& opts) {
  require(D.n % 2 == 1, "eichler_vector: n must be odd");
  return continue_augmented(D, omega, G, word, z0, opts).vector;
}

std::vector<Covariants> oper_difference(const OperODE& D1, const OperODE& D2, std::span<const cplx> samples) {
  require(D1.n == D2.n, "oper_difference: operators must have equal order");
  std::vector<Covariants> out;
  for (cplx z : samples) out.push_back(subtract(wk_covariants(D1, z), wk_covariants(D2, z)));
  return out;
}

nlohmann::json monodromy_report(const MonodromyRep& m) {
  nlohmann::json gens = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rho.images.size(); ++i) {
    nlohmann::json entries = nlohmann::json::array();
    const CMat& a = m.rho.images[i];
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      for (Eigen::Index c = 0; c < a.cols(); ++c) entries.push_back({a(r, c).real(), a(r, c).imag()});
    gens.push_back({{"word", hyp::letter_name(static_cast<int>(i) + 1)}, {"matrix", entries}});
  }
  return {{"n", m.rho.n},
          {"z0", {m.z0.real(), m.z0.imag()}},
          {"tol", m.tol.rtol},
          {"generators", gens},
          {"relation_residual", m.relation_residual},
          {"wronskian_drift", m.wronskian_drift},
          {"det_defect", m.det_defect},
          {"warnings", m.warnings}};
}

}  // namespace hodge::oper
