#include "hodge/rep.hpp"

#include <cmath>

#include "hodge/linalg.hpp"

namespace hodge::rep {

CMat Representation::letter(int l) const {
  require(l != 0 && std::abs(l) <= static_cast<int>(images.size()), "representation: letter out of range");
  const CMat& m = images[static_cast<std::size_t>(std::abs(l) - 1)];
  return l > 0 ? m : CMat(m.inverse());
}

CMat Representation::image(const std::vector<int>& letters) const {
  CMat out = linalg::identity(n);
  for (int l : letters) out = out * letter(l);
  return out;
}

Representation from_group(const hyp::FuchsianGroup& g) {
  Representation rho{g.genus, 2, {}};
  for (const auto& m : g.generators) rho.images.push_back(m.complex_matrix());
  return rho;
}

Representation trivial(int n, int genus) {
  require(n >= 1 && genus >= 1, "trivial representation: bad size");
  return {genus, n, std::vector<CMat>(static_cast<std::size_t>(2 * genus), linalg::identity(n))};
}

Representation compose_principal(int n, const Representation& rho2) {
  require(rho2.n == 2, "compose_principal: input must be 2-dimensional");
  Representation out{rho2.genus, n, {}};
  for (const auto& m : rho2.images) out.images.push_back(principal_embedding(n, m));
  return out;
}

Representation named_representation(const std::string& name, int n) {
  require(n >= 2, "representation: n must be >= 2");
  if (name == "fuchsian") {
    const auto rho2 = from_group(hyp::octagon_group());
    return n == 2 ? rho2 : compose_principal(n, rho2);
  }
  Representation rho = trivial(n);
  if (name == "trivial") return rho;
  if (name == "unitary") {
    rho.images[0](0, 0) = std::polar(1.0, 0.7);
    rho.images[0](1, 1) = std::polar(1.0, -0.7);
    rho.images[1](0, 0) = std::polar(1.0, -1.3);
    rho.images[1](1, 1) = std::polar(1.0, 1.3);
    return rho;
  }
  if (name == "diagonal") {
    rho.images[0](0, 0) = 2.0;
    rho.images[0](1, 1) = 0.5;
    return rho;
  }
  if (name == "unipotent") {
    rho.images[0](0, 1) = 1.0;
    return rho;
  }
  throw ValidationError("unknown representation '" + name + "' (fuchsian, trivial, unitary, diagonal, unipotent)");
}

Representation conjugate(const Representation& rho, const CMat& g) {
  Representation out = rho;
  const CMat ginv = g.inverse();
  for (auto& m : out.images) m = g * m * ginv;
  return out;
}

namespace {

CMat relator_product(const Representation& rho) {
  require(static_cast<int>(rho.images.size()) == 2 * rho.genus, "representation: expected 2g generator images");
  for (const auto& m : rho.images) {
    require(m.rows() == rho.n && m.cols() == rho.n, "representation: image has wrong size");
    require(std::abs(m.determinant()) >= 1e-10, "representation: singular generator image");
  }
  return rho.image(hyp::relation_letters(rho.genus));
}

}  // namespace

double relation_residual_rep(const Representation& rho) {
  return max_abs(relator_product(rho) - linalg::identity(rho.n));
}

double relation_residual_signed(const Representation& rho) {
  const CMat p = relator_product(rho);
  const CMat id = linalg::identity(rho.n);
  return std::min(max_abs(p - id), max_abs(p + id));
}

CMat principal_embedding(int n, const CMat& m) {
  require(n >= 1, "principal_embedding: n must be positive");
  require(m.rows() == 2 && m.cols() == 2, "principal_embedding: input must be 2x2");
  require(std::abs(m.determinant() - 1.0) <= 1e-10, "principal_embedding: input is not unimodular");
  const int deg = n - 1;
  // row j: (a x + b y)^{deg-j} (c x + d y)^j expanded in x^{deg-k} y^k
  auto binary_power = [deg](cplx p, cplx q, int e) {
    std::vector<cplx> coef(static_cast<std::size_t>(deg) + 1, cplx{});
    coef[0] = 1.0;
    for (int step = 0; step < e; ++step)
      for (int k = step + 1; k >= 0; --k)
        coef[static_cast<std::size_t>(k)] =
            coef[static_cast<std::size_t>(k)] * p + (k > 0 ? coef[static_cast<std::size_t>(k - 1)] * q : cplx{});
    return coef;
  };
  CMat out = CMat::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const auto u = binary_power(m(0, 0), m(0, 1), deg - j);
    const auto v = binary_power(m(1, 0), m(1, 1), j);
    for (int a = 0; a <= deg - j; ++a)
      for (int b = 0; b <= j; ++b) out(j, a + b) += u[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(b)];
  }
  return out;
}

int commutant_dimension(const Representation& rho, double rel_threshold) {
  const int n = rho.n;
  const int nn = n * n;
  CMat stacked(nn * static_cast<int>(rho.images.size()), nn);
  const CMat id = linalg::identity(n);
  for (std::size_t i = 0; i < rho.images.size(); ++i) {
    const CMat& a = rho.images[i];
    // vec(X A - A X) = (A^T ⊗ I - I ⊗ A) vec(X)
    CMat block(nn, nn);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) block.block(r * n, c * n, n, n) = a(c, r) * id - (r == c ? a : CMat::Zero(n, n));
    stacked.middleRows(static_cast<Eigen::Index>(i) * nn, nn) = block;
  }
  if (rho.images.empty()) return nn;
  Eigen::JacobiSVD<CMat> svd(stacked);
  const auto& s = svd.singularValues();
  const double top = s.size() ? s(0) : 0.0;
  if (top == 0.0) return nn;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_threshold * top) ++rank;
  return nn - rank;
}

double unitarity_margin(const Representation& rho, int radius) {
  const auto words = hyp::reduced_words(2 * rho.genus, radius);
  const CMat id = linalg::identity(rho.n);
  double worst = 0.0;
  for (const auto& w : words) {
    const CMat m = rho.image(w);
    worst = std::max(worst, max_abs(CMat(m.adjoint() * m) - id));
  }
  return worst;
}

std::vector<int> clebsch_gordon_dims(int n) {
  require(n >= 2, "clebsch_gordon_dims: n must be >= 2");
  std::vector<int> dims;
  for (int j = 2; j <= n; ++j) dims.push_back(2 * j - 1);
  return dims;
}

long long eichler_h1(int q, int g) {
  require(q >= 2 && g >= 2, "eichler_h1: need q >= 2 and g >= 2");
  return 2LL * (2 * q - 1) * (g - 1);
}

ModuliDimensions moduli_dimensions(int n, int g) {
  require(n >= 2 && g >= 2, "moduli_dimensions: need n >= 2 and g >= 2");
  ModuliDimensions d;
  d.betti = static_cast<long long>(n * n - 1) * (2 * g - 2);
  for (int j = 2; j <= n; ++j) d.hitchin_base += static_cast<long long>(2 * j - 1) * (g - 1);
  for (int q = 2; q <= n; ++q) d.eichler_h1.push_back(eichler_h1(q, g));
  if (d.betti != 2 * d.hitchin_base) throw std::logic_error("moduli_dimensions: betti != 2 * hitchin_base");
  return d;
}

nlohmann::json to_json(const Representation& rho) {
  nlohmann::json gens = nlohmann::json::array();
  for (std::size_t i = 0; i < rho.images.size(); ++i) {
    nlohmann::json entries = nlohmann::json::array();
    const CMat& m = rho.images[i];
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
    gens.push_back({{"word", hyp::letter_name(static_cast<int>(i) + 1)}, {"matrix", entries}});
  }
  return {{"n", rho.n}, {"genus", rho.genus}, {"generators", gens}};
}

Representation representation_from_json(const nlohmann::json& j) {
  Representation rho;
  rho.n = j.at("n").get<int>();
  rho.genus = j.value("genus", 2);
  require(rho.n >= 1, "representation JSON: n must be positive");
  for (const auto& gen : j.at("generators")) {
    const auto& entries = gen.at("matrix");
    require(static_cast<int>(entries.size()) == rho.n * rho.n, "representation JSON: matrix has wrong size");
    CMat m(rho.n, rho.n);
    for (int k = 0; k < rho.n * rho.n; ++k)
      m(k / rho.n, k % rho.n) = cplx(entries[static_cast<std::size_t>(k)].at(0).get<double>(),
                                     entries[static_cast<std::size_t>(k)].at(1).get<double>());
    rho.images.push_back(m);
  }
  require(static_cast<int>(rho.images.size()) == 2 * rho.genus, "representation JSON: expected 2g generators");
  return rho;
}

}  // namespace hodge::rep
