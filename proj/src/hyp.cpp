#include "hodge/hyp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hodge::hyp {

Eigen::Matrix2d Moebius::matrix() const {
  Eigen::Matrix2d m;
  m << a, b, c, d;
  return m;
}

CMat Moebius::complex_matrix() const { return matrix().cast<cplx>(); }

cplx Moebius::derivative(cplx z) const {
  const cplx j = c * z + d;
  return 1.0 / (j * j);
}

Moebius operator*(const Moebius& m, const Moebius& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

double projective_distance(const Moebius& m, const Moebius& n) {
  const Eigen::Matrix2d a = m.matrix();
  const Eigen::Matrix2d b = n.matrix();
  return std::min(max_abs(a - b), max_abs(a + b));
}

Moebius FuchsianGroup::letter(int l) const {
  const int idx = std::abs(l) - 1;
  require(l != 0 && idx < num_generators(), "letter out of range: " + std::to_string(l));
  const Moebius& m = generators[static_cast<std::size_t>(idx)];
  return l > 0 ? m : m.inverse();
}

std::string letter_name(int letter) {
  const int idx = std::abs(letter) - 1;
  std::string s(1, idx % 2 == 0 ? 'a' : 'b');
  s += std::to_string(idx / 2 + 1);
  if (letter < 0) s += "^-1";
  return s;
}

std::string GroupWord::name() const {
  if (letters.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) s += ' ';
    s += letter_name(letters[i]);
  }
  return s;
}

GroupWord make_word(const FuchsianGroup& g, std::vector<int> letters) {
  std::vector<int> reduced;
  reduced.reserve(letters.size());
  for (int l : letters) {
    require(l != 0 && std::abs(l) <= g.num_generators(), "make_word: letter out of range");
    if (!reduced.empty() && reduced.back() == -l) {
      reduced.pop_back();
    } else {
      reduced.push_back(l);
    }
  }
  GroupWord w;
  w.matrix = Moebius::identity();
  for (int l : reduced) w.matrix = w.matrix * g.letter(l);
  w.letters = std::move(reduced);
  return w;
}

GroupWord concat(const FuchsianGroup& g, const GroupWord& u, const GroupWord& v) {
  std::vector<int> letters = u.letters;
  letters.insert(letters.end(), v.letters.begin(), v.letters.end());
  return make_word(g, std::move(letters));
}

GroupWord inverse(const FuchsianGroup& g, const GroupWord& w) {
  std::vector<int> letters(w.letters.rbegin(), w.letters.rend());
  for (int& l : letters) l = -l;
  return make_word(g, std::move(letters));
}

std::vector<int> relation_letters(int genus) {
  std::vector<int> r;
  for (int i = 0; i < genus; ++i) {
    const int a = 2 * i + 1;
    const int b = 2 * i + 2;
    r.insert(r.end(), {a, b, -a, -b});
  }
  return r;
}

cplx mobius_apply(const Moebius& m, cplx z) {
  require(z.imag() > 0.0, "mobius_apply: point not in the upper half-plane");
  return (m.a * z + m.b) / (m.c * z + m.d);
}

double hyp_distance(cplx z, cplx w) {
  require(z.imag() > 0.0 && w.imag() > 0.0, "hyp_distance: point not in the upper half-plane");
  // arccosh(1 + x) written to keep precision for nearby points
  const double x = std::norm(z - w) / (2.0 * z.imag() * w.imag());
  return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

GeodesicArc geodesic_arc(cplx z, cplx w) {
  require(z.imag() > 0.0 && w.imag() > 0.0, "geodesic_arc: endpoints not in the upper half-plane");
  GeodesicArc arc;
  arc.shift = z.real();
  arc.scale = z.imag();
  // translate and scale so that z goes to i, then look from the disk center
  const cplx w1 = (w - z.real()) / z.imag();
  const cplx q = (w1 - I_unit) / (w1 + I_unit);
  const double r = std::abs(q);
  if (r == 0.0) return arc;
  arc.direction = q / r;
  arc.length = hyp_distance(z, w);
  return arc;
}

cplx GeodesicArc::point(double t) const {
  const cplx qt = std::tanh(0.5 * t * length) * direction;
  return scale * (I_unit * (1.0 + qt) / (1.0 - qt)) + shift;
}

cplx GeodesicArc::velocity(double t) const {
  const double th = std::tanh(0.5 * t * length);
  const cplx qt = th * direction;
  const cplx dq = 0.5 * length * (1.0 - th * th) * direction;
  return scale * (2.0 * I_unit / ((1.0 - qt) * (1.0 - qt))) * dq;
}

cplx geodesic_point(cplx z, cplx w, double t) { return geodesic_arc(z, w).point(t); }

namespace {

using std::numbers::pi;

// Disk-model side pairing carrying side i of the regular octagon onto side j:
// reflection through the bisector of the two sides followed by reflection in
// side j. Side k has its midpoint on the ray at angle k*pi/4.
Eigen::Matrix2cd disk_pairing(int i, int j) {
  const double cosh_mid = 1.0 / std::tan(pi / 8.0);  // center-to-midpoint distance
  const double m = std::tanh(0.5 * std::acosh(cosh_mid));
  const double center = (1.0 + m * m) / (2.0 * m);  // Euclidean center of side j's circle
  const double phi = (i + j) * pi / 8.0;
  const cplx c = center * std::polar(1.0, j * pi / 4.0);
  const cplx e = std::polar(1.0, -2.0 * phi);
  Eigen::Matrix2cd mat;
  mat << c * e, -1.0, e, -std::conj(c);
  return mat / std::sqrt(mat.determinant());
}

Moebius to_half_plane(const Eigen::Matrix2cd& disk) {
  Eigen::Matrix2cd cay;
  cay << 1.0, -I_unit, 1.0, I_unit;
  Eigen::Matrix2cd h = cay.inverse() * disk * cay;
  h /= std::sqrt(h.determinant());
  Eigen::Index r = 0, c = 0;
  h.cwiseAbs().maxCoeff(&r, &c);
  h *= std::polar(1.0, -std::arg(h(r, c)));
  Eigen::Matrix2d real = h.real();
  real /= std::sqrt(real.determinant());
  if (real.trace() < 0.0) real = -real;
  return Moebius::from_matrix(real);
}

cplx disk_to_half_plane(cplx w) { return I_unit * (1.0 + w) / (1.0 - w); }

}  // namespace

FuchsianGroup octagon_group() {
  FuchsianGroup g;
  g.genus = 2;
  // side labels around the octagon: a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1
  g.generators = {
      to_half_plane(disk_pairing(2, 0)),
      to_half_plane(disk_pairing(1, 3)),
      to_half_plane(disk_pairing(6, 4)),
      to_half_plane(disk_pairing(5, 7)),
  };
  return g;
}

std::vector<cplx> octagon_vertices() {
  const double cosh_vertex = std::pow(1.0 / std::tan(pi / 8.0), 2);
  const double r = std::tanh(0.5 * std::acosh(cosh_vertex));
  std::vector<cplx> v;
  for (int k = 0; k < 8; ++k) v.push_back(disk_to_half_plane(std::polar(r, (k + 0.5) * pi / 4.0)));
  return v;
}

double relation_residual(const FuchsianGroup& g) {
  const auto letters = relation_letters(g.genus);
  require(static_cast<int>(letters.size()) == 2 * g.num_generators(), "relation_residual: generator count must be 2*genus");
  Moebius p = Moebius::identity();
  for (int l : letters) p = p * g.letter(l);
  return projective_distance(p, Moebius::identity());
}

DomainReduction reduce_to_domain(const FuchsianGroup& g, cplx z, cplx center) {
  require(z.imag() > 0.0, "reduce_to_domain: point not in the upper half-plane");
  DomainReduction r{Moebius::identity(), z};
  double dist = hyp_distance(z, center);
  for (int iter = 0; iter < 10000; ++iter) {
    int best = 0;
    double best_dist = dist;
    cplx best_point = r.point;
    for (int i = 1; i <= g.num_generators(); ++i) {
      for (int l : {i, -i}) {
        const cplx w = mobius_apply(g.letter(l), r.point);
        const double d = hyp_distance(w, center);
        if (d < best_dist - 1e-12) {
          best = l;
          best_dist = d;
          best_point = w;
        }
      }
    }
    if (best == 0) return r;
    r.gamma = g.letter(best) * r.gamma;
    r.point = best_point;
    dist = best_dist;
  }
  throw NumericalError("reduce_to_domain: no convergence");
}

std::vector<std::vector<int>> reduced_words(int num_generators, int radius, int cap) {
  require(radius >= 0, "word ball radius must be nonnegative");
  require(radius <= cap, "word ball radius " + std::to_string(radius) + " exceeds cap " + std::to_string(cap));
  std::vector<int> alphabet;
  for (int i = 1; i <= num_generators; ++i) {
    alphabet.push_back(i);
    alphabet.push_back(-i);
  }
  std::vector<std::vector<int>> out{{}};
  std::size_t level_begin = 0;
  for (int len = 1; len <= radius; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t w = level_begin; w < level_end; ++w) {
      for (int l : alphabet) {
        if (!out[w].empty() && out[w].back() == -l) continue;
        std::vector<int> next = out[w];
        next.push_back(l);
        out.push_back(std::move(next));
      }
    }
    level_begin = level_end;
  }
  return out;
}

std::vector<GroupWord> word_ball(const FuchsianGroup& g, int radius, int cap) {
  auto words = reduced_words(g.num_generators(), radius, cap);
  std::vector<GroupWord> ball;
  ball.reserve(words.size());
  for (auto& w : words) ball.push_back(make_word(g, std::move(w)));
  return ball;
}

std::vector<Moebius> ball_elements(const FuchsianGroup& g, int radius, int cap) {
  require(radius >= 0, "word ball radius must be nonnegative");
  require(radius <= cap, "word ball radius " + std::to_string(radius) + " exceeds cap " + std::to_string(cap));
  // breadth-first over reduced words, keeping only matrices and last letters
  std::vector<Moebius> all{Moebius::identity()};
  std::vector<int> last{0};
  std::size_t level_begin = 0;
  for (int len = 1; len <= radius; ++len) {
    const std::size_t level_end = all.size();
    for (std::size_t w = level_begin; w < level_end; ++w) {
      for (int i = 1; i <= g.num_generators(); ++i) {
        for (int l : {i, -i}) {
          if (last[w] == -l) continue;
          all.push_back(all[w] * g.letter(l));
          last.push_back(l);
        }
      }
    }
    level_begin = level_end;
  }
  last.clear();
  last.shrink_to_fit();

  // m and n coincide up to sign iff m^-1 n = ±I; distinct elements stay a
  // systole-sized distance away from ±I regardless of their norms
  auto norm = [](const Moebius& m) { return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)}); };
  for (auto& m : all)
    if (m.c < 0.0 || (m.c == 0.0 && m.d < 0.0)) m = m.negated();
  std::vector<std::uint32_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(i);
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    return all[x].c != all[y].c ? all[x].c < all[y].c : x < y;
  });
  std::vector<char> duplicate(all.size(), 0);
  for (std::size_t p = 0; p < order.size(); ++p) {
    const Moebius& m = all[order[p]];
    const Moebius minv = m.inverse();
    const double window = 1e-6 * std::max(1.0, norm(m));
    for (std::size_t q = p + 1; q < order.size() && all[order[q]].c - m.c <= window; ++q) {
      if (projective_distance(minv * all[order[q]], Moebius::identity()) < 1e-6)
        duplicate[std::max(order[p], order[q])] = 1;
    }
  }
  std::vector<Moebius> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (!duplicate[i]) out.push_back(all[i]);
  return out;
}

HPath translate_path(const FuchsianGroup& g, const GroupWord& gamma, cplx z0, double max_step) {
  require(z0.imag() > 0.0, "translate_path: basepoint not in the upper half-plane");
  require(max_step > 0.0, "translate_path: max_step must be positive");
  HPath path;
  path.vertices.push_back(z0);
  Moebius m = Moebius::identity();
  for (int l : gamma.letters) {
    const cplx from = mobius_apply(m, z0);
    m = m * g.letter(l);
    const cplx to = mobius_apply(m, z0);
    const double d = hyp_distance(from, to);
    const int pieces = std::max(1, static_cast<int>(std::ceil(d / max_step)));
    for (int k = 1; k < pieces; ++k) path.vertices.push_back(geodesic_point(from, to, static_cast<double>(k) / pieces));
    path.vertices.push_back(to);
  }
  return path;
}

nlohmann::json group_to_json(const FuchsianGroup& g) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& m : g.generators) gens.push_back({m.a, m.b, m.c, m.d});
  return {{"genus", g.genus}, {"generators", gens}};
}

FuchsianGroup group_from_json(const nlohmann::json& j) {
  FuchsianGroup g;
  require(j.contains("genus") && j.contains("generators"), "group JSON needs 'genus' and 'generators'");
  g.genus = j.at("genus").get<int>();
  for (const auto& row : j.at("generators")) {
    require(row.size() == 4, "each generator needs four entries [a,b,c,d]");
    g.generators.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>(), row[3].get<double>()});
  }
  require(g.num_generators() == 2 * g.genus, "group JSON: expected 2*genus generators");
  for (const auto& m : g.generators) require(std::abs(m.det() - 1.0) < 1e-12, "group JSON: generator with det != 1");
  return g;
}

}  // namespace hodge::hyp
