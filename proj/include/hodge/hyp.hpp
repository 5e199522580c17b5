#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hodge/common.hpp"

namespace hodge::hyp {

/// Element of SL2(R) acting on the upper half-plane by z -> (az+b)/(cz+d).
struct Moebius {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static Moebius identity() { return {}; }
  static Moebius from_matrix(const Eigen::Matrix2d& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }
  Moebius inverse() const { return {d, -b, -c, a}; }
  Moebius negated() const { return {-a, -b, -c, -d}; }
  Eigen::Matrix2d matrix() const;
  CMat complex_matrix() const;
  /// (cz+d)^{-2}, the derivative of the action.
  cplx derivative(cplx z) const;
  /// cz+d, whose powers carry all automorphy factors.
  cplx cocycle(cplx z) const { return c * z + d; }

  friend Moebius operator*(const Moebius& m, const Moebius& n);
};

/// Max-entry distance between m and +n or -n, whichever is smaller.
double projective_distance(const Moebius& m, const Moebius& n);

/// Cocompact surface group, generators ordered (a1, b1, a2, b2, ...).
struct FuchsianGroup {
  int genus = 2;
  std::vector<Moebius> generators;

  int num_generators() const { return static_cast<int>(generators.size()); }
  /// Letter l in {±1..±2g}; negative letters are inverses.
  Moebius letter(int l) const;
};

/// A freely reduced word in the generators with its cached product.
struct GroupWord {
  std::vector<int> letters;
  Moebius matrix;

  std::size_t length() const { return letters.size(); }
  bool is_identity() const { return letters.empty(); }
  std::string name() const;
};

/// Freely reduces `letters` and evaluates the product.
GroupWord make_word(const FuchsianGroup& g, std::vector<int> letters);
GroupWord concat(const FuchsianGroup& g, const GroupWord& u, const GroupWord& v);
GroupWord inverse(const FuchsianGroup& g, const GroupWord& w);
/// a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1 ...
std::vector<int> relation_letters(int genus);
std::string letter_name(int letter);

/// Piecewise-geodesic path through the vertices.
struct HPath {
  std::vector<cplx> vertices;
};

cplx mobius_apply(const Moebius& m, cplx z);
double hyp_distance(cplx z, cplx w);
/// Geodesic from z to w parametrized proportionally to arc length, t in [0, 1].
/// Möbius images of arcs are arcs of the image endpoints, so continuations
/// along them are exactly equivariant.
struct GeodesicArc {
  double shift = 0.0;
  double scale = 1.0;
  cplx direction{1.0};
  double length = 0.0;

  cplx point(double t) const;
  cplx velocity(double t) const;
};
GeodesicArc geodesic_arc(cplx z, cplx w);
/// Point at fraction t along the geodesic from z to w.
cplx geodesic_point(cplx z, cplx w, double t);

/// Genus-2 group whose fundamental domain is the regular octagon with interior
/// angles pi/4 centered at i. Lifts are normalized to positive trace.
FuchsianGroup octagon_group();
/// Vertices of that octagon in the upper half-plane, counterclockwise; side k
/// joins vertex k-1 and vertex k.
std::vector<cplx> octagon_vertices();

double relation_residual(const FuchsianGroup& g);

/// Finds gamma with gamma z in the Dirichlet domain centered at `center`
/// by greedy generator moves that decrease the distance to the center.
struct DomainReduction {
  Moebius gamma;
  cplx point;
};
DomainReduction reduce_to_domain(const FuchsianGroup& g, cplx z, cplx center = {0.0, 1.0});

inline constexpr int kDefaultWordCap = 12;

/// All freely reduced letter sequences of length <= radius over 2·genus
/// generators, ordered by length then lexicographically on (|l|, sign).
std::vector<std::vector<int>> reduced_words(int num_generators, int radius, int cap = kDefaultWordCap);
std::vector<GroupWord> word_ball(const FuchsianGroup& g, int radius, int cap = kDefaultWordCap);
/// Products of the word ball with repeated group elements (up to sign) removed,
/// in word-ball order. Distinct reduced words can represent the same element
/// once the radius reaches half the relator length.
std::vector<Moebius> ball_elements(const FuchsianGroup& g, int radius, int cap = kDefaultWordCap);

HPath translate_path(const FuchsianGroup& g, const GroupWord& gamma, cplx z0, double max_step);

nlohmann::json group_to_json(const FuchsianGroup& g);
FuchsianGroup group_from_json(const nlohmann::json& j);

}  // namespace hodge::hyp
