#include "hodge/mesh.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <numbers>

namespace hodge::mesh {

int EquivariantMesh::euler_characteristic() const {
  return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) + static_cast<int>(faces.size());
}

std::vector<std::vector<Incidence>> EquivariantMesh::incidence() const {
  std::vector<std::vector<Incidence>> out(vertices.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out[static_cast<std::size_t>(edges[e].src)].push_back({static_cast<int>(e), true});
    out[static_cast<std::size_t>(edges[e].dst)].push_back({static_cast<int>(e), false});
  }
  return out;
}

namespace {

// Triangulation of one chart before gluing.
struct RawMesh {
  std::vector<cplx> points;
  std::vector<unsigned> sides;  // bit s set when the point lies on side s
  std::vector<std::array<int, 3>> triangles;
};

void quadrisect(RawMesh& raw) {
  std::map<std::pair<int, int>, int> midpoints;
  auto midpoint = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    if (auto it = midpoints.find(key); it != midpoints.end()) return it->second;
    const int m = static_cast<int>(raw.points.size());
    raw.points.push_back(hyp::geodesic_point(raw.points[static_cast<std::size_t>(a)],
                                             raw.points[static_cast<std::size_t>(b)], 0.5));
    raw.sides.push_back(raw.sides[static_cast<std::size_t>(a)] & raw.sides[static_cast<std::size_t>(b)]);
    midpoints.emplace(key, m);
    return m;
  };
  std::vector<std::array<int, 3>> next;
  for (const auto& [a, b, c] : raw.triangles) {
    const int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
    next.push_back({a, ab, ca});
    next.push_back({ab, b, bc});
    next.push_back({ca, bc, c});
    next.push_back({ab, bc, ca});
  }
  raw.triangles = std::move(next);
}

double corner_angle(cplx at, cplx p, cplx q) {
  const cplx tp = hyp::geodesic_arc(at, p).velocity(0.0);
  const cplx tq = hyp::geodesic_arc(at, q).velocity(0.0);
  return std::abs(std::arg(tq / tp));
}

// Glues the raw chart: `relations` lists (l, p, q) with q = letter(l)·p.
EquivariantMesh glue(const hyp::FuchsianGroup& G, const RawMesh& raw,
                     const std::vector<std::tuple<int, int, int>>& relations) {
  const std::size_t np = raw.points.size();
  std::vector<std::vector<std::pair<int, int>>> adj(np);  // (letter, neighbor): neighbor = letter·self
  for (const auto& [l, p, q] : relations) {
    adj[static_cast<std::size_t>(p)].emplace_back(l, q);
    adj[static_cast<std::size_t>(q)].emplace_back(-l, p);
  }
  EquivariantMesh mesh;
  mesh.genus = G.genus;
  std::vector<int> cls(np, -1);
  std::vector<hyp::GroupWord> lift(np);  // raw point = lift · vertex
  for (std::size_t start = 0; start < np; ++start) {
    if (cls[start] >= 0) continue;
    const int v = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(raw.points[start]);
    cls[start] = v;
    lift[start] = hyp::make_word(G, {});
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const std::size_t p = queue.front();
      queue.pop_front();
      for (const auto& [l, q] : adj[p]) {
        const auto uq = static_cast<std::size_t>(q);
        std::vector<int> letters{l};
        letters.insert(letters.end(), lift[p].letters.begin(), lift[p].letters.end());
        hyp::GroupWord w = hyp::make_word(G, std::move(letters));
        if (cls[uq] < 0) {
          cls[uq] = v;
          lift[uq] = std::move(w);
          queue.push_back(uq);
        } else {
          mesh.cycle_residual = std::max(mesh.cycle_residual, hyp::projective_distance(lift[uq].matrix, w.matrix));
        }
      }
    }
  }
  for (std::size_t p = 0; p < np; ++p) {
    const cplx moved = hyp::mobius_apply(lift[p].matrix, mesh.vertices[static_cast<std::size_t>(cls[p])]);
    mesh.cycle_residual = std::max(mesh.cycle_residual, std::abs(moved - raw.points[p]));
  }

  std::map<std::pair<int, int>, std::vector<int>> by_ends;
  auto find_or_add = [&](int a, int b) -> std::pair<int, int> {
    const int A = cls[static_cast<std::size_t>(a)], B = cls[static_cast<std::size_t>(b)];
    const auto& la = lift[static_cast<std::size_t>(a)];
    const auto& lb = lift[static_cast<std::size_t>(b)];
    const hyp::GroupWord gamma = hyp::concat(G, hyp::inverse(G, la), lb);
    for (int e : by_ends[{A, B}])
      if (hyp::projective_distance(mesh.edges[static_cast<std::size_t>(e)].gamma.matrix, gamma.matrix) < 1e-8)
        return {e, 1};
    const hyp::Moebius ginv = gamma.matrix.inverse();
    for (int e : by_ends[{B, A}])
      if (hyp::projective_distance(mesh.edges[static_cast<std::size_t>(e)].gamma.matrix, ginv) < 1e-8)
        return {e, -1};
    const int e = static_cast<int>(mesh.edges.size());
    const unsigned shared = raw.sides[static_cast<std::size_t>(a)] & raw.sides[static_cast<std::size_t>(b)];
    mesh.edges.push_back({A, B, gamma, 0.0, shared != 0});
    by_ends[{A, B}].push_back(e);
    return {e, 1};
  };

  double total = 0.0;
  for (const auto& tri : raw.triangles) {
    MeshFace f;
    std::array<double, 3> angle{};
    for (int k = 0; k < 3; ++k) {
      const auto p = static_cast<std::size_t>(tri[static_cast<std::size_t>(k)]);
      f.corners[static_cast<std::size_t>(k)] = cls[p];
      f.lifts[static_cast<std::size_t>(k)] = lift[p];
      f.points[static_cast<std::size_t>(k)] = raw.points[p];
    }
    for (int k = 0; k < 3; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      const auto [e, s] = find_or_add(tri[uk], tri[(uk + 1) % 3]);
      f.edges[uk] = e;
      f.signs[uk] = s;
      angle[uk] = corner_angle(f.points[uk], f.points[(uk + 1) % 3], f.points[(uk + 2) % 3]);
    }
    f.hyperbolic_area = std::numbers::pi - angle[0] - angle[1] - angle[2];
    require(f.hyperbolic_area > 0.0, "mesh: degenerate triangle");
    total += f.hyperbolic_area;
    // edge k is opposite corner k+2
    for (std::size_t k = 0; k < 3; ++k)
      mesh.edges[static_cast<std::size_t>(f.edges[k])].weight += 0.5 / std::tan(angle[(k + 2) % 3]);
    mesh.faces.push_back(std::move(f));
  }
  for (auto& f : mesh.faces) f.area = f.hyperbolic_area * 2.0 * std::numbers::pi / total;
  for (auto& e : mesh.edges) e.weight = std::max(e.weight, 1e-6);
  return mesh;
}

}  // namespace

EquivariantMesh build_equivariant_mesh(const hyp::FuchsianGroup& G, int refinement, int cap) {
  require(refinement >= 0, "build_equivariant_mesh: refinement must be nonnegative");
  require(refinement <= cap, "build_equivariant_mesh: refinement " + std::to_string(refinement) + " exceeds cap " +
                                 std::to_string(cap));
  require(G.genus == 2 && G.num_generators() == 4, "build_equivariant_mesh: needs the genus-2 octagon group");
  const auto corners = hyp::octagon_vertices();
  RawMesh raw;
  raw.points.push_back(I_unit);
  raw.sides.push_back(0u);
  for (int k = 0; k < 8; ++k) {
    raw.points.push_back(corners[static_cast<std::size_t>(k)]);
    raw.sides.push_back((1u << k) | (1u << ((k + 1) % 8)));  // corner k ends sides k and k+1
  }
  for (int k = 0; k < 8; ++k) raw.triangles.push_back({0, 1 + (k + 7) % 8, 1 + k});
  for (int r = 0; r < refinement; ++r) quadrisect(raw);

  // side s joins corners s-1 and s; find the generator letter carrying side s onto another side
  auto corner_index = [&](cplx z) {
    for (int k = 0; k < 8; ++k)
      if (hyp::hyp_distance(z, corners[static_cast<std::size_t>(k)]) < 1e-8) return k;
    return -1;
  };
  std::vector<std::tuple<int, int, int>> relations;
  for (int s = 0; s < 8; ++s) {
    int letter = 0, target = -1;
    for (int i = 1; i <= 4 && !letter; ++i) {
      for (int l : {i, -i}) {
        const auto m = G.letter(l);
        const int c0 = corner_index(hyp::mobius_apply(m, corners[static_cast<std::size_t>((s + 7) % 8)]));
        const int c1 = corner_index(hyp::mobius_apply(m, corners[static_cast<std::size_t>(s)]));
        if (c0 < 0 || c1 < 0) continue;
        for (int t = 0; t < 8; ++t)
          if (std::minmax(c0, c1) == std::minmax((t + 7) % 8, t) && t != s) {
            letter = l;
            target = t;
          }
        if (letter) break;
      }
    }
    require(letter != 0, "build_equivariant_mesh: no generator pairs side " + std::to_string(s));
    if (letter < 0) continue;  // each pairing is recorded once, from its positive letter
    const auto m = G.letter(letter);
    for (std::size_t p = 0; p < raw.points.size(); ++p) {
      if (!(raw.sides[p] >> s & 1u)) continue;
      const cplx img = hyp::mobius_apply(m, raw.points[p]);
      int match = -1;
      for (std::size_t q = 0; q < raw.points.size(); ++q)
        if ((raw.sides[q] >> target & 1u) && hyp::hyp_distance(img, raw.points[q]) < 1e-8) match = static_cast<int>(q);
      if (match < 0) throw NumericalError("build_equivariant_mesh: side points do not match under the pairing");
      relations.emplace_back(letter, static_cast<int>(p), match);
    }
  }
  EquivariantMesh mesh = glue(G, raw, relations);
  mesh.basepoint = 0;
  return mesh;
}

EquivariantMesh planar_mesh(const std::vector<cplx>& points, const std::vector<std::array<int, 3>>& triangles) {
  for (cplx p : points) require(p.imag() > 0.0, "planar_mesh: points must lie in the upper half-plane");
  RawMesh raw{points, std::vector<unsigned>(points.size(), 0u), triangles};
  hyp::FuchsianGroup trivial;
  trivial.genus = 0;
  return glue(trivial, raw, {});
}

}  // namespace hodge::mesh
