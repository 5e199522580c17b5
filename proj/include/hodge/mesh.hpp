#pragma once

#include <array>
#include <vector>

#include "hodge/hyp.hpp"

namespace hodge::mesh {

/// Edge from vertex src to the translate gamma·dst of vertex dst.
struct MeshEdge {
  int src = 0;
  int dst = 0;
  hyp::GroupWord gamma;
  double weight = 0.0;
  bool boundary = false;  // crosses a side of the fundamental domain
};

/// Oriented triangle of the lifted triangulation. Corner k sits at
/// lifts[k]·vertices[corners[k]] = points[k]; edge k joins corner k to corner
/// k+1 and runs along mesh edge edges[k] (signs[k] = -1 when reversed).
struct MeshFace {
  std::array<int, 3> corners{};
  std::array<hyp::GroupWord, 3> lifts;
  std::array<cplx, 3> points{};
  std::array<int, 3> edges{};
  std::array<int, 3> signs{};
  double hyperbolic_area = 0.0;
  double area = 0.0;  // normalized so that all faces sum to 2π
};

struct Incidence {
  int edge = 0;
  bool outgoing = true;
};

struct EquivariantMesh {
  int genus = 2;
  std::vector<cplx> vertices;
  std::vector<MeshEdge> edges;
  std::vector<MeshFace> faces;
  int basepoint = 0;
  double cycle_residual = 0.0;

  int euler_characteristic() const;
  /// Edges at each vertex; a self-loop appears once in each direction.
  std::vector<std::vector<Incidence>> incidence() const;
};

inline constexpr int kDefaultRefinementCap = 6;

/// Fan of 8 triangles from the octagon center, then `refinement` rounds of
/// hyperbolic midpoint quadrisection, glued along the side pairings of G.
EquivariantMesh build_equivariant_mesh(const hyp::FuchsianGroup& G, int refinement,
                                       int cap = kDefaultRefinementCap);

/// Single-chart mesh with trivial decorations (for local tests).
EquivariantMesh planar_mesh(const std::vector<cplx>& points, const std::vector<std::array<int, 3>>& triangles);

}  // namespace hodge::mesh
