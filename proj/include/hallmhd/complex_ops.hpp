// Integer incidence matrices realising the discrete differential operators of
// the lowest-order complex.  Applied to dof vectors they produce the dofs of
// the differential exactly: gradients as tangential edge integrals, curls as
// facet fluxes, divergences as cell integrals.

#pragma once

#include "hallmhd/sparse.hpp"
#include "hallmhd/spaces.hpp"

namespace hallmhd {

// q (vertex values) -> tangential integrals of grad q over edges.  The same
// matrix realises the perp gradient in 2D: the flux of rot90(grad q) across an
// edge equals the tangential integral of grad q along it.
inline SparseMatrix gradient_incidence(const SimplicialMesh& mesh) {
  std::vector<Triplet> trip;
  trip.reserve(2 * mesh.n_edges());
  for (Index e = 0; e < mesh.n_edges(); ++e) {
    trip.push_back({e, mesh.edges[e].b, +1.0});
    trip.push_back({e, mesh.edges[e].a, -1.0});
  }
  return SparseMatrix::from_triplets(mesh.n_edges(), mesh.n_vertices(), std::move(trip));
}

// Tangential edge integrals -> face fluxes of the curl (3D).  Face (a<b<c)
// carries the normal (pb-pa)x(pc-pa), whose boundary cycle is a->b->c.
inline SparseMatrix curl_incidence(const SimplicialMesh& mesh) {
  if (mesh.dim != 3) throw std::invalid_argument("curl_incidence: 3D mesh required");
  std::map<Edge, Index> edge_id;
  for (Index e = 0; e < mesh.n_edges(); ++e) edge_id[mesh.edges[e]] = e;
  std::vector<Triplet> trip;
  trip.reserve(3 * mesh.n_faces());
  for (Index f = 0; f < mesh.n_faces(); ++f) {
    const Face& fc = mesh.faces[f];
    trip.push_back({f, edge_id.at(Edge{fc.a, fc.b}), +1.0});
    trip.push_back({f, edge_id.at(Edge{fc.b, fc.c}), +1.0});
    trip.push_back({f, edge_id.at(Edge{fc.a, fc.c}), -1.0});
  }
  return SparseMatrix::from_triplets(mesh.n_faces(), mesh.n_edges(), std::move(trip));
}

// Facet fluxes -> cell integrals of the divergence (cells x facets).
inline SparseMatrix divergence_incidence(const SimplicialMesh& mesh) {
  std::vector<Triplet> trip;
  if (mesh.dim == 3) {
    for (Index c = 0; c < mesh.n_cells(); ++c)
      for (int k = 0; k < 4; ++k)
        trip.push_back({c, mesh.cell_faces[c][k], double(mesh.cell_face_signs[c][k])});
  } else {
    for (Index c = 0; c < mesh.n_cells(); ++c)
      for (int k = 0; k < 3; ++k)
        trip.push_back({c, mesh.cell_edges[c][k], double(mesh.cell_edge_signs_2d[c][k])});
  }
  return SparseMatrix::from_triplets(mesh.n_cells(), mesh.n_facets(), std::move(trip));
}

// Tangential edge integrals -> cell integrals of the scalar curl (2D).  For a
// positively oriented triangle this is the counterclockwise circulation, which
// coincides with the outward-flux signs of the rotated edge basis.
inline SparseMatrix rot_incidence(const SimplicialMesh& mesh) {
  if (mesh.dim != 2) throw std::invalid_argument("rot_incidence: 2D mesh required");
  return divergence_incidence(mesh);
}

// Differential between adjacent spaces of the complex, dispatched on kinds.
inline SparseMatrix complex_operator(const DofMap& from, const DofMap& to) {
  if (from.mesh != to.mesh) throw std::invalid_argument("complex_operator: different meshes");
  const SimplicialMesh& mesh = *from.mesh;
  const int d = mesh.dim;
  if (from.kind == SpaceKind::p1 &&
      (to.kind == SpaceKind::nedelec0 || (d == 2 && to.kind == SpaceKind::rt0)))
    return gradient_incidence(mesh);  // grad in 3D; grad or perp-grad in 2D
  if (d == 3 && from.kind == SpaceKind::nedelec0 && to.kind == SpaceKind::rt0)
    return curl_incidence(mesh);
  if (from.kind == SpaceKind::rt0 && to.kind == SpaceKind::dg0)
    return divergence_incidence(mesh);
  if (d == 2 && from.kind == SpaceKind::nedelec0 && to.kind == SpaceKind::dg0)
    return rot_incidence(mesh);
  throw std::invalid_argument("complex_operator: spaces are not adjacent in the complex");
}

}  // namespace hallmhd
