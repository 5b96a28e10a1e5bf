// Lowest-order finite element spaces over a simplicial mesh: continuous P1,
// the MINI velocity element (P1 + cell bubble per component), edge elements
// with tangential-integral dofs, face/edge elements with normal-flux dofs,
// and piecewise constants.  Dof maps, per-cell bases, field evaluation, and
// canonical interpolation.

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "hallmhd/mesh.hpp"
#include "hallmhd/quadrature.hpp"

namespace hallmhd {

using FieldVector = Eigen::VectorXd;

enum class SpaceKind { p1, mini, nedelec0, rt0, dg0 };

// zero_trace means the natural homogeneous trace of the space:
// standard (p1/mini), tangential (nedelec0), normal (rt0).
enum class Constraint { none, zero_trace, zero_mean };

using ScalarFn = std::function<double(const Vec3&)>;
using VectorFn = std::function<Vec3(const Vec3&)>;

class DofMap {
 public:
  const SimplicialMesh* mesh = nullptr;
  SpaceKind kind{};
  Constraint constraint = Constraint::none;
  Index total = 0;
  std::vector<char> constrained;   // per dof
  std::vector<Index> full_to_free; // -1 for constrained
  std::vector<Index> free_to_full;

  Index n_free() const { return static_cast<Index>(free_to_full.size()); }
  bool has_mean_constraint() const { return constraint == Constraint::zero_mean; }
  int dim() const { return mesh->dim; }

  bool is_vector_valued() const { return kind != SpaceKind::p1 && kind != SpaceKind::dg0; }

  int dofs_per_cell() const {
    switch (kind) {
      case SpaceKind::p1: return mesh->dim + 1;
      case SpaceKind::mini: return mesh->dim * (mesh->dim + 2);  // vertices + bubble
      case SpaceKind::nedelec0: return mesh->edges_per_cell();
      case SpaceKind::rt0: return mesh->dim + 1;
      case SpaceKind::dg0: return 1;
    }
    return 0;
  }

  void cell_dofs(Index cell, std::vector<Index>& out) const {
    out.clear();
    const auto& c = mesh->cells[cell];
    const int d = mesh->dim;
    switch (kind) {
      case SpaceKind::p1:
        for (int i = 0; i <= d; ++i) out.push_back(c[i]);
        break;
      case SpaceKind::mini: {
        for (int i = 0; i <= d; ++i)
          for (int comp = 0; comp < d; ++comp) out.push_back(c[i] * d + comp);
        Index base = mesh->n_vertices() * d;
        for (int comp = 0; comp < d; ++comp) out.push_back(base + cell * d + comp);
        break;
      }
      case SpaceKind::nedelec0:
        for (int k = 0; k < mesh->edges_per_cell(); ++k) out.push_back(mesh->cell_edges[cell][k]);
        break;
      case SpaceKind::rt0:
        if (d == 2)
          for (int k = 0; k < 3; ++k) out.push_back(mesh->cell_edges[cell][k]);
        else
          for (int k = 0; k < 4; ++k) out.push_back(mesh->cell_faces[cell][k]);
        break;
      case SpaceKind::dg0:
        out.push_back(cell);
        break;
    }
  }
};

inline DofMap build_space(const SimplicialMesh& mesh, SpaceKind kind,
                          Constraint constraint = Constraint::none) {
  DofMap dm;
  dm.mesh = &mesh;
  dm.kind = kind;
  dm.constraint = constraint;
  const int d = mesh.dim;

  switch (kind) {
    case SpaceKind::p1: dm.total = mesh.n_vertices(); break;
    case SpaceKind::mini: dm.total = d * (mesh.n_vertices() + mesh.n_cells()); break;
    case SpaceKind::nedelec0: dm.total = mesh.n_edges(); break;
    case SpaceKind::rt0: dm.total = d == 2 ? mesh.n_edges() : mesh.n_faces(); break;
    case SpaceKind::dg0: dm.total = mesh.n_cells(); break;
  }
  if (constraint == Constraint::zero_mean && kind != SpaceKind::p1)
    throw std::invalid_argument("build_space: zero_mean is only defined for p1");

  dm.constrained.assign(dm.total, 0);
  if (constraint == Constraint::zero_trace) {
    switch (kind) {
      case SpaceKind::p1:
        for (Index v = 0; v < mesh.n_vertices(); ++v)
          if (mesh.vertex_on_boundary[v]) dm.constrained[v] = 1;
        break;
      case SpaceKind::mini:
        for (Index v = 0; v < mesh.n_vertices(); ++v)
          if (mesh.vertex_on_boundary[v])
            for (int comp = 0; comp < d; ++comp) dm.constrained[v * d + comp] = 1;
        break;
      case SpaceKind::nedelec0:
        for (Index e = 0; e < mesh.n_edges(); ++e)
          if (mesh.edge_on_boundary[e]) dm.constrained[e] = 1;
        break;
      case SpaceKind::rt0:
        for (Index f = 0; f < dm.total; ++f)
          if (mesh.facet_on_boundary(f)) dm.constrained[f] = 1;
        break;
      case SpaceKind::dg0:
        throw std::invalid_argument("build_space: dg0 carries no trace");
    }
  }

  dm.full_to_free.assign(dm.total, -1);
  for (Index i = 0; i < dm.total; ++i) {
    if (!dm.constrained[i]) {
      dm.full_to_free[i] = static_cast<Index>(dm.free_to_full.size());
      dm.free_to_full.push_back(i);
    }
  }
  return dm;
}

// ---------------------------------------------------------------------------
// Per-cell basis evaluation.  Vector values are embedded in R^3 (z = 0 for
// in-plane 2D fields).  Scalar spaces may be evaluated as s * zhat so that the
// planar cross-product conventions reduce to the 3D cross product.

enum class Embedding { natural, z_axis };

struct CellBasis {
  const DofMap* dofmap = nullptr;
  Index cell = -1;
  std::vector<Index> dofs;

  // constants over the cell
  std::vector<double> div;    // rt0
  std::vector<Vec3> curl;     // nedelec0 (2D: (0,0,rot))

  void bind(const DofMap& dm, Index c) {
    dofmap = &dm;
    cell = c;
    dm.cell_dofs(c, dofs);
    const SimplicialMesh& mesh = *dm.mesh;
    const CellGeometry& g = mesh.geometry[c];
    const int d = mesh.dim;
    if (dm.kind == SpaceKind::nedelec0) {
      curl.resize(dofs.size());
      for (int k = 0; k < mesh.edges_per_cell(); ++k) {
        auto [la, lb] = mesh.cell_edge_locals[cell][k];
        curl[k] = 2.0 * g.grad_lambda[la].cross(g.grad_lambda[lb]);
      }
    } else if (dm.kind == SpaceKind::rt0) {
      div.resize(dofs.size());
      if (d == 2) {
        for (int k = 0; k < 3; ++k) {
          auto [la, lb] = mesh.cell_edge_locals[cell][k];
          Vec3 c2 = g.grad_lambda[la].cross(g.grad_lambda[lb]);
          div[k] = 2.0 * c2.z();
        }
      } else {
        for (int k = 0; k < 4; ++k) {
          auto loc = mesh.cell_face_locals[cell][k];
          div[k] = 6.0 * g.grad_lambda[loc[0]].dot(
                             g.grad_lambda[loc[1]].cross(g.grad_lambda[loc[2]]));
        }
      }
    }
  }

  // Scalar basis values (p1, dg0).
  void scalar_values(const std::array<double, 4>& lam, std::vector<double>& out) const {
    const int d = dofmap->mesh->dim;
    out.resize(dofs.size());
    if (dofmap->kind == SpaceKind::p1) {
      for (int i = 0; i <= d; ++i) out[i] = lam[i];
    } else {
      out[0] = 1.0;
    }
  }

  void scalar_gradients(std::vector<Vec3>& out) const {  // p1 only; constant
    const SimplicialMesh& mesh = *dofmap->mesh;
    const CellGeometry& g = mesh.geometry[cell];
    out.resize(dofs.size());
    for (int i = 0; i <= mesh.dim; ++i) out[i] = g.grad_lambda[i];
  }

  // Embedded vector values for any kind (scalar kinds require Embedding::z_axis).
  void vector_values(const std::array<double, 4>& lam, Embedding emb,
                     std::vector<Vec3>& out) const {
    const SimplicialMesh& mesh = *dofmap->mesh;
    const CellGeometry& g = mesh.geometry[cell];
    const int d = mesh.dim;
    out.assign(dofs.size(), Vec3::Zero());
    switch (dofmap->kind) {
      case SpaceKind::p1:
      case SpaceKind::dg0: {
        if (emb != Embedding::z_axis)
          throw std::invalid_argument("vector_values: scalar space needs z_axis embedding");
        std::vector<double> s;
        scalar_values(lam, s);
        for (std::size_t k = 0; k < s.size(); ++k) out[k] = Vec3(0, 0, s[k]);
        break;
      }
      case SpaceKind::mini: {
        int p = 0;
        for (int i = 0; i <= d; ++i)
          for (int comp = 0; comp < d; ++comp) out[p++][comp] = lam[i];
        double bubble = 1.0;
        for (int i = 0; i <= d; ++i) bubble *= lam[i];
        for (int comp = 0; comp < d; ++comp) out[p++][comp] = bubble;
        break;
      }
      case SpaceKind::nedelec0: {
        for (int k = 0; k < mesh.edges_per_cell(); ++k) {
          auto [la, lb] = mesh.cell_edge_locals[cell][k];
          out[k] = lam[la] * g.grad_lambda[lb] - lam[lb] * g.grad_lambda[la];
        }
        break;
      }
      case SpaceKind::rt0: {
        if (d == 2) {
          // 90 deg rotation of the edge-element basis: (x,y) -> (y,-x)
          for (int k = 0; k < 3; ++k) {
            auto [la, lb] = mesh.cell_edge_locals[cell][k];
            Vec3 w = lam[la] * g.grad_lambda[lb] - lam[lb] * g.grad_lambda[la];
            out[k] = Vec3(w.y(), -w.x(), 0.0);
          }
        } else {
          for (int k = 0; k < 4; ++k) {
            auto loc = mesh.cell_face_locals[cell][k];
            const Vec3& ga = g.grad_lambda[loc[0]];
            const Vec3& gb = g.grad_lambda[loc[1]];
            const Vec3& gc = g.grad_lambda[loc[2]];
            out[k] = 2.0 * (lam[loc[0]] * gb.cross(gc) + lam[loc[1]] * gc.cross(ga) +
                            lam[loc[2]] * ga.cross(gb));
          }
        }
        break;
      }
    }
  }

  // Embedded Jacobians for H1 kinds (p1/z_axis, mini).
  void vector_jacobians(const std::array<double, 4>& lam, Embedding emb,
                        std::vector<Mat3>& out) const {
    const SimplicialMesh& mesh = *dofmap->mesh;
    const CellGeometry& g = mesh.geometry[cell];
    const int d = mesh.dim;
    out.assign(dofs.size(), Mat3::Zero());
    if (dofmap->kind == SpaceKind::p1) {
      if (emb != Embedding::z_axis)
        throw std::invalid_argument("vector_jacobians: scalar space needs z_axis embedding");
      for (int i = 0; i <= d; ++i) out[i].row(2) = g.grad_lambda[i].transpose();
      return;
    }
    if (dofmap->kind != SpaceKind::mini)
      throw std::invalid_argument("vector_jacobians: space is not H1-conforming");
    int p = 0;
    for (int i = 0; i <= d; ++i)
      for (int comp = 0; comp < d; ++comp) out[p++].row(comp) = g.grad_lambda[i].transpose();
    for (int comp = 0; comp < d; ++comp) {
      Vec3 gb = Vec3::Zero();
      for (int i = 0; i <= d; ++i) {
        double prod = 1.0;
        for (int j = 0; j <= d; ++j)
          if (j != i) prod *= lam[j];
        gb += prod * g.grad_lambda[i];
      }
      out[p++].row(comp) = gb.transpose();
    }
  }
};

// ---------------------------------------------------------------------------
// Field evaluation at a point of a cell.

inline double evaluate_scalar(const DofMap& dm, const FieldVector& u, Index cell,
                              const std::array<double, 4>& lam) {
  if (cell < 0 || cell >= dm.mesh->n_cells())
    throw std::out_of_range("evaluate_scalar: cell index out of range");
  CellBasis basis;
  basis.bind(dm, cell);
  std::vector<double> s;
  basis.scalar_values(lam, s);
  double val = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) val += u[basis.dofs[k]] * s[k];
  return val;
}

inline Vec3 evaluate_vector(const DofMap& dm, const FieldVector& u, Index cell,
                            const std::array<double, 4>& lam,
                            Embedding emb = Embedding::natural) {
  if (cell < 0 || cell >= dm.mesh->n_cells())
    throw std::out_of_range("evaluate_vector: cell index out of range");
  CellBasis basis;
  basis.bind(dm, cell);
  std::vector<Vec3> vals;
  basis.vector_values(lam, emb, vals);
  Vec3 v = Vec3::Zero();
  for (std::size_t k = 0; k < vals.size(); ++k) v += u[basis.dofs[k]] * vals[k];
  return v;
}

inline Vec3 evaluate_scalar_gradient(const DofMap& dm, const FieldVector& u, Index cell) {
  CellBasis basis;
  basis.bind(dm, cell);
  std::vector<Vec3> grads;
  basis.scalar_gradients(grads);
  Vec3 v = Vec3::Zero();
  for (std::size_t k = 0; k < grads.size(); ++k) v += u[basis.dofs[k]] * grads[k];
  return v;
}

// Constant per cell; (0, 0, rot) for the 2D edge space.
inline Vec3 evaluate_curl(const DofMap& dm, const FieldVector& u, Index cell) {
  if (dm.kind != SpaceKind::nedelec0)
    throw std::invalid_argument("evaluate_curl: edge-element field required");
  CellBasis basis;
  basis.bind(dm, cell);
  Vec3 v = Vec3::Zero();
  for (std::size_t k = 0; k < basis.curl.size(); ++k) v += u[basis.dofs[k]] * basis.curl[k];
  return v;
}

// Constant per cell.
inline double evaluate_divergence(const DofMap& dm, const FieldVector& u, Index cell) {
  if (dm.kind != SpaceKind::rt0)
    throw std::invalid_argument("evaluate_divergence: facet-element field required");
  CellBasis basis;
  basis.bind(dm, cell);
  double v = 0.0;
  for (std::size_t k = 0; k < basis.div.size(); ++k) v += u[basis.dofs[k]] * basis.div[k];
  return v;
}

inline Mat3 evaluate_jacobian(const DofMap& dm, const FieldVector& u, Index cell,
                              const std::array<double, 4>& lam,
                              Embedding emb = Embedding::natural) {
  CellBasis basis;
  basis.bind(dm, cell);
  std::vector<Mat3> jacs;
  basis.vector_jacobians(lam, emb, jacs);
  Mat3 J = Mat3::Zero();
  for (std::size_t k = 0; k < jacs.size(); ++k) J += u[basis.dofs[k]] * jacs[k];
  return J;
}

// ---------------------------------------------------------------------------
// Canonical interpolation: vertex values (p1), tangential edge integrals
// (nedelec0), normal facet fluxes (rt0), cell averages (dg0).  For mini the
// vertex part is interpolated and bubble coefficients are zero.
//
// Dofs on constrained entities are zeroed when they respect the trace
// condition; violations are kept and reported.

struct TraceViolation {
  Index dof;
  double value;
};

inline FieldVector canonical_interpolate(const DofMap& dm, const VectorFn& f,
                                         std::vector<TraceViolation>* violations = nullptr,
                                         double tol = 1e-10) {
  const SimplicialMesh& mesh = *dm.mesh;
  const int d = mesh.dim;
  FieldVector u = FieldVector::Zero(dm.total);

  auto edge_tangential = [&](Index e) {
    const Vec3& pa = mesh.vertices[mesh.edges[e].a];
    const Vec3& pb = mesh.vertices[mesh.edges[e].b];
    QuadratureRule q = interval_rule(9);
    double acc = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      Vec3 x = q.points[i][0] * pa + q.points[i][1] * pb;
      acc += q.weights[i] * f(x).dot(pb - pa);  // tangent * length folded together
    }
    return acc;
  };

  switch (dm.kind) {
    case SpaceKind::p1:
      throw std::invalid_argument("canonical_interpolate: scalar field required for p1");
    case SpaceKind::mini:
      for (Index v = 0; v < mesh.n_vertices(); ++v) {
        Vec3 val = f(mesh.vertices[v]);
        for (int comp = 0; comp < d; ++comp) u[v * d + comp] = val[comp];
      }
      break;
    case SpaceKind::nedelec0:
      for (Index e = 0; e < mesh.n_edges(); ++e) u[e] = edge_tangential(e);
      break;
    case SpaceKind::rt0: {
      if (d == 2) {
        QuadratureRule q = interval_rule(9);
        for (Index e = 0; e < mesh.n_edges(); ++e) {
          const Vec3& pa = mesh.vertices[mesh.edges[e].a];
          const Vec3& pb = mesh.vertices[mesh.edges[e].b];
          Vec3 t = pb - pa;
          Vec3 n(t.y(), -t.x(), 0.0);  // length-weighted normal
          double acc = 0.0;
          for (std::size_t i = 0; i < q.size(); ++i) {
            Vec3 x = q.points[i][0] * pa + q.points[i][1] * pb;
            acc += q.weights[i] * f(x).dot(n);
          }
          u[e] = acc;
        }
      } else {
        QuadratureRule q = simplex_rule(2, 6);
        for (Index fc = 0; fc < mesh.n_faces(); ++fc) {
          const Face& face = mesh.faces[fc];
          const Vec3& pa = mesh.vertices[face.a];
          const Vec3& pb = mesh.vertices[face.b];
          const Vec3& pc = mesh.vertices[face.c];
          Vec3 n = (pb - pa).cross(pc - pa);  // 2*area-weighted canonical normal
          double acc = 0.0;
          for (std::size_t i = 0; i < q.size(); ++i) {
            Vec3 x = q.points[i][0] * pa + q.points[i][1] * pb + q.points[i][2] * pc;
            acc += q.weights[i] * f(x).dot(n);
          }
          u[fc] = acc;  // quadrature weights sum to 1/2, matching the normal scaling
        }
      }
      break;
    }
    case SpaceKind::dg0:
      throw std::invalid_argument("canonical_interpolate: scalar field required for dg0");
  }

  // trace handling
  double scale = std::max(1.0, u.cwiseAbs().maxCoeff());
  for (Index i = 0; i < dm.total; ++i) {
    if (!dm.constrained[i]) continue;
    if (std::abs(u[i]) <= tol * scale) {
      u[i] = 0.0;
    } else if (violations) {
      violations->push_back({i, u[i]});
    }
  }
  return u;
}

inline FieldVector canonical_interpolate_scalar(const DofMap& dm, const ScalarFn& f) {
  const SimplicialMesh& mesh = *dm.mesh;
  FieldVector u = FieldVector::Zero(dm.total);
  if (dm.kind == SpaceKind::p1) {
    for (Index v = 0; v < mesh.n_vertices(); ++v) u[v] = f(mesh.vertices[v]);
    for (Index v = 0; v < dm.total; ++v)
      if (dm.constrained[v]) u[v] = 0.0;
  } else if (dm.kind == SpaceKind::dg0) {
    QuadratureRule q = simplex_rule(mesh.dim, 6);
    double ref = mesh.dim == 2 ? 0.5 : 1.0 / 6.0;
    for (Index c = 0; c < mesh.n_cells(); ++c) {
      double acc = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i)
        acc += q.weights[i] * f(mesh.barycentric_to_point(c, q.points[i]));
      u[c] = acc / ref;  // cell average
    }
  } else {
    throw std::invalid_argument("canonical_interpolate_scalar: vector space");
  }
  return u;
}

}  // namespace hallmhd
