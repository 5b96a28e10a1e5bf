// Galerkin assembly of the bilinear forms of the scheme: mass and stiffness
// matrices, the pressure-divergence pairing, skew-symmetrised convection with
// a frozen advecting velocity, cross-product couplings with a frozen magnetic
// field, curl pairings, and load vectors.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hallmhd/complex_ops.hpp"
#include "hallmhd/quadrature.hpp"
#include "hallmhd/sparse.hpp"
#include "hallmhd/spaces.hpp"

namespace hallmhd {

// A discrete field sampled at quadrature points during assembly.  Several
// parts are summed, so an in-plane facet field and a z-axis scalar combine
// into one three-component coefficient.
struct FrozenPart {
  const DofMap* dofmap;
  const FieldVector* values;
  Embedding embedding = Embedding::natural;
};
using FrozenField = std::vector<FrozenPart>;

namespace detail {

inline double reference_measure(int dim) { return dim == 2 ? 0.5 : 1.0 / 6.0; }

struct FrozenSampler {
  std::vector<CellBasis> bases;
  std::vector<std::vector<Vec3>> scratch;
  const FrozenField* field;

  void bind(const FrozenField& f, Index cell) {
    field = &f;
    bases.resize(f.size());
    scratch.resize(f.size());
    for (std::size_t p = 0; p < f.size(); ++p) bases[p].bind(*f[p].dofmap, cell);
  }

  Vec3 eval(const std::array<double, 4>& lam) {
    Vec3 v = Vec3::Zero();
    for (std::size_t p = 0; p < field->size(); ++p) {
      bases[p].vector_values(lam, (*field)[p].embedding, scratch[p]);
      const FieldVector& u = *(*field)[p].values;
      for (std::size_t k = 0; k < scratch[p].size(); ++k)
        v += u[bases[p].dofs[k]] * scratch[p][k];
    }
    return v;
  }
};

inline void push_local(std::vector<Triplet>& trip, const Eigen::MatrixXd& local,
                       const std::vector<Index>& rows, const std::vector<Index>& cols) {
  for (Eigen::Index i = 0; i < local.rows(); ++i)
    for (Eigen::Index j = 0; j < local.cols(); ++j)
      if (local(i, j) != 0.0) trip.push_back({rows[i], cols[j], local(i, j)});
}

}  // namespace detail

inline int mass_quadrature_degree(const DofMap& dm) {
  if (dm.kind == SpaceKind::mini) return 2 * (dm.mesh->dim + 1);  // bubble squared
  return 2;
}

inline SparseMatrix mass_matrix(const DofMap& dm) {
  const SimplicialMesh& mesh = *dm.mesh;
  QuadratureRule q = simplex_rule(mesh.dim, mass_quadrature_degree(dm));
  const double ref = detail::reference_measure(mesh.dim);
  const bool vec = dm.is_vector_valued();

  std::vector<Triplet> trip;
  CellBasis basis;
  std::vector<Vec3> vals;
  std::vector<double> svals;
  Eigen::MatrixXd local;
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    basis.bind(dm, c);
    const int nloc = static_cast<int>(basis.dofs.size());
    local.setZero(nloc, nloc);
    const double jac = mesh.geometry[c].volume / ref;
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const double w = q.weights[iq] * jac;
      if (vec) {
        basis.vector_values(q.points[iq], Embedding::natural, vals);
        for (int i = 0; i < nloc; ++i)
          for (int j = 0; j < nloc; ++j) local(i, j) += w * vals[i].dot(vals[j]);
      } else {
        basis.scalar_values(q.points[iq], svals);
        for (int i = 0; i < nloc; ++i)
          for (int j = 0; j < nloc; ++j) local(i, j) += w * svals[i] * svals[j];
      }
    }
    detail::push_local(trip, local, basis.dofs, basis.dofs);
  }
  return SparseMatrix::from_triplets(dm.total, dm.total, std::move(trip));
}

// Gradient pairing <grad u, grad v> for p1, Frobenius pairing of the Jacobians
// for the mini element.
inline SparseMatrix stiffness_matrix(const DofMap& dm) {
  const SimplicialMesh& mesh = *dm.mesh;
  if (dm.kind != SpaceKind::p1 && dm.kind != SpaceKind::mini)
    throw std::invalid_argument("stiffness_matrix: H1-conforming space required");
  QuadratureRule q = simplex_rule(mesh.dim, 2 * mesh.dim);
  const double ref = detail::reference_measure(mesh.dim);

  std::vector<Triplet> trip;
  CellBasis basis;
  std::vector<Vec3> grads;
  std::vector<Mat3> jacs;
  Eigen::MatrixXd local;
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    basis.bind(dm, c);
    const int nloc = static_cast<int>(basis.dofs.size());
    local.setZero(nloc, nloc);
    const double jac = mesh.geometry[c].volume / ref;
    if (dm.kind == SpaceKind::p1) {
      basis.scalar_gradients(grads);
      for (int i = 0; i < nloc; ++i)
        for (int j = 0; j < nloc; ++j)
          local(i, j) = mesh.geometry[c].volume * grads[i].dot(grads[j]);
    } else {
      for (std::size_t iq = 0; iq < q.size(); ++iq) {
        const double w = q.weights[iq] * jac;
        basis.vector_jacobians(q.points[iq], Embedding::natural, jacs);
        for (int i = 0; i < nloc; ++i)
          for (int j = 0; j < nloc; ++j)
            local(i, j) += w * jacs[i].cwiseProduct(jacs[j]).sum();
      }
    }
    detail::push_local(trip, local, basis.dofs, basis.dofs);
  }
  return SparseMatrix::from_triplets(dm.total, dm.total, std::move(trip));
}

// B[q, u] = <q, div u> with pressure test rows and velocity trial columns.
inline SparseMatrix div_pressure_matrix(const DofMap& velocity, const DofMap& pressure) {
  const SimplicialMesh& mesh = *velocity.mesh;
  if (velocity.kind != SpaceKind::mini || pressure.kind != SpaceKind::p1)
    throw std::invalid_argument("div_pressure_matrix: mini/p1 pair required");
  QuadratureRule q = simplex_rule(mesh.dim, 2 * mesh.dim);
  const double ref = detail::reference_measure(mesh.dim);

  std::vector<Triplet> trip;
  CellBasis ubasis, pbasis;
  std::vector<Mat3> jacs;
  std::vector<double> pvals;
  Eigen::MatrixXd local;
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    ubasis.bind(velocity, c);
    pbasis.bind(pressure, c);
    const int nu = static_cast<int>(ubasis.dofs.size());
    const int np = static_cast<int>(pbasis.dofs.size());
    local.setZero(np, nu);
    const double jac = mesh.geometry[c].volume / ref;
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const double w = q.weights[iq] * jac;
      ubasis.vector_jacobians(q.points[iq], Embedding::natural, jacs);
      pbasis.scalar_values(q.points[iq], pvals);
      for (int i = 0; i < np; ++i)
        for (int j = 0; j < nu; ++j) local(i, j) += w * pvals[i] * jacs[j].trace();
    }
    detail::push_local(trip, local, pbasis.dofs, ubasis.dofs);
  }
  return SparseMatrix::from_triplets(pressure.total, velocity.total, std::move(trip));
}

// N(w)[i,j] = 1/2 [ <(w.grad) u_j, v_i> - <(w.grad) v_i, u_j> ], exactly skew
// by construction.  Works for the mini element and for z-embedded scalars.
inline SparseMatrix convection_matrix(const DofMap& dm, Embedding emb, const DofMap& w_dm,
                                      const FieldVector& w) {
  const SimplicialMesh& mesh = *dm.mesh;
  QuadratureRule q = simplex_rule(mesh.dim, 6);
  const double ref = detail::reference_measure(mesh.dim);

  std::vector<Triplet> trip;
  CellBasis basis, wbasis;
  std::vector<Vec3> vals, wvals;
  std::vector<Mat3> jacs;
  Eigen::MatrixXd local;
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    basis.bind(dm, c);
    wbasis.bind(w_dm, c);
    const int nloc = static_cast<int>(basis.dofs.size());
    local.setZero(nloc, nloc);
    const double jac = mesh.geometry[c].volume / ref;
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const double wq = q.weights[iq] * jac;
      wbasis.vector_values(q.points[iq], Embedding::natural, wvals);
      Vec3 wx = Vec3::Zero();
      for (std::size_t k = 0; k < wvals.size(); ++k) wx += w[wbasis.dofs[k]] * wvals[k];
      basis.vector_values(q.points[iq], emb, vals);
      basis.vector_jacobians(q.points[iq], emb, jacs);
      for (int i = 0; i < nloc; ++i) {
        for (int j = 0; j < nloc; ++j) {
          double adv_trial = (jacs[j] * wx).dot(vals[i]);
          double adv_test = (jacs[i] * wx).dot(vals[j]);
          local(i, j) += 0.5 * wq * (adv_trial - adv_test);
        }
      }
    }
    detail::push_local(trip, local, basis.dofs, basis.dofs);
  }
  return SparseMatrix::from_triplets(dm.total, dm.total, std::move(trip));
}

// K[i, j] = <trial_j x B, test_i> with a frozen coefficient field B.  With
// trial == test this is skew, since (a x b) . a = 0.
inline SparseMatrix cross_matrix(const DofMap& trial, Embedding trial_emb, const DofMap& test,
                                 Embedding test_emb, const FrozenField& frozen) {
  const SimplicialMesh& mesh = *trial.mesh;
  QuadratureRule q = simplex_rule(mesh.dim, 6);
  const double ref = detail::reference_measure(mesh.dim);

  std::vector<Triplet> trip;
  CellBasis tb, sb;
  detail::FrozenSampler sampler;
  std::vector<Vec3> tvals, svals;
  Eigen::MatrixXd local;
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    tb.bind(trial, c);
    sb.bind(test, c);
    sampler.bind(frozen, c);
    const int nt = static_cast<int>(tb.dofs.size());
    const int ns = static_cast<int>(sb.dofs.size());
    local.setZero(ns, nt);
    const double jac = mesh.geometry[c].volume / ref;
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const double w = q.weights[iq] * jac;
      Vec3 B = sampler.eval(q.points[iq]);
      tb.vector_values(q.points[iq], trial_emb, tvals);
      sb.vector_values(q.points[iq], test_emb, svals);
      for (int j = 0; j < nt; ++j) {
        Vec3 txB = tvals[j].cross(B);
        for (int i = 0; i < ns; ++i) local(i, j) += w * txB.dot(svals[i]);
      }
    }
    detail::push_local(trip, local, sb.dofs, tb.dofs);
  }
  return SparseMatrix::from_triplets(test.total, trial.total, std::move(trip));
}

// P[i, j] = <curl e_j, f_i> for the edge/facet pair, assembled through the
// incidence identity P = M_facet * C rather than fresh quadrature.
inline SparseMatrix curl_pairing(const DofMap& edge_space, const DofMap& facet_space) {
  SparseMatrix M = mass_matrix(facet_space);
  SparseMatrix C = complex_operator(edge_space, facet_space);
  return M.multiply(C);
}

// R[i, j] = <rot e_j, q_i> pairing the scalar curl of the 2D edge space with
// continuous p1; the integrand is constant-times-linear and integrated exactly.
inline SparseMatrix rot_pairing(const DofMap& edge_space, const DofMap& p1_space) {
  const SimplicialMesh& mesh = *edge_space.mesh;
  if (mesh.dim != 2) throw std::invalid_argument("rot_pairing: 2D mesh required");
  std::vector<Triplet> trip;
  CellBasis eb, pb;
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    eb.bind(edge_space, c);
    pb.bind(p1_space, c);
    const double third = mesh.geometry[c].volume / 3.0;  // integral of each hat
    for (std::size_t j = 0; j < eb.dofs.size(); ++j) {
      double rot = eb.curl[j].z();
      for (std::size_t i = 0; i < pb.dofs.size(); ++i)
        trip.push_back({pb.dofs[i], eb.dofs[j], rot * third});
    }
  }
  return SparseMatrix::from_triplets(p1_space.total, edge_space.total, std::move(trip));
}

inline FieldVector load_vector(const DofMap& dm, Embedding emb, const VectorFn& f,
                               int degree = 6) {
  const SimplicialMesh& mesh = *dm.mesh;
  QuadratureRule q = simplex_rule(mesh.dim, degree);
  const double ref = detail::reference_measure(mesh.dim);
  FieldVector b = FieldVector::Zero(dm.total);
  CellBasis basis;
  std::vector<Vec3> vals;
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    basis.bind(dm, c);
    const double jac = mesh.geometry[c].volume / ref;
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const double w = q.weights[iq] * jac;
      Vec3 fx = f(mesh.barycentric_to_point(c, q.points[iq]));
      basis.vector_values(q.points[iq], emb, vals);
      for (std::size_t k = 0; k < vals.size(); ++k) b[basis.dofs[k]] += w * fx.dot(vals[k]);
    }
  }
  return b;
}

inline FieldVector scalar_load_vector(const DofMap& dm, const ScalarFn& f, int degree = 6) {
  const SimplicialMesh& mesh = *dm.mesh;
  QuadratureRule q = simplex_rule(mesh.dim, degree);
  const double ref = detail::reference_measure(mesh.dim);
  FieldVector b = FieldVector::Zero(dm.total);
  CellBasis basis;
  std::vector<double> vals;
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    basis.bind(dm, c);
    const double jac = mesh.geometry[c].volume / ref;
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const double w = q.weights[iq] * jac;
      double fx = f(mesh.barycentric_to_point(c, q.points[iq]));
      basis.scalar_values(q.points[iq], vals);
      for (std::size_t k = 0; k < vals.size(); ++k) b[basis.dofs[k]] += w * fx * vals[k];
    }
  }
  return b;
}

// <grad(trial), grad(test)>-style load for the Stokes projector right-hand
// side: entries nu * int jac(f) : jac(phi_i) for an analytic Jacobian.
inline FieldVector gradient_load_vector(const DofMap& dm,
                                        const std::function<Mat3(const Vec3&)>& jac_f,
                                        int degree = 6) {
  const SimplicialMesh& mesh = *dm.mesh;
  QuadratureRule q = simplex_rule(mesh.dim, degree);
  const double ref = detail::reference_measure(mesh.dim);
  FieldVector b = FieldVector::Zero(dm.total);
  CellBasis basis;
  std::vector<Mat3> jacs;
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    basis.bind(dm, c);
    const double jac = mesh.geometry[c].volume / ref;
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const double w = q.weights[iq] * jac;
      Mat3 Jf = jac_f(mesh.barycentric_to_point(c, q.points[iq]));
      basis.vector_jacobians(q.points[iq], Embedding::natural, jacs);
      for (std::size_t k = 0; k < jacs.size(); ++k)
        b[basis.dofs[k]] += w * Jf.cwiseProduct(jacs[k]).sum();
    }
  }
  return b;
}

}  // namespace hallmhd
