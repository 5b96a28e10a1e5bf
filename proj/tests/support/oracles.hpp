// Brute-force dense oracles for the Galerkin forms.  Every entry is built by
// evaluating global unit-coefficient fields through the public evaluators and
// accumulating plain quadrature sums into dense matrices, independently of the
// sparse assembly loops under test.

#pragma once

#include <Eigen/Dense>

#include "hallmhd/assembly.hpp"

namespace hallmhd::testing {

inline double cell_scale(const SimplicialMesh& mesh, Index c) {
  return mesh.geometry[c].volume / (mesh.dim == 2 ? 0.5 : 1.0 / 6.0);
}

// M[i,j] = int (trial_j . test_i), optionally weighted by a frozen cross field:
// K[i,j] = int (trial_j x B) . test_i.
inline Eigen::MatrixXd dense_cross_pairing(const DofMap& trial, Embedding trial_emb,
                                           const DofMap& test, Embedding test_emb,
                                           const std::function<Vec3(const Vec3&)>* Bfield,
                                           int degree = 8) {
  const SimplicialMesh& mesh = *trial.mesh;
  auto q = simplex_rule(mesh.dim, degree);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(test.total, trial.total);
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    double jac = cell_scale(mesh, c);
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      double w = q.weights[iq] * jac;
      Vec3 x = mesh.barycentric_to_point(c, q.points[iq]);
      for (Index j = 0; j < trial.total; ++j) {
        FieldVector ej = FieldVector::Zero(trial.total);
        ej[j] = 1.0;
        Vec3 tj = evaluate_vector(trial, ej, c, q.points[iq], trial_emb);
        if (tj.norm() == 0.0) continue;
        Vec3 lhs = Bfield ? Vec3(tj.cross((*Bfield)(x))) : tj;
        for (Index i = 0; i < test.total; ++i) {
          FieldVector ei = FieldVector::Zero(test.total);
          ei[i] = 1.0;
          Vec3 si = evaluate_vector(test, ei, c, q.points[iq], test_emb);
          M(i, j) += w * lhs.dot(si);
        }
      }
    }
  }
  return M;
}

inline Eigen::MatrixXd dense_mass(const DofMap& dm, int degree = 8) {
  Embedding emb = dm.is_vector_valued() ? Embedding::natural : Embedding::z_axis;
  return dense_cross_pairing(dm, emb, dm, emb, nullptr, degree);
}

// N[i,j] = 1/2 [ int (w.grad trial_j).test_i - int (w.grad test_i).trial_j ]
inline Eigen::MatrixXd dense_convection(const DofMap& dm, Embedding emb, const DofMap& wdm,
                                        const FieldVector& wfield, int degree = 8) {
  const SimplicialMesh& mesh = *dm.mesh;
  auto q = simplex_rule(mesh.dim, degree);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dm.total, dm.total);
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    double jac = cell_scale(mesh, c);
    auto loc = [&](Index k) {
      FieldVector e = FieldVector::Zero(dm.total);
      e[k] = 1.0;
      return e;
    };
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      double w = q.weights[iq] * jac;
      Vec3 wx = evaluate_vector(wdm, wfield, c, q.points[iq]);
      for (Index j = 0; j < dm.total; ++j) {
        FieldVector ej = loc(j);
        Vec3 vj = evaluate_vector(dm, ej, c, q.points[iq], emb);
        Mat3 Jj = evaluate_jacobian(dm, ej, c, q.points[iq], emb);
        if (vj.norm() == 0.0 && Jj.norm() == 0.0) continue;
        for (Index i = 0; i < dm.total; ++i) {
          FieldVector ei = loc(i);
          Vec3 vi = evaluate_vector(dm, ei, c, q.points[iq], emb);
          Mat3 Ji = evaluate_jacobian(dm, ei, c, q.points[iq], emb);
          M(i, j) += 0.5 * w * ((Jj * wx).dot(vi) - (Ji * wx).dot(vj));
        }
      }
    }
  }
  return M;
}

// B[q,u] = int q div(u)
inline Eigen::MatrixXd dense_div_pressure(const DofMap& vel, const DofMap& pres,
                                          int degree = 8) {
  const SimplicialMesh& mesh = *vel.mesh;
  auto q = simplex_rule(mesh.dim, degree);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(pres.total, vel.total);
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    double jac = cell_scale(mesh, c);
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      double w = q.weights[iq] * jac;
      for (Index j = 0; j < vel.total; ++j) {
        FieldVector ej = FieldVector::Zero(vel.total);
        ej[j] = 1.0;
        double divj = evaluate_jacobian(vel, ej, c, q.points[iq]).trace();
        if (divj == 0.0) continue;
        for (Index i = 0; i < pres.total; ++i) {
          FieldVector ei = FieldVector::Zero(pres.total);
          ei[i] = 1.0;
          M(i, j) += w * divj * evaluate_scalar(pres, ei, c, q.points[iq]);
        }
      }
    }
  }
  return M;
}

// P[i,j] = int curl(edge_j) . facet_i by quadrature
inline Eigen::MatrixXd dense_curl_pairing(const DofMap& edge, const DofMap& facet,
                                          int degree = 4) {
  const SimplicialMesh& mesh = *edge.mesh;
  auto q = simplex_rule(mesh.dim, degree);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(facet.total, edge.total);
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    double jac = cell_scale(mesh, c);
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      double w = q.weights[iq] * jac;
      for (Index j = 0; j < edge.total; ++j) {
        FieldVector ej = FieldVector::Zero(edge.total);
        ej[j] = 1.0;
        Vec3 curlj = evaluate_curl(edge, ej, c);
        if (curlj.norm() == 0.0) continue;
        for (Index i = 0; i < facet.total; ++i) {
          FieldVector ei = FieldVector::Zero(facet.total);
          ei[i] = 1.0;
          Vec3 fi = evaluate_vector(facet, ei, c, q.points[iq]);
          M(i, j) += w * curlj.dot(fi);
        }
      }
    }
  }
  return M;
}

}  // namespace hallmhd::testing
