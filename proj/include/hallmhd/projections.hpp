// L2 projections onto the (constrained) finite element spaces and the weak
// curl lifting a facet field into the edge-element space through a mass solve.

#pragma once

#include "hallmhd/assembly.hpp"
#include "hallmhd/solver.hpp"

namespace hallmhd {

namespace detail {

inline FieldVector mass_solve(const DofMap& dm, const SparseMatrix& mass_full,
                              const FieldVector& load_full, const SolverConfig& cfg) {
  SparseMatrix M = mass_full.restricted(dm.full_to_free, dm.n_free(), dm.full_to_free,
                                        dm.n_free());
  Eigen::VectorXd b(dm.n_free());
  for (Index i = 0; i < dm.n_free(); ++i) b[i] = load_full[dm.free_to_full[i]];
  SolveResult sol = solve(M, b, cfg);
  FieldVector u = FieldVector::Zero(dm.total);
  for (Index i = 0; i < dm.n_free(); ++i) u[dm.free_to_full[i]] = sol.x[i];
  return u;
}

}  // namespace detail

inline FieldVector l2_project(const DofMap& dm, const VectorFn& f,
                              const SolverConfig& cfg = {}) {
  if (!dm.is_vector_valued())
    throw std::invalid_argument("l2_project: scalar space, use l2_project_scalar");
  return detail::mass_solve(dm, mass_matrix(dm), load_vector(dm, Embedding::natural, f), cfg);
}

inline FieldVector l2_project_scalar(const DofMap& dm, const ScalarFn& f,
                                     const SolverConfig& cfg = {}) {
  return detail::mass_solve(dm, mass_matrix(dm), scalar_load_vector(dm, f), cfg);
}

// J in the zero-trace edge space with <J, w> = <B, curl w> for all test w.
inline FieldVector discrete_curl(const DofMap& facet_space, const FieldVector& B,
                                 const DofMap& edge_space, const SolverConfig& cfg = {}) {
  SparseMatrix P = curl_pairing(edge_space, facet_space);  // <curl w_j, f_i>
  FieldVector load = P.transposed().multiply(B);
  return detail::mass_solve(edge_space, mass_matrix(edge_space), load, cfg);
}

}  // namespace hallmhd
