#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "hallmhd/assembly.hpp"
#include "support/oracles.hpp"

using namespace hallmhd;

namespace {

FieldVector random_field(Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  FieldVector v(n);
  for (Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("dg0 mass is diagonal with cell measures") {
  auto mesh = build_unit_box_mesh(1, 2);
  auto dg = build_space(mesh, SpaceKind::dg0);
  auto M = mass_matrix(dg).to_dense();
  CHECK(M.rows() == 2);
  CHECK(M(0, 0) == Catch::Approx(0.5).epsilon(1e-14));
  CHECK(M(1, 1) == Catch::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(M(0, 1)) == 0.0);
}

TEST_CASE("p1 mass on one triangle matches the analytic matrix") {
  SimplicialMesh mesh;
  mesh.dim = 2;
  mesh.resolution = 1;
  mesh.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  mesh.cells = {{0, 1, 2, -1}};
  detail::build_entities(mesh);
  detail::classify_boundary_impl(mesh);
  detail::build_cell_geometry(mesh);

  auto p1 = build_space(mesh, SpaceKind::p1);
  auto M = mass_matrix(p1).to_dense();
  double area = 0.5;
  Eigen::Matrix3d ref;
  ref << 2, 1, 1, 1, 2, 1, 1, 1, 2;
  ref *= area / 12.0;
  CHECK((M - ref).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("p1 mass row sums equal the domain measure") {
  auto mesh = build_unit_box_mesh(3, 2);
  auto p1 = build_space(mesh, SpaceKind::p1);
  auto M = mass_matrix(p1);
  FieldVector ones = FieldVector::Ones(p1.total);
  CHECK(M.multiply(ones).sum() == Catch::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("mass matrices match the dense oracle") {
  for (int dim : {2, 3}) {
    auto mesh = build_unit_box_mesh(1, dim);
    for (auto kind : {SpaceKind::mini, SpaceKind::nedelec0, SpaceKind::rt0}) {
      auto dm = build_space(mesh, kind);
      auto M = mass_matrix(dm).to_dense();
      auto O = testing::dense_mass(dm, dim == 3 && kind == SpaceKind::mini ? 8 : 8);
      CHECK((M - O).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("stiffness annihilates constants and reproduces linear energies") {
  auto mesh = build_unit_box_mesh(2, 2);
  auto p1 = build_space(mesh, SpaceKind::p1);
  auto K = stiffness_matrix(p1);
  FieldVector ones = FieldVector::Ones(p1.total);
  CHECK(K.multiply(ones).cwiseAbs().maxCoeff() < 1e-13);

  // nodal interpolant of f = x has unit Dirichlet energy on the unit square
  FieldVector fx(p1.total);
  for (Index v = 0; v < mesh.n_vertices(); ++v) fx[v] = mesh.vertices[v].x();
  CHECK(fx.dot(K.multiply(fx)) == Catch::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("interior stiffness row matches a dense quadrature oracle") {
  auto mesh = build_unit_box_mesh(2, 2);
  auto p1 = build_space(mesh, SpaceKind::p1);
  auto K = stiffness_matrix(p1).to_dense();

  // dense assembly from scalar gradients
  Eigen::MatrixXd O = Eigen::MatrixXd::Zero(p1.total, p1.total);
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    const auto& g = mesh.geometry[c];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        O(mesh.cells[c][i], mesh.cells[c][j]) +=
            g.volume * g.grad_lambda[i].dot(g.grad_lambda[j]);
  }
  CHECK((K - O).cwiseAbs().maxCoeff() < 1e-13);

  // apply to the nodal interpolant of x(1-x)y(1-y) and compare on the interior vertex
  FieldVector f(p1.total);
  for (Index v = 0; v < mesh.n_vertices(); ++v) {
    const Vec3& p = mesh.vertices[v];
    f[v] = p.x() * (1 - p.x()) * p.y() * (1 - p.y());
  }
  Eigen::VectorXd lhs = K * f, rhs = O * f;
  for (Index v = 0; v < mesh.n_vertices(); ++v)
    if (!mesh.vertex_on_boundary[v]) CHECK(lhs[v] == Catch::Approx(rhs[v]).margin(1e-14));
}

TEST_CASE("mini stiffness matches oracle") {
  auto mesh = build_unit_box_mesh(1, 2);
  auto mini = build_space(mesh, SpaceKind::mini);
  auto K = stiffness_matrix(mini).to_dense();

  Eigen::MatrixXd O = Eigen::MatrixXd::Zero(mini.total, mini.total);
  auto q = simplex_rule(2, 8);
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    double jac = testing::cell_scale(mesh, c);
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      double w = q.weights[iq] * jac;
      for (Index j = 0; j < mini.total; ++j) {
        FieldVector ej = FieldVector::Zero(mini.total);
        ej[j] = 1.0;
        Mat3 Jj = evaluate_jacobian(mini, ej, c, q.points[iq]);
        if (Jj.norm() == 0.0) continue;
        for (Index i = 0; i < mini.total; ++i) {
          FieldVector ei = FieldVector::Zero(mini.total);
          ei[i] = 1.0;
          Mat3 Ji = evaluate_jacobian(mini, ei, c, q.points[iq]);
          O(i, j) += w * Jj.cwiseProduct(Ji).sum();
        }
      }
    }
  }
  CHECK((K - O).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pressure-divergence pairing") {
  auto mesh = build_unit_box_mesh(2, 2);
  auto mini = build_space(mesh, SpaceKind::mini, Constraint::zero_trace);
  auto p1 = build_space(mesh, SpaceKind::p1);
  auto B = div_pressure_matrix(mini, p1);

  // constant pressure against zero-trace velocities: divergence theorem gives 0
  FieldVector ones = FieldVector::Ones(p1.total);
  FieldVector r = B.transposed().multiply(ones);
  for (Index i = 0; i < mini.n_free(); ++i)
    CHECK(std::abs(r[mini.free_to_full[i]]) < 1e-13);

  // rigid translation has zero divergence
  FieldVector trans = FieldVector::Zero(mini.total);
  for (Index v = 0; v < mesh.n_vertices(); ++v) trans[2 * v] = 1.0;  // x-translation
  CHECK(B.multiply(trans).cwiseAbs().maxCoeff() < 1e-13);

  auto O = testing::dense_div_pressure(mini, p1);
  CHECK((B.to_dense() - O).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("convection is exactly skew and matches the oracle") {
  auto mesh = build_unit_box_mesh(1, 2);
  auto mini = build_space(mesh, SpaceKind::mini);
  FieldVector w = random_field(mini.total, 23);

  auto N = convection_matrix(mini, Embedding::natural, mini, w);
  auto D = N.to_dense();
  CHECK((D + D.transpose()).cwiseAbs().maxCoeff() < 1e-13);

  FieldVector u = random_field(mini.total, 29);
  CHECK(std::abs(u.dot(N.multiply(u))) < 1e-13 * u.squaredNorm());

  FieldVector zero = FieldVector::Zero(mini.total);
  CHECK(convection_matrix(mini, Embedding::natural, mini, zero).max_abs() == 0.0);

  auto O = testing::dense_convection(mini, Embedding::natural, mini, w);
  CHECK((D - O).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("cross matrices: skewness, linearity, oracle") {
  auto mesh = build_unit_box_mesh(1, 3);
  auto ned = build_space(mesh, SpaceKind::nedelec0);
  auto rt = build_space(mesh, SpaceKind::rt0);
  auto mini = build_space(mesh, SpaceKind::mini);

  FieldVector B1 = random_field(rt.total, 31);
  FieldVector B2 = random_field(rt.total, 37);
  FrozenField fB1 = {{&rt, &B1, Embedding::natural}};

  auto K = cross_matrix(ned, Embedding::natural, ned, Embedding::natural, fB1);
  FieldVector v = random_field(ned.total, 41);
  CHECK(std::abs(v.dot(K.multiply(v))) < 1e-13 * v.squaredNorm() * B1.cwiseAbs().maxCoeff());

  // zero frozen field
  FieldVector zero = FieldVector::Zero(rt.total);
  FrozenField fzero = {{&rt, &zero, Embedding::natural}};
  CHECK(cross_matrix(ned, Embedding::natural, ned, Embedding::natural, fzero).max_abs() ==
        0.0);

  // linearity in the frozen field
  FieldVector Bsum = 2.0 * B1 + 3.0 * B2;
  FrozenField fB2 = {{&rt, &B2, Embedding::natural}};
  FrozenField fsum = {{&rt, &Bsum, Embedding::natural}};
  auto K1 = cross_matrix(mini, Embedding::natural, ned, Embedding::natural, fB1);
  auto K2 = cross_matrix(mini, Embedding::natural, ned, Embedding::natural, fB2);
  auto Ksum = cross_matrix(mini, Embedding::natural, ned, Embedding::natural, fsum);
  CHECK((Ksum.to_dense() - 2.0 * K1.to_dense() - 3.0 * K2.to_dense()).cwiseAbs().maxCoeff() <
        1e-12);

  // constant field against the dense oracle on a single-tet mesh
  SimplicialMesh tet;
  tet.dim = 3;
  tet.resolution = 1;
  tet.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
  tet.cells = {{0, 1, 2, 3}};
  detail::build_entities(tet);
  detail::classify_boundary_impl(tet);
  detail::build_cell_geometry(tet);
  auto tned = build_space(tet, SpaceKind::nedelec0);
  auto trt = build_space(tet, SpaceKind::rt0);
  VectorFn zhat = [](const Vec3&) { return Vec3(0, 0, 1); };
  FieldVector Bz = canonical_interpolate(trt, zhat);
  FrozenField fz = {{&trt, &Bz, Embedding::natural}};
  auto Kz = cross_matrix(tned, Embedding::natural, tned, Embedding::natural, fz);
  std::function<Vec3(const Vec3&)> Bfn = zhat;
  auto O = testing::dense_cross_pairing(tned, Embedding::natural, tned, Embedding::natural,
                                        &Bfn);
  CHECK((Kz.to_dense() - O).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("curl pairing equals mass times incidence and fresh quadrature") {
  for (int dim : {3}) {
    auto mesh = build_unit_box_mesh(1, dim);
    auto ned = build_space(mesh, SpaceKind::nedelec0);
    auto rt = build_space(mesh, SpaceKind::rt0);
    auto P = curl_pairing(ned, rt);
    auto O = testing::dense_curl_pairing(ned, rt);
    CHECK((P.to_dense() - O).cwiseAbs().maxCoeff() < 1e-12);

    // gradient fields pair to zero
    auto p1 = build_space(mesh, SpaceKind::p1);
    auto G = gradient_incidence(mesh);
    FieldVector qv = random_field(p1.total, 43);
    FieldVector gradq = G.multiply(qv);
    CHECK(P.multiply(gradq).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("load vectors") {
  auto mesh = build_unit_box_mesh(2, 2);
  auto p1 = build_space(mesh, SpaceKind::p1);
  auto dg = build_space(mesh, SpaceKind::dg0);

  FieldVector zero = scalar_load_vector(p1, [](const Vec3&) { return 0.0; });
  CHECK(zero.norm() == 0.0);

  FieldVector ones = scalar_load_vector(p1, [](const Vec3&) { return 1.0; });
  CHECK(ones.sum() == Catch::Approx(1.0).epsilon(1e-13));

  // cell averages times areas for f = sin(pi x) against dg0
  FieldVector fdg = scalar_load_vector(dg, [](const Vec3& x) { return std::sin(M_PI * x.x()); },
                                       12);
  auto qref = simplex_rule(2, 12);
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    double acc = 0.0;
    double jac = testing::cell_scale(mesh, c);
    for (std::size_t iq = 0; iq < qref.size(); ++iq)
      acc += qref.weights[iq] * jac *
             std::sin(M_PI * mesh.barycentric_to_point(c, qref.points[iq]).x());
    CHECK(fdg[c] == Catch::Approx(acc).margin(1e-12));
  }
}

TEST_CASE("assembly is deterministic") {
  auto mesh = build_unit_box_mesh(2, 2);
  auto mini = build_space(mesh, SpaceKind::mini);
  FieldVector w = random_field(mini.total, 47);
  auto A = convection_matrix(mini, Embedding::natural, mini, w);
  auto B = convection_matrix(mini, Embedding::natural, mini, w);
  REQUIRE(A.nnz() == B.nnz());
  for (std::int64_t k = 0; k < A.nnz(); ++k) {
    CHECK(A.values[k] == B.values[k]);
    CHECK(A.col_idx[k] == B.col_idx[k]);
  }
}
