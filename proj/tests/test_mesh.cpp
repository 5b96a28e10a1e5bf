#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <set>

#include "hallmhd/mesh.hpp"

using namespace hallmhd;

TEST_CASE("unit square entity counts") {
  auto m1 = build_unit_box_mesh(1, 2);
  CHECK(m1.n_vertices() == 4);
  CHECK(m1.n_cells() == 2);
  CHECK(m1.n_edges() == 5);

  auto m2 = build_unit_box_mesh(2, 2);
  CHECK(m2.n_vertices() == 9);
  CHECK(m2.n_cells() == 8);
  CHECK(m2.n_edges() == 16);
  // Euler characteristic of the meshed square
  CHECK(m2.n_vertices() - m2.n_edges() + m2.n_cells() == 1);
}

TEST_CASE("unit cube entity counts") {
  auto m = build_unit_box_mesh(1, 3);
  CHECK(m.n_vertices() == 8);
  CHECK(m.n_edges() == 19);
  CHECK(m.n_faces() == 18);
  CHECK(m.n_cells() == 6);
  CHECK(m.n_vertices() - m.n_edges() + m.n_faces() - m.n_cells() == 1);

  auto m2 = build_unit_box_mesh(2, 3);
  CHECK(m2.n_vertices() == 27);
  CHECK(m2.n_cells() == 48);
  CHECK(m2.n_vertices() - m2.n_edges() + m2.n_faces() - m2.n_cells() == 1);
}

TEST_CASE("invalid resolution") {
  CHECK_THROWS_AS(build_unit_box_mesh(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_unit_box_mesh(2, 4), std::invalid_argument);
}

TEST_CASE("boundary classification") {
  auto m1 = build_unit_box_mesh(1, 2);
  int nb = 0;
  for (Index e = 0; e < m1.n_edges(); ++e) nb += m1.edge_on_boundary[e];
  CHECK(nb == 4);  // the diagonal is interior

  auto m2 = build_unit_box_mesh(2, 2);
  nb = 0;
  for (Index e = 0; e < m2.n_edges(); ++e) nb += m2.edge_on_boundary[e];
  CHECK(nb == 8);

  auto mc = build_unit_box_mesh(1, 3);
  nb = 0;
  for (Index f = 0; f < mc.n_faces(); ++f) nb += mc.face_on_boundary[f];
  CHECK(nb == 12);
  CHECK(mc.n_faces() - nb == 6);
}

TEST_CASE("interior facets bound exactly two cells") {
  for (int dim : {2, 3}) {
    auto m = build_unit_box_mesh(2, dim);
    for (Index f = 0; f < m.n_facets(); ++f) {
      if (m.facet_on_boundary(f))
        CHECK(m.facet_cells[f][1] == -1);
      else
        CHECK(m.facet_cells[f][1] >= 0);
    }
  }
}

TEST_CASE("cell volumes fill the box") {
  for (int dim : {2, 3}) {
    for (int n : {1, 2, 3}) {
      auto m = build_unit_box_mesh(n, dim);
      double total = 0.0;
      for (const auto& g : m.geometry) {
        CHECK(g.volume > 0.0);
        total += g.volume;
      }
      CHECK(std::abs(total - 1.0) < 1e-14);
    }
  }
}

TEST_CASE("edges and faces are canonically ordered") {
  auto m = build_unit_box_mesh(2, 3);
  for (const auto& e : m.edges) CHECK(e.a < e.b);
  for (const auto& f : m.faces) {
    CHECK(f.a < f.b);
    CHECK(f.b < f.c);
  }
  for (Index i = 1; i < m.n_edges(); ++i) CHECK(m.edges[i - 1] < m.edges[i]);
}

TEST_CASE("boundary of boundary vanishes per cell") {
  // signed edge incidence summed over a cell's oriented faces is zero
  auto m = build_unit_box_mesh(1, 3);
  std::map<Edge, Index> edge_id;
  for (Index e = 0; e < m.n_edges(); ++e) edge_id[m.edges[e]] = e;
  for (Index c = 0; c < m.n_cells(); ++c) {
    std::vector<int> acc(m.n_edges(), 0);
    for (int k = 0; k < 4; ++k) {
      Index f = m.cell_faces[c][k];
      int sf = m.cell_face_signs[c][k];
      const Face& face = m.faces[f];
      acc[edge_id.at(Edge{face.a, face.b})] += sf;
      acc[edge_id.at(Edge{face.b, face.c})] += sf;
      acc[edge_id.at(Edge{face.a, face.c})] -= sf;
    }
    for (int v : acc) CHECK(v == 0);
  }
}

TEST_CASE("refinement nests vertex coordinates bitwise") {
  for (int dim : {2, 3}) {
    auto coarse = build_unit_box_mesh(2, dim);
    auto fine = build_unit_box_mesh(4, dim);
    std::set<std::array<double, 3>> fine_pts;
    for (const auto& p : fine.vertices) fine_pts.insert({p.x(), p.y(), p.z()});
    for (const auto& p : coarse.vertices)
      CHECK(fine_pts.count({p.x(), p.y(), p.z()}) == 1);
  }
}

TEST_CASE("structured point location") {
  for (int dim : {2, 3}) {
    auto m = build_unit_box_mesh(3, dim);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      Vec3 x(dist(rng), dist(rng), dim == 3 ? dist(rng) : 0.0);
      auto loc = m.locate(x);
      REQUIRE(loc.cell >= 0);
      Vec3 back = m.barycentric_to_point(loc.cell, loc.bary);
      CHECK((back - x).norm() < 1e-12);
    }
    // corner points stay inside the box
    auto loc = m.locate(Vec3(1.0, 1.0, dim == 3 ? 1.0 : 0.0));
    CHECK(loc.cell >= 0);
  }
}
