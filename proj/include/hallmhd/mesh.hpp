// Oriented simplicial meshes of the unit square/cube: entity tables
// (vertices, edges, faces, cells), incidence with orientation signs,
// boundary classification, and structured point location.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace hallmhd {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

using Index = std::int64_t;

struct Edge {
  Index a, b;  // a < b
  bool operator<(const Edge& o) const { return a < o.a || (a == o.a && b < o.b); }
  bool operator==(const Edge& o) const { return a == o.a && b == o.b; }
};

struct Face {
  Index a, b, c;  // a < b < c
  bool operator<(const Face& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
  }
  bool operator==(const Face& o) const { return a == o.a && b == o.b && c == o.c; }
};

// Per-cell affine geometry: barycentric gradients and measure.
struct CellGeometry {
  std::array<Vec3, 4> grad_lambda{};  // constant over the cell; entry dim..3 unused
  Vec3 centroid = Vec3::Zero();
  double volume = 0.0;  // unsigned measure (area in 2D)
};

struct PointLocation {
  Index cell = -1;
  std::array<double, 4> bary{};
};

class SimplicialMesh {
 public:
  int dim = 0;                       // 2 or 3
  int resolution = 0;                // cells per box edge (structured generator)
  std::vector<Vec3> vertices;        // z = 0 in 2D
  std::vector<std::array<Index, 4>> cells;  // 4th entry = -1 in 2D; positive orientation
  std::vector<Edge> edges;           // lexicographically sorted
  std::vector<Face> faces;           // 3D only, lexicographically sorted

  // cell -> local entities; edges in fixed local-pair order, faces omit one local vertex.
  std::vector<std::array<Index, 6>> cell_edges;
  std::vector<std::array<std::array<int, 2>, 6>> cell_edge_locals;  // (la,lb), gv[la]<gv[lb]
  std::vector<std::array<Index, 4>> cell_faces;  // 3D
  std::vector<std::array<std::array<int, 3>, 4>> cell_face_locals;
  std::vector<std::array<int, 4>> cell_face_signs;  // +1 if canonical normal points outward
  std::vector<std::array<int, 3>> cell_edge_signs_2d;  // +1 if lo->hi agrees with ccw boundary

  std::vector<char> vertex_on_boundary;
  std::vector<char> edge_on_boundary;
  std::vector<char> face_on_boundary;  // 3D
  std::vector<std::array<Index, 2>> facet_cells;  // codim-1 entity -> incident cells (-1 pad)

  std::vector<CellGeometry> geometry;

  Index n_vertices() const { return static_cast<Index>(vertices.size()); }
  Index n_cells() const { return static_cast<Index>(cells.size()); }
  Index n_edges() const { return static_cast<Index>(edges.size()); }
  Index n_faces() const { return static_cast<Index>(faces.size()); }
  int verts_per_cell() const { return dim + 1; }
  int edges_per_cell() const { return dim == 2 ? 3 : 6; }

  // codim-1 entities: edges in 2D, faces in 3D
  Index n_facets() const { return dim == 2 ? n_edges() : n_faces(); }
  bool facet_on_boundary(Index f) const {
    return dim == 2 ? edge_on_boundary[f] != 0 : face_on_boundary[f] != 0;
  }

  double mesh_size() const { return 1.0 / static_cast<double>(resolution); }

  Vec3 barycentric_to_point(Index cell, const std::array<double, 4>& lam) const {
    Vec3 x = Vec3::Zero();
    for (int i = 0; i <= dim; ++i) x += lam[i] * vertices[cells[cell][i]];
    return x;
  }

  std::array<double, 4> barycentric_at(Index cell, const Vec3& x) const {
    const CellGeometry& g = geometry[cell];
    std::array<double, 4> lam{};
    const double base = 1.0 / (dim + 1);
    for (int i = 0; i <= dim; ++i) lam[i] = base + g.grad_lambda[i].dot(x - g.centroid);
    return lam;
  }

  // O(1) lookup in the structured grid; clamps to the box.
  PointLocation locate(const Vec3& x) const;
};

namespace detail {

inline double signed_volume(const SimplicialMesh& m, const std::array<Index, 4>& c, int dim) {
  if (dim == 2) {
    Vec3 u = m.vertices[c[1]] - m.vertices[c[0]];
    Vec3 v = m.vertices[c[2]] - m.vertices[c[0]];
    return 0.5 * (u.x() * v.y() - u.y() * v.x());
  }
  Vec3 u = m.vertices[c[1]] - m.vertices[c[0]];
  Vec3 v = m.vertices[c[2]] - m.vertices[c[0]];
  Vec3 w = m.vertices[c[3]] - m.vertices[c[0]];
  return u.dot(v.cross(w)) / 6.0;
}

inline void build_cell_geometry(SimplicialMesh& m) {
  m.geometry.resize(m.cells.size());
  for (Index k = 0; k < m.n_cells(); ++k) {
    CellGeometry& g = m.geometry[k];
    const auto& c = m.cells[k];
    g.centroid = Vec3::Zero();
    for (int i = 0; i <= m.dim; ++i) g.centroid += m.vertices[c[i]];
    g.centroid /= (m.dim + 1);
    double sv = signed_volume(m, c, m.dim);
    if (sv <= 0.0) throw std::runtime_error("mesh: cell with nonpositive orientation");
    g.volume = sv;
    if (m.dim == 2) {
      // grad(lambda_i) is the inward-scaled normal of the opposite edge
      for (int i = 0; i < 3; ++i) {
        const Vec3& pj = m.vertices[c[(i + 1) % 3]];
        const Vec3& pk = m.vertices[c[(i + 2) % 3]];
        Vec3 e = pk - pj;
        Vec3 n(-e.y(), e.x(), 0.0);  // 90 deg ccw rotation of opposite edge
        g.grad_lambda[i] = n / (2.0 * sv);
      }
    } else {
      Eigen::Matrix3d A;
      for (int i = 0; i < 3; ++i) A.col(i) = m.vertices[c[i + 1]] - m.vertices[c[0]];
      Eigen::Matrix3d Ainv = A.inverse();
      for (int i = 1; i <= 3; ++i) g.grad_lambda[i] = Ainv.row(i - 1).transpose();
      g.grad_lambda[0] = -(g.grad_lambda[1] + g.grad_lambda[2] + g.grad_lambda[3]);
    }
  }
}

inline void build_entities(SimplicialMesh& m) {
  const int nev = m.edges_per_cell();
  static const std::array<std::array<int, 2>, 6> pairs3 = {
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  static const std::array<std::array<int, 2>, 3> pairs2 = {{{0, 1}, {0, 2}, {1, 2}}};

  std::map<Edge, Index> edge_id;
  for (const auto& c : m.cells) {
    for (int k = 0; k < nev; ++k) {
      int la = m.dim == 2 ? pairs2[k][0] : pairs3[k][0];
      int lb = m.dim == 2 ? pairs2[k][1] : pairs3[k][1];
      Index a = c[la], b = c[lb];
      if (a > b) std::swap(a, b);
      edge_id.emplace(Edge{a, b}, 0);
    }
  }
  m.edges.reserve(edge_id.size());
  for (auto& [e, id] : edge_id) {
    id = static_cast<Index>(m.edges.size());
    m.edges.push_back(e);
  }

  m.cell_edges.resize(m.cells.size());
  m.cell_edge_locals.resize(m.cells.size());
  for (Index kc = 0; kc < m.n_cells(); ++kc) {
    const auto& c = m.cells[kc];
    for (int k = 0; k < nev; ++k) {
      int la = m.dim == 2 ? pairs2[k][0] : pairs3[k][0];
      int lb = m.dim == 2 ? pairs2[k][1] : pairs3[k][1];
      if (c[la] > c[lb]) std::swap(la, lb);
      m.cell_edges[kc][k] = edge_id.at(Edge{c[la], c[lb]});
      m.cell_edge_locals[kc][k] = {la, lb};
    }
  }

  if (m.dim == 3) {
    std::map<Face, Index> face_id;
    for (const auto& c : m.cells) {
      for (int omit = 0; omit < 4; ++omit) {
        std::array<Index, 3> f{};
        int p = 0;
        for (int i = 0; i < 4; ++i)
          if (i != omit) f[p++] = c[i];
        std::sort(f.begin(), f.end());
        face_id.emplace(Face{f[0], f[1], f[2]}, 0);
      }
    }
    m.faces.reserve(face_id.size());
    for (auto& [f, id] : face_id) {
      id = static_cast<Index>(m.faces.size());
      m.faces.push_back(f);
    }

    m.cell_faces.resize(m.cells.size());
    m.cell_face_locals.resize(m.cells.size());
    m.cell_face_signs.resize(m.cells.size());
    for (Index kc = 0; kc < m.n_cells(); ++kc) {
      const auto& c = m.cells[kc];
      for (int omit = 0; omit < 4; ++omit) {
        std::array<int, 3> loc{};
        int p = 0;
        for (int i = 0; i < 4; ++i)
          if (i != omit) loc[p++] = i;
        std::sort(loc.begin(), loc.end(), [&](int x, int y) { return c[x] < c[y]; });
        Face f{c[loc[0]], c[loc[1]], c[loc[2]]};
        m.cell_faces[kc][omit] = face_id.at(f);
        m.cell_face_locals[kc][omit] = loc;
        // canonical normal of (a,b,c): (pb-pa) x (pc-pa); outward iff it points away
        // from the omitted vertex
        Vec3 n = (m.vertices[f.b] - m.vertices[f.a]).cross(m.vertices[f.c] - m.vertices[f.a]);
        double side = n.dot(m.vertices[c[omit]] - m.vertices[f.a]);
        m.cell_face_signs[kc][omit] = side < 0.0 ? +1 : -1;
      }
    }
  } else {
    m.cell_edge_signs_2d.resize(m.cells.size());
    for (Index kc = 0; kc < m.n_cells(); ++kc) {
      const auto& c = m.cells[kc];
      for (int k = 0; k < 3; ++k) {
        auto [la, lb] = m.cell_edge_locals[kc][k];
        // ccw boundary cycle of a positively oriented triangle is v0->v1->v2->v0
        int diff = (lb - la + 3) % 3;
        m.cell_edge_signs_2d[kc][k] = diff == 1 ? +1 : -1;
      }
    }
  }
}

inline void classify_boundary_impl(SimplicialMesh& m) {
  Index nf = m.n_facets();
  m.facet_cells.assign(nf, {-1, -1});
  for (Index kc = 0; kc < m.n_cells(); ++kc) {
    for (int k = 0; k <= m.dim; ++k) {
      Index f = m.dim == 2 ? m.cell_edges[kc][k] : m.cell_faces[kc][k];
      auto& fc = m.facet_cells[f];
      if (fc[0] < 0)
        fc[0] = kc;
      else if (fc[1] < 0)
        fc[1] = kc;
      else
        throw std::runtime_error("mesh: facet incident to more than two cells");
    }
  }

  m.vertex_on_boundary.assign(m.vertices.size(), 0);
  if (m.dim == 2) {
    m.edge_on_boundary.assign(m.edges.size(), 0);
    for (Index e = 0; e < m.n_edges(); ++e) {
      if (m.facet_cells[e][1] < 0) {
        m.edge_on_boundary[e] = 1;
        m.vertex_on_boundary[m.edges[e].a] = 1;
        m.vertex_on_boundary[m.edges[e].b] = 1;
      }
    }
  } else {
    m.face_on_boundary.assign(m.faces.size(), 0);
    m.edge_on_boundary.assign(m.edges.size(), 0);
    std::map<Edge, Index> edge_id;
    for (Index e = 0; e < m.n_edges(); ++e) edge_id[m.edges[e]] = e;
    for (Index f = 0; f < m.n_faces(); ++f) {
      if (m.facet_cells[f][1] < 0) {
        m.face_on_boundary[f] = 1;
        const Face& fc = m.faces[f];
        for (Index v : {fc.a, fc.b, fc.c}) m.vertex_on_boundary[v] = 1;
        for (auto [a, b] : {std::pair{fc.a, fc.b}, {fc.a, fc.c}, {fc.b, fc.c}})
          m.edge_on_boundary[edge_id.at(Edge{a, b})] = 1;
      }
    }
  }
}

}  // namespace detail

// Re-derives the boundary tables (they are also built during mesh construction).
inline void classify_boundary(SimplicialMesh& mesh) { detail::classify_boundary_impl(mesh); }

// Structured triangulation of [0,1]^dim with n cells per edge: diagonal split of
// each square in 2D, six-tetrahedra subdivision of each cube in 3D.
inline SimplicialMesh build_unit_box_mesh(int n, int dim) {
  if (n < 1) throw std::invalid_argument("build_unit_box_mesh: resolution must be >= 1");
  if (dim != 2 && dim != 3) throw std::invalid_argument("build_unit_box_mesh: dim must be 2 or 3");

  SimplicialMesh m;
  m.dim = dim;
  m.resolution = n;

  if (dim == 2) {
    auto vid = [&](int i, int j) { return static_cast<Index>(j * (n + 1) + i); };
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i)
        m.vertices.emplace_back(double(i) / n, double(j) / n, 0.0);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        Index v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
        m.cells.push_back({v00, v10, v11, -1});
        m.cells.push_back({v00, v11, v01, -1});
      }
    }
  } else {
    auto vid = [&](int i, int j, int k) {
      return static_cast<Index>((k * (n + 1) + j) * (n + 1) + i);
    };
    for (int k = 0; k <= n; ++k)
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
          m.vertices.emplace_back(double(i) / n, double(j) / n, double(k) / n);
    // Kuhn subdivision: one tetrahedron per permutation of the axis increments,
    // all sharing the main diagonal of the cube.
    static const std::array<std::array<int, 3>, 6> perms = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
          std::array<int, 3> base = {i, j, k};
          for (const auto& p : perms) {
            std::array<std::array<int, 3>, 4> corner;
            corner[0] = base;
            for (int s = 0; s < 3; ++s) {
              corner[s + 1] = corner[s];
              corner[s + 1][p[s]] += 1;
            }
            std::array<Index, 4> cell{};
            for (int s = 0; s < 4; ++s) cell[s] = vid(corner[s][0], corner[s][1], corner[s][2]);
            m.cells.push_back(cell);
          }
        }
      }
    }
    // fix orientation (odd permutations give negatively oriented tetrahedra)
    for (auto& c : m.cells) {
      Vec3 u = m.vertices[c[1]] - m.vertices[c[0]];
      Vec3 v = m.vertices[c[2]] - m.vertices[c[0]];
      Vec3 w = m.vertices[c[3]] - m.vertices[c[0]];
      if (u.dot(v.cross(w)) < 0.0) std::swap(c[1], c[2]);
    }
  }

  detail::build_entities(m);
  detail::classify_boundary_impl(m);
  detail::build_cell_geometry(m);
  return m;
}

inline PointLocation SimplicialMesh::locate(const Vec3& x) const {
  const int n = resolution;
  std::array<int, 3> box{0, 0, 0};
  for (int d = 0; d < dim; ++d) {
    int i = static_cast<int>(std::floor(x[d] * n));
    box[d] = std::clamp(i, 0, n - 1);
  }
  const int cells_per_box = dim == 2 ? 2 : 6;
  Index box_index = dim == 2 ? Index(box[1]) * n + box[0]
                             : (Index(box[2]) * n + box[1]) * n + box[0];
  Index first = box_index * cells_per_box;

  PointLocation best;
  double best_min = -1e300;
  for (int k = 0; k < cells_per_box; ++k) {
    Index c = first + k;
    auto lam = barycentric_at(c, x);
    double mn = lam[0];
    for (int i = 1; i <= dim; ++i) mn = std::min(mn, lam[i]);
    if (mn > best_min) {
      best_min = mn;
      best.cell = c;
      best.bary = lam;
    }
  }
  // clamp roundoff just outside the chosen cell
  double sum = 0.0;
  for (int i = 0; i <= dim; ++i) {
    best.bary[i] = std::max(best.bary[i], 0.0);
    sum += best.bary[i];
  }
  for (int i = 0; i <= dim; ++i) best.bary[i] /= sum;
  return best;
}

}  // namespace hallmhd
