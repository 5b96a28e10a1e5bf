// Gauss quadrature on the reference interval/triangle/tetrahedron.
// Simplex rules are conical products of 1D Gauss rules, so exactness to the
// requested polynomial degree holds by construction.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hallmhd {

struct QuadratureRule {
  int dim = 0;
  int degree = 0;                          // all polynomials up to this degree are exact
  std::vector<std::array<double, 4>> points;  // barycentric
  std::vector<double> weights;             // sum to the reference-simplex measure

  std::size_t size() const { return weights.size(); }
};

namespace detail {

// Gauss-Legendre nodes/weights on [0,1], computed by Newton iteration on P_m.
inline void gauss_legendre_01(int m, std::vector<double>& x, std::vector<double>& w) {
  x.resize(m);
  w.resize(m);
  for (int i = 0; i < m; ++i) {
    // Chebyshev initial guess on [-1,1]
    double t = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      if (m == 1) p1 = t;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = m * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= m; ++k) {
      double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = m * (t * p1 - p0) / (t * t - 1.0);
    x[i] = 0.5 * (1.0 + t);
    w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
}

inline int points_for_degree(int degree) { return degree / 2 + 1; }  // 2m-1 >= degree

}  // namespace detail

// 1D rule on [0,1] in interval coordinates: bary = (1-s, s).
inline QuadratureRule interval_rule(int degree) {
  QuadratureRule q;
  q.dim = 1;
  q.degree = degree;
  std::vector<double> x, w;
  detail::gauss_legendre_01(detail::points_for_degree(degree), x, w);
  for (std::size_t i = 0; i < x.size(); ++i) {
    q.points.push_back({1.0 - x[i], x[i], 0.0, 0.0});
    q.weights.push_back(w[i]);
  }
  return q;
}

// Volume rule on the reference triangle (dim 2) or tetrahedron (dim 3).
inline QuadratureRule simplex_rule(int dim, int degree) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("simplex_rule: dim must be 2 or 3");
  QuadratureRule q;
  q.dim = dim;
  q.degree = degree;

  if (dim == 2) {
    // x = a(1-b), y = b with Jacobian (1-b): degree+1 in b
    std::vector<double> xa, wa, xb, wb;
    detail::gauss_legendre_01(detail::points_for_degree(degree), xa, wa);
    detail::gauss_legendre_01(detail::points_for_degree(degree + 1), xb, wb);
    for (std::size_t i = 0; i < xa.size(); ++i) {
      for (std::size_t j = 0; j < xb.size(); ++j) {
        double x = xa[i] * (1.0 - xb[j]);
        double y = xb[j];
        q.points.push_back({1.0 - x - y, x, y, 0.0});
        q.weights.push_back(wa[i] * wb[j] * (1.0 - xb[j]));
      }
    }
  } else {
    // x = a(1-b)(1-c), y = b(1-c), z = c with Jacobian (1-b)(1-c)^2
    std::vector<double> xa, wa, xb, wb, xc, wc;
    detail::gauss_legendre_01(detail::points_for_degree(degree), xa, wa);
    detail::gauss_legendre_01(detail::points_for_degree(degree + 1), xb, wb);
    detail::gauss_legendre_01(detail::points_for_degree(degree + 2), xc, wc);
    for (std::size_t i = 0; i < xa.size(); ++i) {
      for (std::size_t j = 0; j < xb.size(); ++j) {
        for (std::size_t k = 0; k < xc.size(); ++k) {
          double x = xa[i] * (1.0 - xb[j]) * (1.0 - xc[k]);
          double y = xb[j] * (1.0 - xc[k]);
          double z = xc[k];
          q.points.push_back({1.0 - x - y - z, x, y, z});
          q.weights.push_back(wa[i] * wb[j] * wc[k] * (1.0 - xb[j]) *
                              (1.0 - xc[k]) * (1.0 - xc[k]));
        }
      }
    }
  }
  return q;
}

}  // namespace hallmhd
