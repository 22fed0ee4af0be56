#pragma once

// Uniform quadratic discretizations of beam (1D) and plate (2D) mid-domains,
// horizon truncation against domain bounds, and element-in-horizon queries.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fracmech/fractional.hpp"

namespace fracmech {

// Three-noded line elements on [0, L], uniform spacing.
struct Mesh1D {
  double length = 0.0;
  int n_elem = 0;
  std::vector<double> nodes;                // 2*n_elem + 1, ascending
  std::vector<std::array<int, 3>> elems;    // (left, mid, right) node ids

  int n_nodes() const { return static_cast<int>(nodes.size()); }
  double elem_lo(int e) const { return nodes[elems[e][0]]; }
  double elem_hi(int e) const { return nodes[elems[e][2]]; }
  double elem_width() const { return length / n_elem; }

  int elem_of(double x) const {
    int e = static_cast<int>(std::floor(x / elem_width()));
    return std::clamp(e, 0, n_elem - 1);
  }
};

inline Mesh1D build_uniform_1d(double L, int n_elem) {
  if (!(L > 0.0)) throw std::invalid_argument("build_uniform_1d: length must be positive");
  if (n_elem < 2) throw std::invalid_argument("build_uniform_1d: need at least 2 elements");
  Mesh1D m;
  m.length = L;
  m.n_elem = n_elem;
  const int nn = 2 * n_elem + 1;
  m.nodes.resize(nn);
  for (int i = 0; i < nn; ++i) m.nodes[i] = L * i / (nn - 1);
  m.nodes.back() = L;
  m.elems.resize(n_elem);
  for (int e = 0; e < n_elem; ++e) m.elems[e] = {2 * e, 2 * e + 1, 2 * e + 2};
  return m;
}

// Nine-noded quadrilaterals on [0, L] x [0, B], tensor product of 1D
// quadratic grids. Node id = iy * (2*nx + 1) + ix.
struct Mesh2D {
  double length = 0.0, width = 0.0;
  int nx = 0, ny = 0;
  std::vector<double> xs, ys;               // node coordinate lines
  std::vector<std::array<int, 9>> elems;    // tensor-ordered (iy-major) node ids
  std::vector<int> edge_x0, edge_x1, edge_y0, edge_y1;  // per-side boundary nodes

  int nnx() const { return 2 * nx + 1; }
  int nny() const { return 2 * ny + 1; }
  int n_nodes() const { return nnx() * nny(); }
  int node_id(int ix, int iy) const { return iy * nnx() + ix; }
  int elem_id(int ex, int ey) const { return ey * nx + ex; }
  double elem_x_lo(int ex) const { return xs[2 * ex]; }
  double elem_x_hi(int ex) const { return xs[2 * ex + 2]; }
  double elem_y_lo(int ey) const { return ys[2 * ey]; }
  double elem_y_hi(int ey) const { return ys[2 * ey + 2]; }
};

inline Mesh2D build_uniform_2d(double L, double B, int nx, int ny) {
  if (!(L > 0.0) || !(B > 0.0)) throw std::invalid_argument("build_uniform_2d: bad dimensions");
  if (nx < 1 || ny < 1) throw std::invalid_argument("build_uniform_2d: need at least 1x1 elements");
  Mesh2D m;
  m.length = L;
  m.width = B;
  m.nx = nx;
  m.ny = ny;
  m.xs.resize(2 * nx + 1);
  m.ys.resize(2 * ny + 1);
  for (int i = 0; i <= 2 * nx; ++i) m.xs[i] = L * i / (2.0 * nx);
  for (int j = 0; j <= 2 * ny; ++j) m.ys[j] = B * j / (2.0 * ny);
  m.xs.back() = L;
  m.ys.back() = B;

  m.elems.resize(static_cast<size_t>(nx) * ny);
  for (int ey = 0; ey < ny; ++ey) {
    for (int ex = 0; ex < nx; ++ex) {
      std::array<int, 9> conn;
      int k = 0;
      for (int jy = 0; jy < 3; ++jy)
        for (int jx = 0; jx < 3; ++jx) conn[k++] = m.node_id(2 * ex + jx, 2 * ey + jy);
      m.elems[m.elem_id(ex, ey)] = conn;
    }
  }
  for (int iy = 0; iy < m.nny(); ++iy) {
    m.edge_x0.push_back(m.node_id(0, iy));
    m.edge_x1.push_back(m.node_id(2 * nx, iy));
  }
  for (int ix = 0; ix < m.nnx(); ++ix) {
    m.edge_y0.push_back(m.node_id(ix, 0));
    m.edge_y1.push_back(m.node_id(ix, 2 * ny));
  }
  return m;
}

// Truncation rule: the horizon never reaches past the domain bounds.
inline Horizon horizon_at(double x, double l_f, double lower, double upper) {
  if (x < lower || x > upper) throw std::out_of_range("horizon_at: point outside domain");
  return Horizon(std::min(l_f, x - lower), std::min(l_f, upper - x));
}

// Contiguous range [first, last] of uniform 1D elements with non-empty
// intersection with (x - h.l_a, x + h.l_b). n_elem elements of width w on
// [lower, lower + n_elem*w].
struct ElemRange {
  int first = 0;
  int last = -1;
  int count() const { return last - first + 1; }
  bool empty() const { return last < first; }
};

inline ElemRange elements_in_horizon(double x, const Horizon& h, double lower, double w,
                                     int n_elem) {
  const double lo = x - h.l_a, hi = x + h.l_b;
  ElemRange r;
  r.first = std::clamp(static_cast<int>(std::floor((lo - lower) / w)), 0, n_elem - 1);
  r.last = std::clamp(static_cast<int>(std::ceil((hi - lower) / w)) - 1, 0, n_elem - 1);
  // Open-interval intersection: drop boundary-touching elements.
  while (r.first <= r.last && lower + (r.first + 1) * w <= lo) ++r.first;
  while (r.last >= r.first && lower + r.last * w >= hi) --r.last;
  if (r.last < r.first) r = {0, -1};
  return r;
}

// Horizon bookkeeping for one evaluation point along one Cartesian
// direction: fractional derivatives act direction-by-direction, so 2D
// queries reduce to row/column element strips.
struct HorizonEntry {
  double x = 0.0;        // evaluation coordinate along the direction
  Horizon horizon;
  ElemRange elems;       // strip element indices along the direction
};

inline HorizonEntry make_horizon_entry(double x, double l_f, double lower, double upper, double w,
                                       int n_elem) {
  HorizonEntry e;
  e.x = x;
  e.horizon = horizon_at(x, l_f, lower, upper);
  e.elems = elements_in_horizon(x, e.horizon, lower, w, n_elem);
  return e;
}

}  // namespace fracmech
