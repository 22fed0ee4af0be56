#pragma once

// Beam and plate kinematics: quadratic shape functions, fractional-order
// derivative rows of the shape functions (nonlocal B rows), and the
// constitutive matrices pairing stress resultants with generalized strains.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fracmech/fractional.hpp"
#include "fracmech/mesh.hpp"

namespace fracmech {

// The four nonlocal parameters. l_f is the nominal horizon length, l_star
// the microstructural (strain-gradient) length.
struct FractionalParams {
  FractionalOrder alpha1{1.0};
  FractionalOrder alpha2{1.0};
  double l_f = 0.0;
  double l_star = 0.0;

  bool local() const { return alpha1.is_integer() && alpha2.is_integer(); }
};

// Quadratic Lagrange basis on [-1, 1]; values and d/dxi.
struct ShapeFn1D {
  std::array<double, 3> n;
  std::array<double, 3> dn;
};

inline ShapeFn1D shape_functions_1d(double xi) {
  ShapeFn1D s;
  s.n = {0.5 * xi * (xi - 1.0), 1.0 - xi * xi, 0.5 * xi * (xi + 1.0)};
  s.dn = {xi - 0.5, -2.0 * xi, xi + 0.5};
  return s;
}

// ---------------------------------------------------------------------------
// Fractional derivative rows along one Cartesian direction.
//
// D^a f(x) = sum over strip elements of I[ K(x,x') dN_i/dx'(x') ] f_i.
// dN/dx' is linear over a quadratic element, so each element contributes
// c0_i * M0 + c1_i * M1 with M0, M1 the kernel moments about the element
// center, both exact. At a = 1 the row collapses to the local derivative
// of the element containing x.
// ---------------------------------------------------------------------------

struct AxisRow {
  ElemRange elems;                           // strip elements touched
  std::vector<std::array<double, 3>> coef;   // per element, per local node
};

inline AxisRow axis_derivative_row(double x, FractionalOrder alpha, double l_f, double lower,
                                   double upper, double w, int n_elem) {
  AxisRow row;
  if (alpha.is_integer()) {
    int e = std::clamp(static_cast<int>(std::floor((x - lower) / w)), 0, n_elem - 1);
    row.elems = {e, e};
    const double xc = lower + (e + 0.5) * w;
    const double xi = 2.0 * (x - xc) / w;
    const ShapeFn1D s = shape_functions_1d(xi);
    row.coef.push_back({s.dn[0] * 2.0 / w, s.dn[1] * 2.0 / w, s.dn[2] * 2.0 / w});
    return row;
  }

  const HorizonEntry he = make_horizon_entry(x, l_f, lower, upper, w, n_elem);
  if (he.elems.empty() || he.horizon.degenerate())
    throw std::runtime_error("axis_derivative_row: empty horizon");
  row.elems = he.elems;
  row.coef.resize(he.elems.count());
  const double h2 = 0.5 * w;
  for (int e = he.elems.first; e <= he.elems.last; ++e) {
    const double lo = lower + e * w, hi = lo + w;
    const double xc = 0.5 * (lo + hi);
    const auto m = element_kernel_moments(lo, hi, x, alpha, he.horizon, 1, xc);
    // dN/dx' = c0 + c1 (x' - xc): c0 = (-1, 0, 1)/(2 h2), c1 = (1, -2, 1)/h2^2
    auto& c = row.coef[e - he.elems.first];
    c[0] = -m[0] / (2.0 * h2) + m[1] / (h2 * h2);
    c[1] = -2.0 * m[1] / (h2 * h2);
    c[2] = m[0] / (2.0 * h2) + m[1] / (h2 * h2);
  }
  return row;
}

// Sparse row over global degrees of freedom.
struct BRow {
  std::vector<int> dofs;
  std::vector<double> weights;

  double dot(const Eigen::VectorXd& u) const {
    double s = 0.0;
    for (size_t k = 0; k < dofs.size(); ++k) s += weights[k] * u[dofs[k]];
    return s;
  }
};

// Row representing D^a of a single beam field at x, scattered through the
// element connectivity. dof(node, field) = n_fields*node + field.
inline BRow fractional_b_row(const Mesh1D& mesh, int field, int n_fields, double x,
                             FractionalOrder alpha, double l_f) {
  const AxisRow ar =
      axis_derivative_row(x, alpha, l_f, 0.0, mesh.length, mesh.elem_width(), mesh.n_elem);
  std::vector<double> node_w(2 * (ar.elems.count()) + 1, 0.0);
  for (int k = 0; k < ar.elems.count(); ++k)
    for (int a = 0; a < 3; ++a) node_w[2 * k + a] += ar.coef[k][a];
  BRow row;
  const int n0 = 2 * ar.elems.first;
  for (size_t k = 0; k < node_w.size(); ++k) {
    if (node_w[k] == 0.0) continue;
    row.dofs.push_back(n_fields * (n0 + static_cast<int>(k)) + field);
    row.weights.push_back(node_w[k]);
  }
  return row;
}

// 2D analogue: D^a along `axis` (0 = x, 1 = y) of one plate field at (x, y).
// The row spans the element strip along the axis; shape-function values in
// the transverse direction weight each node line.
inline BRow fractional_b_row_2d(const Mesh2D& mesh, int axis, int field, int n_fields, double x,
                                double y, FractionalOrder alpha, double l_f) {
  const bool along_x = (axis == 0);
  const double w = along_x ? mesh.length / mesh.nx : mesh.width / mesh.ny;
  const double upper = along_x ? mesh.length : mesh.width;
  const int n_elem = along_x ? mesh.nx : mesh.ny;
  const double s_axis = along_x ? x : y;
  const double s_perp = along_x ? y : x;

  const AxisRow ar = axis_derivative_row(s_axis, alpha, l_f, 0.0, upper, w, n_elem);

  // Transverse element index and local coordinate.
  const double wp = along_x ? mesh.width / mesh.ny : mesh.length / mesh.nx;
  const int np = along_x ? mesh.ny : mesh.nx;
  const int ep = std::clamp(static_cast<int>(std::floor(s_perp / wp)), 0, np - 1);
  const double eta = 2.0 * (s_perp - (ep + 0.5) * wp) / wp;
  const ShapeFn1D sp = shape_functions_1d(eta);

  std::vector<double> node_w(2 * ar.elems.count() + 1, 0.0);
  for (int k = 0; k < ar.elems.count(); ++k)
    for (int a = 0; a < 3; ++a) node_w[2 * k + a] += ar.coef[k][a];

  BRow row;
  const int n0 = 2 * ar.elems.first;
  for (int b = 0; b < 3; ++b) {
    const int perp_node = 2 * ep + b;
    for (size_t k = 0; k < node_w.size(); ++k) {
      if (node_w[k] == 0.0) continue;
      const int ia = n0 + static_cast<int>(k);
      const int node = along_x ? mesh.node_id(ia, perp_node) : mesh.node_id(perp_node, ia);
      row.dofs.push_back(n_fields * node + field);
      row.weights.push_back(node_w[k] * sp.n[b]);
    }
  }
  return row;
}

// ---------------------------------------------------------------------------
// Sections and constitutive matrices
// ---------------------------------------------------------------------------

struct BeamSection {
  double length = 1.0;     // L
  double width = 0.1;      // b
  double height = 0.05;    // h
  double E = 30e9;
  double nu = 0.3;
  double rho = 2700.0;
  double k_s = 5.0 / 6.0;  // shear correction
  double l_star = 0.0;

  double area() const { return width * height; }
  double inertia() const { return width * height * height * height / 12.0; }
  double shear_modulus() const { return E / (2.0 * (1.0 + nu)); }
};

struct PlateSection {
  double length = 1.0;   // L
  double width = 1.0;    // B
  double height = 0.1;   // h
  double E = 30e9;
  double nu = 0.3;
  double rho = 2700.0;
  double k_s = 5.0 / 6.0;
  double l_star = 0.0;

  double shear_modulus() const { return E / (2.0 * (1.0 + nu)); }
};

// Generalized strain ordering for the beam stack:
//   { D^a1 u0,  D^a1 w0 - th0,  D^a1 th0,  D^a1 th0,  D^a2 th0 }
// paired with resultants { N_xx, Q_xz, M_xx, Nb_xxz, Nb_xzx }.
inline Eigen::Matrix<double, 5, 5> beam_constitutive(const BeamSection& s) {
  Eigen::Matrix<double, 5, 5> st = Eigen::Matrix<double, 5, 5>::Zero();
  const double G = s.shear_modulus(), A = s.area(), I = s.inertia();
  const double ls2 = s.l_star * s.l_star;
  st(0, 0) = s.E * A;
  st(1, 1) = s.k_s * G * A;
  st(2, 2) = s.E * I;
  st(3, 3) = ls2 * s.E * A;
  st(4, 4) = s.k_s * ls2 * G * A;
  return st;
}

// Plate stack ordering (15 generalized strains):
//   0  D^a1_x u0                     membrane
//   1  D^a1_y v0
//   2  D^a1_y u0 + D^a1_x v0
//   3  D^a1_x thx                    bending
//   4  D^a1_y thy
//   5  D^a1_y thx + D^a1_x thy
//   6  D^a1_x w0 - thx               transverse shear
//   7  D^a1_y w0 - thy
//   8  D^a1_x thx                    gradients of normal/in-plane strains
//   9  D^a1_y thy
//  10  D^a1_y thx + D^a1_x thy
//  11  D^a2_x thx                    gradients of transverse shear strains
//  12  D^a2_y thx
//  13  D^a2_x thy
//  14  D^a2_y thy
inline Eigen::Matrix<double, 15, 15> plate_constitutive(const PlateSection& s) {
  Eigen::Matrix<double, 15, 15> sm = Eigen::Matrix<double, 15, 15>::Zero();
  const double h = s.height, G = s.shear_modulus();
  const double eb = s.E / (1.0 - s.nu * s.nu);  // plane stress
  const double ls2 = s.l_star * s.l_star;
  Eigen::Matrix3d q;
  q << eb, eb * s.nu, 0.0, eb * s.nu, eb, 0.0, 0.0, 0.0, eb * (1.0 - s.nu) / 2.0;
  sm.block<3, 3>(0, 0) = h * q;
  sm.block<3, 3>(3, 3) = (h * h * h / 12.0) * q;
  sm(6, 6) = sm(7, 7) = s.k_s * G * h;
  sm.block<3, 3>(8, 8) = ls2 * h * q;
  for (int i = 11; i < 15; ++i) sm(i, i) = s.k_s * ls2 * G * h;
  return sm;
}

// ---------------------------------------------------------------------------
// Per-evaluation-point row stacks
// ---------------------------------------------------------------------------

namespace beamfield {
inline constexpr int u0 = 0, w0 = 1, th0 = 2, count = 3;
}
namespace platefield {
inline constexpr int u0 = 0, v0 = 1, w0 = 2, thx = 3, thy = 4, count = 5;
}

// Interpolation row (shape-function values) for one beam field at x.
inline BRow interpolation_row(const Mesh1D& mesh, int field, int n_fields, double x) {
  const int e = mesh.elem_of(x);
  const double xc = 0.5 * (mesh.elem_lo(e) + mesh.elem_hi(e));
  const double xi = 2.0 * (x - xc) / mesh.elem_width();
  const ShapeFn1D s = shape_functions_1d(xi);
  BRow row;
  for (int a = 0; a < 3; ++a) {
    row.dofs.push_back(n_fields * mesh.elems[e][a] + field);
    row.weights.push_back(s.n[a]);
  }
  return row;
}

inline BRow interpolation_row_2d(const Mesh2D& mesh, int field, int n_fields, double x, double y) {
  const double wx = mesh.length / mesh.nx, wy = mesh.width / mesh.ny;
  const int ex = std::clamp(static_cast<int>(std::floor(x / wx)), 0, mesh.nx - 1);
  const int ey = std::clamp(static_cast<int>(std::floor(y / wy)), 0, mesh.ny - 1);
  const double xi = 2.0 * (x - (ex + 0.5) * wx) / wx;
  const double eta = 2.0 * (y - (ey + 0.5) * wy) / wy;
  const ShapeFn1D sx = shape_functions_1d(xi), sy = shape_functions_1d(eta);
  BRow row;
  for (int b = 0; b < 3; ++b)
    for (int a = 0; a < 3; ++a) {
      row.dofs.push_back(n_fields * mesh.node_id(2 * ex + a, 2 * ey + b) + field);
      row.weights.push_back(sx.n[a] * sy.n[b]);
    }
  return row;
}

inline BRow row_difference(const BRow& p, const BRow& q) {
  BRow r = p;
  for (size_t k = 0; k < q.dofs.size(); ++k) {
    auto it = std::find(r.dofs.begin(), r.dofs.end(), q.dofs[k]);
    if (it != r.dofs.end()) {
      r.weights[it - r.dofs.begin()] -= q.weights[k];
    } else {
      r.dofs.push_back(q.dofs[k]);
      r.weights.push_back(-q.weights[k]);
    }
  }
  return r;
}

inline BRow row_sum(const BRow& p, const BRow& q) {
  BRow nq = q;
  for (auto& v : nq.weights) v = -v;
  return row_difference(p, nq);
}

// Beam stack: rows paired with beam_constitutive ordering.
struct BeamBStack {
  std::array<BRow, 5> rows;
};

inline BeamBStack beam_b_matrices(const Mesh1D& mesh, const FractionalParams& p, double x) {
  BeamBStack st;
  using namespace beamfield;
  const BRow bu = fractional_b_row(mesh, u0, count, x, p.alpha1, p.l_f);
  const BRow bw = fractional_b_row(mesh, w0, count, x, p.alpha1, p.l_f);
  const BRow bt1 = fractional_b_row(mesh, th0, count, x, p.alpha1, p.l_f);
  const BRow bt2 = fractional_b_row(mesh, th0, count, x, p.alpha2, p.l_f);
  const BRow lt = interpolation_row(mesh, th0, count, x);
  st.rows[0] = bu;
  st.rows[1] = row_difference(bw, lt);
  st.rows[2] = bt1;
  st.rows[3] = bt1;
  st.rows[4] = bt2;
  return st;
}

// Plate stack: rows paired with plate_constitutive ordering.
struct PlateBStack {
  std::array<BRow, 15> rows;
};

inline PlateBStack plate_kinematic_rows(const Mesh2D& mesh, const FractionalParams& p, double x,
                                        double y) {
  PlateBStack st;
  using namespace platefield;
  auto dx1 = [&](int f) { return fractional_b_row_2d(mesh, 0, f, count, x, y, p.alpha1, p.l_f); };
  auto dy1 = [&](int f) { return fractional_b_row_2d(mesh, 1, f, count, x, y, p.alpha1, p.l_f); };
  auto dx2 = [&](int f) { return fractional_b_row_2d(mesh, 0, f, count, x, y, p.alpha2, p.l_f); };
  auto dy2 = [&](int f) { return fractional_b_row_2d(mesh, 1, f, count, x, y, p.alpha2, p.l_f); };

  const BRow thx_x = dx1(thx), thy_y = dy1(thy);
  const BRow mix = row_sum(dy1(thx), dx1(thy));
  st.rows[0] = dx1(u0);
  st.rows[1] = dy1(v0);
  st.rows[2] = row_sum(dy1(u0), dx1(v0));
  st.rows[3] = thx_x;
  st.rows[4] = thy_y;
  st.rows[5] = mix;
  st.rows[6] = row_difference(dx1(w0), interpolation_row_2d(mesh, thx, count, x, y));
  st.rows[7] = row_difference(dy1(w0), interpolation_row_2d(mesh, thy, count, x, y));
  st.rows[8] = thx_x;
  st.rows[9] = thy_y;
  st.rows[10] = mix;
  st.rows[11] = dx2(thx);
  st.rows[12] = dy2(thx);
  st.rows[13] = dx2(thy);
  st.rows[14] = dy2(thy);
  return st;
}

}  // namespace fracmech
