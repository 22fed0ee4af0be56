#pragma once

// Global stiffness, mass, and force assembly for beam and plate, plus
// essential boundary condition application.
//
// K = sum over Gauss points of w * B^T S B. Nonlocal rows couple degrees
// of freedom across the horizon, so K is assembled densely: per element,
// the row stack over all its Gauss points is gathered on the local support
// (a contiguous node range for the beam, a cross of row/column strips for
// the plate), contracted with one dense product, and scattered back in a
// fixed element order.
//
// Shear strain rows use 2-point (reduced) quadrature, everything else the
// full 3-point rule.

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>
#include <vector>

#include "fracmech/elements.hpp"
#include "fracmech/fractional.hpp"
#include "fracmech/mesh.hpp"

namespace fracmech {

struct GlobalSystem {
  Eigen::MatrixXd k;
  Eigen::MatrixXd m;
  Eigen::VectorXd f;
  std::vector<uint8_t> bc_mask;  // 1 = constrained, filled by apply_bcs
  int n_fields = 0;

  int n_dofs() const { return static_cast<int>(k.rows()); }
  int dof(int node, int field) const { return n_fields * node + field; }
};

struct BeamLoads {
  double f_x = 0.0;      // axial, N/m
  double f_z = 0.0;      // transverse, N/m
  double m_theta = 0.0;  // distributed moment, N*m/m
};

struct PlateLoads {
  double f_x = 0.0, f_y = 0.0, f_z = 0.0;        // N/m^2
  double m_theta_x = 0.0, m_theta_y = 0.0;       // N*m/m^2
};

enum class BcCase { CC, SS, CCCC, SSSS };

namespace detail {

inline const GaussRule& fem_gauss(int n) {
  static const GaussRule g2 = gauss_legendre(2);
  static const GaussRule g3 = gauss_legendre(3);
  if (n == 2) return g2;
  if (n == 3) return g3;
  throw std::invalid_argument("fem_gauss: unsupported rule");
}

// Scatters an axis derivative row into a support-local dense row.
// loc(node1d) maps a 1D node index along the axis to the local node slot.
template <typename LocFn>
inline void add_axis_row(Eigen::Ref<Eigen::RowVectorXd> out, const AxisRow& ar, int field,
                         int n_fields, double scale, LocFn&& loc) {
  for (int k = 0; k < ar.elems.count(); ++k) {
    const int e = ar.elems.first + k;
    for (int a = 0; a < 3; ++a) {
      const int ln = loc(2 * e + a);
      out[n_fields * ln + field] += scale * ar.coef[k][a];
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Beam
// ---------------------------------------------------------------------------

inline Eigen::MatrixXd assemble_stiffness(const Mesh1D& mesh, const BeamSection& section,
                                          const FractionalParams& params) {
  using namespace beamfield;
  const int n = count * mesh.n_nodes();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  const Eigen::Matrix<double, 5, 5> st = beam_constitutive(section);
  const double w = mesh.elem_width();
  const double jac = 0.5 * w;

  // pass 0: full quadrature, all rows except shear; pass 1: reduced, shear.
  for (int pass = 0; pass < 2; ++pass) {
    const GaussRule& rule = detail::fem_gauss(pass == 0 ? 3 : 2);
    const std::vector<int> rows = (pass == 0) ? std::vector<int>{0, 2, 3, 4} : std::vector<int>{1};
    const int nr = static_cast<int>(rows.size());

    for (int e = 0; e < mesh.n_elem; ++e) {
      const double lo = mesh.elem_lo(e), hi = mesh.elem_hi(e);
      // support: elements reachable from any Gauss point of e
      int i0 = e, i1 = e;
      if (!params.local()) {
        i0 = std::clamp(static_cast<int>(std::floor((lo - params.l_f) / w)), 0, mesh.n_elem - 1);
        i1 = std::clamp(static_cast<int>(std::ceil((hi + params.l_f) / w)) - 1, 0, mesh.n_elem - 1);
      }
      const int node0 = 2 * i0;
      const int s = count * (2 * (i1 - i0 + 1) + 1);
      auto loc = [node0](int node) { return node - node0; };

      Eigen::MatrixXd g = Eigen::MatrixXd::Zero(nr * rule.points.size(), s);
      Eigen::MatrixXd c = g;
      for (size_t gp = 0; gp < rule.points.size(); ++gp) {
        const double x = 0.5 * (lo + hi) + jac * rule.points[gp];
        const double wjac = rule.weights[gp] * jac;
        const AxisRow a1 = axis_derivative_row(x, params.alpha1, params.l_f, 0.0, mesh.length, w,
                                               mesh.n_elem);
        const AxisRow a2 = params.alpha2.value() == params.alpha1.value()
                               ? a1
                               : axis_derivative_row(x, params.alpha2, params.l_f, 0.0, mesh.length,
                                                     w, mesh.n_elem);
        const ShapeFn1D sh = shape_functions_1d(2.0 * (x - 0.5 * (lo + hi)) / w);

        for (int r = 0; r < nr; ++r) {
          auto row = g.row(gp * nr + r);
          switch (rows[r]) {
            case 0: detail::add_axis_row(row, a1, u0, count, 1.0, loc); break;
            case 1:
              detail::add_axis_row(row, a1, w0, count, 1.0, loc);
              for (int a = 0; a < 3; ++a) row[count * loc(2 * e + a) + th0] -= sh.n[a];
              break;
            case 2:
            case 3: detail::add_axis_row(row, a1, th0, count, 1.0, loc); break;
            case 4: detail::add_axis_row(row, a2, th0, count, 1.0, loc); break;
          }
          c.row(gp * nr + r) = wjac * st(rows[r], rows[r]) * row;
        }
      }
      k.block(count * node0, count * node0, s, s).noalias() += g.transpose() * c;
    }
  }
  return k;
}

inline Eigen::MatrixXd assemble_mass(const Mesh1D& mesh, const BeamSection& section) {
  using namespace beamfield;
  const int n = count * mesh.n_nodes();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const double i0m = section.rho * section.area();
  const double i2m = section.rho * section.inertia();
  const GaussRule& rule = detail::fem_gauss(3);
  const double jac = 0.5 * mesh.elem_width();

  for (int e = 0; e < mesh.n_elem; ++e) {
    for (size_t gp = 0; gp < rule.points.size(); ++gp) {
      const ShapeFn1D sh = shape_functions_1d(rule.points[gp]);
      const double wjac = rule.weights[gp] * jac;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const double nn = wjac * sh.n[a] * sh.n[b];
          const int na = mesh.elems[e][a], nb = mesh.elems[e][b];
          m(count * na + u0, count * nb + u0) += i0m * nn;
          m(count * na + w0, count * nb + w0) += i0m * nn;
          m(count * na + th0, count * nb + th0) += i2m * nn;
        }
    }
  }
  return m;
}

inline Eigen::VectorXd assemble_force(const Mesh1D& mesh, const BeamLoads& loads) {
  using namespace beamfield;
  Eigen::VectorXd f = Eigen::VectorXd::Zero(count * mesh.n_nodes());
  const GaussRule& rule = detail::fem_gauss(3);
  const double jac = 0.5 * mesh.elem_width();
  for (int e = 0; e < mesh.n_elem; ++e) {
    for (size_t gp = 0; gp < rule.points.size(); ++gp) {
      const ShapeFn1D sh = shape_functions_1d(rule.points[gp]);
      const double wjac = rule.weights[gp] * jac;
      for (int a = 0; a < 3; ++a) {
        const int na = mesh.elems[e][a];
        f[count * na + u0] += wjac * sh.n[a] * loads.f_x;
        f[count * na + w0] += wjac * sh.n[a] * loads.f_z;
        f[count * na + th0] += wjac * sh.n[a] * loads.m_theta;
      }
    }
  }
  return f;
}

inline GlobalSystem assemble_beam_system(const Mesh1D& mesh, const BeamSection& section,
                                         const FractionalParams& params, const BeamLoads& loads) {
  GlobalSystem sys;
  sys.n_fields = beamfield::count;
  sys.k = assemble_stiffness(mesh, section, params);
  sys.m = assemble_mass(mesh, section);
  sys.f = assemble_force(mesh, loads);
  sys.bc_mask.assign(sys.k.rows(), 0);
  return sys;
}

// ---------------------------------------------------------------------------
// Plate
// ---------------------------------------------------------------------------

inline Eigen::MatrixXd assemble_stiffness(const Mesh2D& mesh, const PlateSection& section,
                                          const FractionalParams& params) {
  using namespace platefield;
  const int n = count * mesh.n_nodes();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  const Eigen::Matrix<double, 15, 15> sm = plate_constitutive(section);
  const double wx = mesh.length / mesh.nx, wy = mesh.width / mesh.ny;
  const double jac = 0.25 * wx * wy;

  std::vector<int> node_loc(mesh.n_nodes(), -1);
  std::vector<int> support;
  std::vector<int> gdofs;

  for (int pass = 0; pass < 2; ++pass) {
    const GaussRule& rule = detail::fem_gauss(pass == 0 ? 3 : 2);
    const std::vector<int> rows = (pass == 0)
                                      ? std::vector<int>{0, 1, 2, 3, 4, 5, 8, 9, 10, 11, 12, 13, 14}
                                      : std::vector<int>{6, 7};
    const int nr = static_cast<int>(rows.size());
    const int ngp = static_cast<int>(rule.points.size());
    const Eigen::MatrixXd s_rows = [&] {
      Eigen::MatrixXd s(nr, 15);
      for (int r = 0; r < nr; ++r) s.row(r) = sm.row(rows[r]);
      return s;
    }();
    // S restricted to the active rows/columns (block structure keeps this exact)
    Eigen::MatrixXd s_sub(nr, nr);
    for (int r = 0; r < nr; ++r)
      for (int cidx = 0; cidx < nr; ++cidx) s_sub(r, cidx) = sm(rows[r], rows[cidx]);

    for (int ey = 0; ey < mesh.ny; ++ey) {
      for (int ex = 0; ex < mesh.nx; ++ex) {
        const double xlo = mesh.elem_x_lo(ex), xhi = mesh.elem_x_hi(ex);
        const double ylo = mesh.elem_y_lo(ey), yhi = mesh.elem_y_hi(ey);

        int ix0 = ex, ix1 = ex, jy0 = ey, jy1 = ey;
        if (!params.local()) {
          ix0 = std::clamp(static_cast<int>(std::floor((xlo - params.l_f) / wx)), 0, mesh.nx - 1);
          ix1 = std::clamp(static_cast<int>(std::ceil((xhi + params.l_f) / wx)) - 1, 0, mesh.nx - 1);
          jy0 = std::clamp(static_cast<int>(std::floor((ylo - params.l_f) / wy)), 0, mesh.ny - 1);
          jy1 = std::clamp(static_cast<int>(std::ceil((yhi + params.l_f) / wy)) - 1, 0, mesh.ny - 1);
        }

        // cross-shaped support: horizontal arm x row strip, vertical arm x column strip
        support.clear();
        for (int iy = 2 * ey; iy <= 2 * ey + 2; ++iy)
          for (int ix = 2 * ix0; ix <= 2 * ix1 + 2; ++ix) support.push_back(mesh.node_id(ix, iy));
        for (int iy = 2 * jy0; iy <= 2 * jy1 + 2; ++iy) {
          if (iy >= 2 * ey && iy <= 2 * ey + 2) continue;
          for (int ix = 2 * ex; ix <= 2 * ex + 2; ++ix) support.push_back(mesh.node_id(ix, iy));
        }
        std::sort(support.begin(), support.end());
        for (size_t i = 0; i < support.size(); ++i) node_loc[support[i]] = static_cast<int>(i);
        const int s = count * static_cast<int>(support.size());

        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(nr * ngp * ngp, s);
        Eigen::MatrixXd c(nr * ngp * ngp, s);

        int stack_at = 0;
        for (int gy = 0; gy < ngp; ++gy) {
          for (int gx = 0; gx < ngp; ++gx, stack_at += nr) {
            const double x = 0.5 * (xlo + xhi) + 0.5 * wx * rule.points[gx];
            const double y = 0.5 * (ylo + yhi) + 0.5 * wy * rule.points[gy];
            const double wjac = rule.weights[gx] * rule.weights[gy] * jac;

            const AxisRow ax1 =
                axis_derivative_row(x, params.alpha1, params.l_f, 0.0, mesh.length, wx, mesh.nx);
            const AxisRow ay1 =
                axis_derivative_row(y, params.alpha1, params.l_f, 0.0, mesh.width, wy, mesh.ny);
            const bool same = params.alpha2.value() == params.alpha1.value();
            const AxisRow ax2 = same ? ax1
                                     : axis_derivative_row(x, params.alpha2, params.l_f, 0.0,
                                                           mesh.length, wx, mesh.nx);
            const AxisRow ay2 = same ? ay1
                                     : axis_derivative_row(y, params.alpha2, params.l_f, 0.0,
                                                           mesh.width, wy, mesh.ny);
            const ShapeFn1D shx = shape_functions_1d(rule.points[gx]);
            const ShapeFn1D shy = shape_functions_1d(rule.points[gy]);

            // D^a_x rows weight the 3 node lines of element row ey by N_y
            auto add_dx = [&](Eigen::Ref<Eigen::RowVectorXd> out, const AxisRow& ar, int field) {
              for (int b = 0; b < 3; ++b) {
                const int iy = 2 * ey + b;
                detail::add_axis_row(out, ar, field, count, shy.n[b],
                                     [&](int ix) { return node_loc[mesh.node_id(ix, iy)]; });
              }
            };
            auto add_dy = [&](Eigen::Ref<Eigen::RowVectorXd> out, const AxisRow& ar, int field) {
              for (int b = 0; b < 3; ++b) {
                const int ix = 2 * ex + b;
                detail::add_axis_row(out, ar, field, count, shx.n[b],
                                     [&](int iy) { return node_loc[mesh.node_id(ix, iy)]; });
              }
            };
            auto add_interp = [&](Eigen::Ref<Eigen::RowVectorXd> out, int field, double scale) {
              for (int b = 0; b < 3; ++b)
                for (int a = 0; a < 3; ++a) {
                  const int ln = node_loc[mesh.node_id(2 * ex + a, 2 * ey + b)];
                  out[count * ln + field] += scale * shx.n[a] * shy.n[b];
                }
            };

            for (int r = 0; r < nr; ++r) {
              auto row = g.row(stack_at + r);
              switch (rows[r]) {
                case 0: add_dx(row, ax1, u0); break;
                case 1: add_dy(row, ay1, v0); break;
                case 2:
                  add_dy(row, ay1, u0);
                  add_dx(row, ax1, v0);
                  break;
                case 3: case 8: add_dx(row, ax1, thx); break;
                case 4: case 9: add_dy(row, ay1, thy); break;
                case 5: case 10:
                  add_dy(row, ay1, thx);
                  add_dx(row, ax1, thy);
                  break;
                case 6:
                  add_dx(row, ax1, w0);
                  add_interp(row, thx, -1.0);
                  break;
                case 7:
                  add_dy(row, ay1, w0);
                  add_interp(row, thy, -1.0);
                  break;
                case 11: add_dx(row, ax2, thx); break;
                case 12: add_dy(row, ay2, thx); break;
                case 13: add_dx(row, ax2, thy); break;
                case 14: add_dy(row, ay2, thy); break;
              }
            }
            c.block(stack_at, 0, nr, s).noalias() = wjac * s_sub * g.block(stack_at, 0, nr, s);
          }
        }

        Eigen::MatrixXd kloc = g.transpose() * c;
        gdofs.clear();
        for (int node : support)
          for (int fld = 0; fld < count; ++fld) gdofs.push_back(count * node + fld);
        for (int j = 0; j < s; ++j) {
          const int gj = gdofs[j];
          for (int i = 0; i < s; ++i) k(gdofs[i], gj) += kloc(i, j);
        }
        for (int node : support) node_loc[node] = -1;
      }
    }
  }
  return k;
}

inline Eigen::MatrixXd assemble_mass(const Mesh2D& mesh, const PlateSection& section) {
  using namespace platefield;
  const int n = count * mesh.n_nodes();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const double h = section.height;
  const double i0m = section.rho * h;
  const double i2m = section.rho * h * h * h / 12.0;
  const GaussRule& rule = detail::fem_gauss(3);
  const double wx = mesh.length / mesh.nx, wy = mesh.width / mesh.ny;
  const double jac = 0.25 * wx * wy;

  for (const auto& conn : mesh.elems) {
    for (size_t gy = 0; gy < rule.points.size(); ++gy) {
      const ShapeFn1D shy = shape_functions_1d(rule.points[gy]);
      for (size_t gx = 0; gx < rule.points.size(); ++gx) {
        const ShapeFn1D shx = shape_functions_1d(rule.points[gx]);
        const double wjac = rule.weights[gx] * rule.weights[gy] * jac;
        double nval[9];
        for (int b = 0; b < 3; ++b)
          for (int a = 0; a < 3; ++a) nval[3 * b + a] = shx.n[a] * shy.n[b];
        for (int i = 0; i < 9; ++i)
          for (int j = 0; j < 9; ++j) {
            const double nn = wjac * nval[i] * nval[j];
            const int ni = conn[i], nj = conn[j];
            m(count * ni + u0, count * nj + u0) += i0m * nn;
            m(count * ni + v0, count * nj + v0) += i0m * nn;
            m(count * ni + w0, count * nj + w0) += i0m * nn;
            m(count * ni + thx, count * nj + thx) += i2m * nn;
            m(count * ni + thy, count * nj + thy) += i2m * nn;
          }
      }
    }
  }
  return m;
}

inline Eigen::VectorXd assemble_force(const Mesh2D& mesh, const PlateLoads& loads) {
  using namespace platefield;
  Eigen::VectorXd f = Eigen::VectorXd::Zero(count * mesh.n_nodes());
  const GaussRule& rule = detail::fem_gauss(3);
  const double wx = mesh.length / mesh.nx, wy = mesh.width / mesh.ny;
  const double jac = 0.25 * wx * wy;
  for (const auto& conn : mesh.elems) {
    for (size_t gy = 0; gy < rule.points.size(); ++gy) {
      const ShapeFn1D shy = shape_functions_1d(rule.points[gy]);
      for (size_t gx = 0; gx < rule.points.size(); ++gx) {
        const ShapeFn1D shx = shape_functions_1d(rule.points[gx]);
        const double wjac = rule.weights[gx] * rule.weights[gy] * jac;
        for (int b = 0; b < 3; ++b)
          for (int a = 0; a < 3; ++a) {
            const int node = conn[3 * b + a];
            const double nv = wjac * shx.n[a] * shy.n[b];
            f[count * node + u0] += nv * loads.f_x;
            f[count * node + v0] += nv * loads.f_y;
            f[count * node + w0] += nv * loads.f_z;
            f[count * node + thx] += nv * loads.m_theta_x;
            f[count * node + thy] += nv * loads.m_theta_y;
          }
      }
    }
  }
  return f;
}

inline GlobalSystem assemble_plate_system(const Mesh2D& mesh, const PlateSection& section,
                                          const FractionalParams& params, const PlateLoads& loads) {
  GlobalSystem sys;
  sys.n_fields = platefield::count;
  sys.k = assemble_stiffness(mesh, section, params);
  sys.m = assemble_mass(mesh, section);
  sys.f = assemble_force(mesh, loads);
  sys.bc_mask.assign(sys.k.rows(), 0);
  return sys;
}

// ---------------------------------------------------------------------------
// Essential boundary conditions
// ---------------------------------------------------------------------------

inline std::vector<int> constrained_dofs(const Mesh1D& mesh, BcCase bc) {
  using namespace beamfield;
  std::vector<int> fixed;
  const int last = mesh.n_nodes() - 1;
  switch (bc) {
    case BcCase::CC:
      for (int node : {0, last})
        for (int fld : {u0, w0, th0}) fixed.push_back(count * node + fld);
      break;
    case BcCase::SS:
      for (int node : {0, last})
        for (int fld : {u0, w0}) fixed.push_back(count * node + fld);
      break;
    default:
      throw std::invalid_argument("constrained_dofs: beam supports CC or SS only");
  }
  return fixed;
}

// SSSS is the hard simple support: w and the in-plane displacements vanish
// on every edge, and the rotation about the edge normal is constrained
// while the bending rotation about the edge axis stays free.
inline std::vector<int> constrained_dofs(const Mesh2D& mesh, BcCase bc) {
  using namespace platefield;
  std::vector<int> fixed;
  auto fix = [&](const std::vector<int>& nodes, std::initializer_list<int> fields) {
    for (int node : nodes)
      for (int fld : fields) fixed.push_back(count * node + fld);
  };
  switch (bc) {
    case BcCase::CCCC:
      fix(mesh.edge_x0, {u0, v0, w0, thx, thy});
      fix(mesh.edge_x1, {u0, v0, w0, thx, thy});
      fix(mesh.edge_y0, {u0, v0, w0, thx, thy});
      fix(mesh.edge_y1, {u0, v0, w0, thx, thy});
      break;
    case BcCase::SSSS:
      fix(mesh.edge_x0, {u0, v0, w0, thy});
      fix(mesh.edge_x1, {u0, v0, w0, thy});
      fix(mesh.edge_y0, {u0, v0, w0, thx});
      fix(mesh.edge_y1, {u0, v0, w0, thx});
      break;
    default:
      throw std::invalid_argument("constrained_dofs: plate supports CCCC or SSSS only");
  }
  std::sort(fixed.begin(), fixed.end());
  fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
  return fixed;
}

struct ReducedSystem {
  Eigen::MatrixXd k;
  Eigen::MatrixXd m;
  Eigen::VectorXd f;
  std::vector<int> free_dofs;
  int n_full = 0;

  Eigen::VectorXd scatter(const Eigen::VectorXd& u_red) const {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n_full);
    for (size_t i = 0; i < free_dofs.size(); ++i) u[free_dofs[i]] = u_red[i];
    return u;
  }
};

inline ReducedSystem apply_bcs(GlobalSystem& sys, const std::vector<int>& fixed) {
  const int n = sys.n_dofs();
  sys.bc_mask.assign(n, 0);
  for (int d : fixed) {
    if (d < 0 || d >= n) throw std::invalid_argument("apply_bcs: dof out of range");
    sys.bc_mask[d] = 1;
  }
  ReducedSystem red;
  red.n_full = n;
  for (int d = 0; d < n; ++d)
    if (!sys.bc_mask[d]) red.free_dofs.push_back(d);
  const int nf = static_cast<int>(red.free_dofs.size());
  red.k.resize(nf, nf);
  red.m.resize(nf, nf);
  red.f.resize(nf);
  for (int j = 0; j < nf; ++j) {
    const int gj = red.free_dofs[j];
    red.f[j] = sys.f[gj];
    for (int i = 0; i < nf; ++i) {
      red.k(i, j) = sys.k(red.free_dofs[i], gj);
      red.m(i, j) = sys.m(red.free_dofs[i], gj);
    }
  }
  return red;
}

inline ReducedSystem apply_bcs(GlobalSystem& sys, const Mesh1D& mesh, BcCase bc) {
  return apply_bcs(sys, constrained_dofs(mesh, bc));
}

inline ReducedSystem apply_bcs(GlobalSystem& sys, const Mesh2D& mesh, BcCase bc) {
  return apply_bcs(sys, constrained_dofs(mesh, bc));
}

}  // namespace fracmech
