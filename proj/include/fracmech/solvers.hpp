#pragma once

// Static and modal solution of the assembled systems, plus the
// non-dimensional response ratios against a classical baseline computed
// on the identical mesh.

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "fracmech/assembly.hpp"
#include "fracmech/linalg.hpp"
#include "fracmech/mesh.hpp"

namespace fracmech {

struct StaticResult {
  Eigen::VectorXd u;           // full-size nodal vector, zeros on constrained dofs
  double w_max = 0.0;          // max |w0| over nodes
  double w_max_x = 0.0;
  double w_max_y = 0.0;
  double w_bar = std::numeric_limits<double>::quiet_NaN();
  double residual = 0.0;
};

struct ModalResult {
  Eigen::VectorXd omega0;      // rad/s, ascending
  Eigen::VectorXd f0;          // Hz
  Eigen::MatrixXd shapes;      // full-size columns, M-orthonormal on the free dofs
  double omega_bar = std::numeric_limits<double>::quiet_NaN();
};

inline Eigen::VectorXd static_solve_reduced(const ReducedSystem& sys, double* residual = nullptr) {
  const Eigen::VectorXd u = linalg::chol_solve(sys.k, sys.f);
  const double fn = sys.f.norm();
  const double res = fn > 0.0 ? (sys.k * u - sys.f).norm() / fn : 0.0;
  if (residual) *residual = res;
  if (res > 1e-10) throw NumericalError("static_solve: residual " + std::to_string(res));
  return u;
}

inline StaticResult static_solve(const ReducedSystem& sys, const Mesh1D& mesh) {
  StaticResult r;
  r.u = sys.scatter(static_solve_reduced(sys, &r.residual));
  using namespace beamfield;
  for (int node = 0; node < mesh.n_nodes(); ++node) {
    const double w = std::abs(r.u[count * node + w0]);
    if (w > r.w_max) {
      r.w_max = w;
      r.w_max_x = mesh.nodes[node];
    }
  }
  return r;
}

inline StaticResult static_solve(const ReducedSystem& sys, const Mesh2D& mesh) {
  StaticResult r;
  r.u = sys.scatter(static_solve_reduced(sys, &r.residual));
  using namespace platefield;
  for (int iy = 0; iy < mesh.nny(); ++iy)
    for (int ix = 0; ix < mesh.nnx(); ++ix) {
      const double w = std::abs(r.u[count * mesh.node_id(ix, iy) + w0]);
      if (w > r.w_max) {
        r.w_max = w;
        r.w_max_x = mesh.xs[ix];
        r.w_max_y = mesh.ys[iy];
      }
    }
  return r;
}

// Smallest modes of the SPD pencil (K, M). Desk-scale systems use the
// dense two-sided solver; larger ones (plates) a subspace iteration on
// the factorized stiffness.
inline ModalResult modal_solve(const ReducedSystem& sys, int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("modal_solve: n_modes must be >= 1");
  const int n = static_cast<int>(sys.k.rows());
  linalg::EigResult eig = (n <= 1500) ? linalg::sym_gen_eig_smallest(sys.k, sys.m, n_modes)
                                      : linalg::subspace_smallest(sys.k, sys.m, n_modes);
  ModalResult r;
  r.omega0.resize(eig.values.size());
  r.f0.resize(eig.values.size());
  for (int i = 0; i < eig.values.size(); ++i) {
    if (!(eig.values[i] > 0.0))
      throw NumericalError("modal_solve: non-positive eigenvalue, pencil lost definiteness");
    r.omega0[i] = std::sqrt(eig.values[i]);
    r.f0[i] = r.omega0[i] / (2.0 * M_PI);
  }
  r.shapes.resize(sys.n_full, eig.vectors.cols());
  for (int j = 0; j < eig.vectors.cols(); ++j) r.shapes.col(j) = sys.scatter(eig.vectors.col(j));
  return r;
}

// Ratio against the classical run on the same mesh; isolates the
// fractional effect from discretization error.
inline double nondimensionalize(double value, double classical_baseline) {
  if (!(classical_baseline > 0.0))
    throw std::invalid_argument("nondimensionalize: baseline must be positive");
  const double ratio = value / classical_baseline;
  if (!(ratio > 0.0)) throw std::invalid_argument("nondimensionalize: non-positive ratio");
  return ratio;
}

}  // namespace fracmech
