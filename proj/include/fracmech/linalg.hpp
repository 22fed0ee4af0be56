#pragma once

// Thin LAPACK wrappers for the dense symmetric kernels: Cholesky solves,
// the generalized symmetric eigenproblem, and a deterministic subspace
// iteration for extracting the smallest modes of large pencils.
// Factorizations run single-threaded so results are bit-reproducible.

#include <lapacke.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracmech {

// Signals an indefinite matrix, factorization breakdown, or eigensolver
// failure: a formulation or boundary-condition bug, not a user error.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace linalg {

// Solve A x = b for symmetric positive definite A (Cholesky).
inline Eigen::VectorXd chol_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  Eigen::MatrixXd fac = a;
  Eigen::VectorXd x = b;
  const lapack_int n = static_cast<lapack_int>(a.rows());
  const lapack_int info =
      LAPACKE_dposv(LAPACK_COL_MAJOR, 'L', n, 1, fac.data(), n, x.data(), n);
  if (info != 0)
    throw NumericalError("chol_solve: matrix not positive definite (dposv info=" +
                         std::to_string(info) + ")");
  return x;
}

// Reusable Cholesky factor.
class CholFactor {
 public:
  explicit CholFactor(const Eigen::MatrixXd& a) : fac_(a) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    const lapack_int info = LAPACKE_dpotrf(LAPACK_COL_MAJOR, 'L', n, fac_.data(), n);
    if (info != 0)
      throw NumericalError("CholFactor: matrix not positive definite (dpotrf info=" +
                           std::to_string(info) + ")");
  }

  void solve_in_place(Eigen::MatrixXd& rhs) const {
    const lapack_int n = static_cast<lapack_int>(fac_.rows());
    const lapack_int info = LAPACKE_dpotrs(LAPACK_COL_MAJOR, 'L', n,
                                           static_cast<lapack_int>(rhs.cols()), fac_.data(), n,
                                           rhs.data(), n);
    if (info != 0) throw NumericalError("CholFactor: dpotrs failed");
  }

 private:
  Eigen::MatrixXd fac_;
};

struct EigResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, B-orthonormal
};

// Full solve of K v = lambda M v (dsygvd); keeps the n_modes smallest.
inline EigResult sym_gen_eig_smallest(const Eigen::MatrixXd& k, const Eigen::MatrixXd& m,
                                      int n_modes) {
  const lapack_int n = static_cast<lapack_int>(k.rows());
  Eigen::MatrixXd ka = k, ma = m;
  Eigen::VectorXd w(n);
  const lapack_int info = LAPACKE_dsygvd(LAPACK_COL_MAJOR, 1, 'V', 'L', n, ka.data(), n, ma.data(),
                                         n, w.data());
  if (info != 0)
    throw NumericalError("sym_gen_eig_smallest: dsygvd failed (info=" + std::to_string(info) +
                         "); pencil not symmetric positive definite");
  n_modes = std::min<int>(n_modes, n);
  EigResult r;
  r.values = w.head(n_modes);
  r.vectors = ka.leftCols(n_modes);
  return r;
}

// Subspace iteration on K^{-1} M for the smallest modes of a large SPD
// pencil. Deterministic: fixed LCG start block, serial factorization.
inline EigResult subspace_smallest(const Eigen::MatrixXd& k, const Eigen::MatrixXd& m, int n_modes,
                                   double tol = 1e-11, int max_iter = 300) {
  const int n = static_cast<int>(k.rows());
  const int q = std::min(n, std::max(2 * n_modes, n_modes + 6));
  CholFactor kf(k);

  Eigen::MatrixXd x(n, q);
  uint64_t state = 0x9e3779b97f4a7c15ull;
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < n; ++i) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      x(i, j) = static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
    }

  Eigen::VectorXd prev = Eigen::VectorXd::Constant(n_modes, -1.0);
  for (int it = 0; it < max_iter; ++it) {
    Eigen::MatrixXd y = m * x;     // M X
    Eigen::MatrixXd z = y;
    kf.solve_in_place(z);          // Z = K^{-1} M X
    Eigen::MatrixXd my = m * z;
    Eigen::MatrixXd kr = z.transpose() * y;   // Z^T K Z
    Eigen::MatrixXd mr = z.transpose() * my;  // Z^T M Z
    kr = 0.5 * (kr + kr.transpose()).eval();
    mr = 0.5 * (mr + mr.transpose()).eval();

    Eigen::VectorXd w(q);
    const lapack_int info = LAPACKE_dsygvd(LAPACK_COL_MAJOR, 1, 'V', 'L', q, kr.data(), q,
                                           mr.data(), q, w.data());
    if (info != 0) throw NumericalError("subspace_smallest: reduced pencil breakdown");
    x = z * kr;  // Ritz vectors, M-orthonormal

    bool done = true;
    for (int i = 0; i < n_modes; ++i) {
      if (std::abs(w[i] - prev[i]) > tol * std::max(1.0, std::abs(w[i]))) done = false;
      prev[i] = w[i];
    }
    if (done) {
      EigResult r;
      r.values = w.head(n_modes);
      r.vectors = x.leftCols(n_modes);
      return r;
    }
  }
  throw NumericalError("subspace_smallest: no convergence within iteration budget");
}

}  // namespace linalg
}  // namespace fracmech
