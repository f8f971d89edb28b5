#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "epsfree/errors.hpp"

namespace epsfree {

struct LanczosOptions {
  double tol = 1e-10;
  std::size_t krylov_cap = 400;
  std::size_t max_restarts = 30;
  std::size_t memory_budget_bytes = std::size_t{1} << 30;
  std::size_t check_every = 5;
};

struct LanczosResult {
  double value = 0.0;     // largest Ritz value found
  double residual = 0.0;  // ‖A y − θ y‖ of the returned Ritz pair
  bool converged = false;
  std::size_t iterations = 0;
};

namespace detail {

template <class Scalar>
double real_part(Scalar s) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return s;
  } else {
    return s.real();
  }
}

}  // namespace detail

/// Largest eigenvalue of a self-adjoint operator given only by its action.
///
/// Lanczos with full (twice-applied classical Gram–Schmidt)
/// reorthogonalization. When the Krylov basis reaches its cap the process
/// restarts from the current top Ritz vector. Ritz values never exceed the
/// largest eigenvalue, so the result is a lower bound even when the run
/// stops before convergence.
template <class Scalar, class MatVec>
LanczosResult lanczos_max(std::size_t n, MatVec&& apply,
                          const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& start,
                          const LanczosOptions& opts = {}) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  LanczosResult result;
  if (n == 0) {
    result.converged = true;
    return result;
  }
  const std::size_t by_memory =
      opts.memory_budget_bytes / std::max<std::size_t>(1, n * sizeof(Scalar));
  const std::size_t cap =
      std::max<std::size_t>(2, std::min({opts.krylov_cap, n, std::max<std::size_t>(by_memory, 8)}));

  Vec q = start;
  if (q.norm() == 0.0) throw BadParams("Lanczos start vector is zero");
  q /= q.norm();
  bool have_value = false;

  for (std::size_t restart = 0; restart <= opts.max_restarts; ++restart) {
    Mat basis(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cap));
    std::vector<double> alpha, beta;
    basis.col(0) = q;
    Vec w(static_cast<Eigen::Index>(n));
    Eigen::VectorXd ritz_vec;
    double theta = 0.0;
    bool done = false;

    for (std::size_t j = 0; j < cap; ++j) {
      apply(basis.col(static_cast<Eigen::Index>(j)), w);
      ++result.iterations;
      const double a = detail::real_part(basis.col(static_cast<Eigen::Index>(j)).dot(w));
      alpha.push_back(a);
      const auto cols = static_cast<Eigen::Index>(j + 1);
      for (int pass = 0; pass < 2; ++pass) {
        const Vec h = basis.leftCols(cols).adjoint() * w;
        w.noalias() -= basis.leftCols(cols) * h;
      }
      const double b = w.norm();

      const bool last = j + 1 == cap;
      const bool exhausted = b <= 1e-13 * std::max(1.0, std::abs(a));
      if (last || exhausted || (j + 1) % opts.check_every == 0) {
        Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), cols);
        Eigen::VectorXd sub = Eigen::VectorXd::Zero(std::max<Eigen::Index>(cols - 1, 0));
        for (Eigen::Index k = 0; k + 1 < cols; ++k) sub(k) = beta[static_cast<std::size_t>(k)];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        if (tri.info() != Eigen::Success) throw SolverFailure("tridiagonal eigensolver failed");
        const Eigen::Index top = cols - 1;
        theta = tri.eigenvalues()(top);
        ritz_vec = tri.eigenvectors().col(top);
        const double res = exhausted ? 0.0 : b * std::abs(ritz_vec(top));
        if (!have_value || theta > result.value) result.value = theta;
        have_value = true;
        result.residual = res;
        if (exhausted || res <= opts.tol * std::max(1.0, std::abs(theta))) {
          result.converged = true;
          done = true;
          break;
        }
        if (last) break;
      }
      beta.push_back(b);
      basis.col(static_cast<Eigen::Index>(j + 1)) = w / b;
    }
    if (done) break;
    // Restart from the top Ritz vector of this cycle.
    const auto used = static_cast<Eigen::Index>(ritz_vec.size());
    q = basis.leftCols(used) * ritz_vec.template cast<Scalar>();
    q /= q.norm();
  }
  return result;
}

}  // namespace epsfree
