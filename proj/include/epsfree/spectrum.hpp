#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "epsfree/errors.hpp"
#include "epsfree/graph.hpp"

namespace epsfree {

/// Relative tolerance of the dense symmetric eigensolver.
inline constexpr double kEigenTolerance = 1e-10;

struct SpectralData {
  std::vector<double> eigenvalues;  // descending
  double tolerance = kEigenTolerance;

  double lambda1() const { return eigenvalues.front(); }
  /// Second largest eigenvalue; for d = 1 there is none and λ1 is returned.
  double lambda2() const { return eigenvalues.size() > 1 ? eigenvalues[1] : eigenvalues[0]; }
};

/// Eigenvalues of a real symmetric matrix, descending. Householder
/// tridiagonalization followed by implicit QL iterations.
inline std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw SolverFailure("dense symmetric eigensolver did not converge");
  }
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// Largest eigenvalue of a Hermitian matrix; for positive semidefinite
/// Gram matrices this is the operator norm.
inline double hermitian_max_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw SolverFailure("dense Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues().maxCoeff();
}

inline Eigen::MatrixXd adjacency_matrix(const Graph& g) {
  const auto d = static_cast<Eigen::Index>(g.d());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (const auto& [i, j] : g.edges()) {
    a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return a;
}

inline SpectralData spectrum(const Graph& g) {
  SpectralData out;
  out.eigenvalues = symmetric_eigenvalues(adjacency_matrix(g));
  out.tolerance = kEigenTolerance * std::max<double>(1.0, static_cast<double>(g.d()));
  return out;
}

/// Eigenvector of the largest adjacency eigenvalue, normalized with a
/// nonnegative sum.
inline std::vector<double> perron_vector(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency_matrix(g));
  if (solver.info() != Eigen::Success) {
    throw SolverFailure("dense symmetric eigensolver did not converge");
  }
  Eigen::VectorXd v = solver.eigenvectors().col(solver.eigenvalues().size() - 1);
  if (v.sum() < 0) v = -v;
  return {v.data(), v.data() + v.size()};
}

}  // namespace epsfree
