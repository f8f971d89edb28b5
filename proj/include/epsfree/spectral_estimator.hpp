#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "epsfree/clique.hpp"
#include "epsfree/errors.hpp"
#include "epsfree/fock_space.hpp"
#include "epsfree/graph.hpp"
#include "epsfree/lanczos.hpp"
#include "epsfree/moments.hpp"

namespace epsfree {

enum class EstimateMethod { Lanczos, MomentRoot, CliqueVector };

inline std::string_view method_name(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::Lanczos: return "lanczos";
    case EstimateMethod::MomentRoot: return "moment_root";
    case EstimateMethod::CliqueVector: return "clique_vector";
  }
  return "unknown";
}

inline EstimateMethod parse_method(std::string_view name) {
  for (auto m : {EstimateMethod::Lanczos, EstimateMethod::MomentRoot,
                 EstimateMethod::CliqueVector}) {
    if (method_name(m) == name) return m;
  }
  throw BadParams("unknown estimation method '" + std::string(name) + "'");
}

/// A certified lower bound on ‖Σ s_i‖.
struct NormEstimate {
  double value = 0.0;
  EstimateMethod method = EstimateMethod::Lanczos;
  std::size_t depth_or_order = 0;
  bool certified_lower = true;
  double residual = 0.0;
  bool converged = true;
};

/// Largest eigenvalue of Σ s_i compressed to levels <= depth, via Lanczos
/// from e_0. The operator moves every state one level up or down, so its
/// spectrum is symmetric and the largest eigenvalue is the norm.
inline NormEstimate truncated_norm(const SumOperator& a, double tol = 1e-10,
                                   LanczosOptions opts = {}) {
  opts.tol = tol;
  const auto n = static_cast<Eigen::Index>(a.dim());
  Eigen::VectorXd start = Eigen::VectorXd::Zero(n);
  start(0) = 1.0;
  const LanczosResult r = lanczos_max<double>(
      a.dim(),
      [&a](const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y) {
        a.apply<double>(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
                        std::span<double>(y.data(), static_cast<std::size_t>(y.size())));
      },
      start, opts);
  NormEstimate out;
  out.value = std::max(0.0, r.value);
  out.method = EstimateMethod::Lanczos;
  out.depth_or_order = a.space().depth();
  out.residual = r.residual;
  out.converged = r.converged;
  return out;
}

inline NormEstimate truncated_norm(const Graph& g, std::size_t depth, double tol = 1e-10,
                                   std::size_t cap = kDefaultBasisCap) {
  if (depth < 1) throw BadParams("truncated_norm needs depth >= 1");
  if (!(tol > 0)) throw BadParams("truncated_norm needs tol > 0");
  const SumOperator a(std::make_shared<const FockSpace>(g, depth, cap));
  return truncated_norm(a, tol);
}

/// Dense reference for small truncations: all eigenvalues of Σ s_i,
/// descending.
inline std::vector<double> dense_truncated_spectrum(const SumOperator& a) {
  const auto n = static_cast<Eigen::Index>(a.dim());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (StateIndex c : a.row_cols(r)) m(static_cast<Eigen::Index>(r), c) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw SolverFailure("dense eigensolver failed");
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// Exact squared norms behind the clique test vector
/// ξ_N = Σ_{1<=j_m<=N} e_{i_1^{j_1} ⋯ i_k^{j_k}}.
struct CliqueVectorNorms {
  BigInt xi_sq;     // ‖ξ_N‖²
  BigInt image_sq;  // ‖(Σ_i s_i) ξ_N‖²
};

/// The clique letters commute, so clique words are indexed by exponent
/// vectors and ξ_N is the indicator f of [1, N]^k. Each s_{i_m} acts on the
/// m-th exponent only, giving h(t) = f(t−1) + f(t+1) on that axis, and every
/// non-clique letter maps ξ_N isometrically onto words that contain it,
/// orthogonal to everything else. Summing the 1-D profiles gives
///   ‖Σ_m s_{i_m} ξ‖² = k·Σh²·N^{k−1} + k(k−1)·(Σhf)²·N^{k−2}
/// and the non-clique part adds (d − k)·N^k.
inline CliqueVectorNorms clique_vector_norms(std::size_t d, std::size_t k, std::size_t big_n) {
  BigInt sum_hh = 0, sum_hf = 0;
  auto f = [big_n](std::size_t t) -> long { return t >= 1 && t <= big_n ? 1 : 0; };
  for (std::size_t t = 0; t <= big_n + 1; ++t) {
    const long h = (t >= 1 ? f(t - 1) : 0) + f(t + 1);
    sum_hh += h * h;
    sum_hf += h * f(t);
  }
  const BigInt n = big_n;
  CliqueVectorNorms out;
  out.xi_sq = boost::multiprecision::pow(n, static_cast<unsigned>(k));
  BigInt clique_part = BigInt(k) * sum_hh * boost::multiprecision::pow(n, static_cast<unsigned>(k - 1));
  if (k >= 2) {
    clique_part += BigInt(k) * BigInt(k - 1) * sum_hf * sum_hf *
                   boost::multiprecision::pow(n, static_cast<unsigned>(k - 2));
  }
  out.image_sq = clique_part + BigInt(d - k) * out.xi_sq;
  return out;
}

/// ‖(Σ s_i) ξ_N‖ / ‖ξ_N‖ for the clique test vector, evaluated exactly as a
/// ratio of integers before the final square root.
inline NormEstimate clique_vector_bound(const Graph& g, const std::vector<std::size_t>& clique,
                                        std::size_t big_n) {
  if (clique.empty()) throw NotAClique("clique must be nonempty");
  std::vector<std::size_t> sorted = clique;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || !is_clique(g, sorted)) {
    throw NotAClique("vertex set is not a clique of the graph");
  }
  if (big_n < 2) throw BadParams("clique_vector_bound needs N >= 2");
  const CliqueVectorNorms norms = clique_vector_norms(g.d(), sorted.size(), big_n);
  const boost::multiprecision::cpp_rational ratio(norms.image_sq, norms.xi_sq);
  NormEstimate out;
  out.value = std::sqrt(ratio.convert_to<double>());
  out.method = EstimateMethod::CliqueVector;
  out.depth_or_order = big_n;
  return out;
}

/// Limit of clique_vector_bound as N grows: √(4k² + d − k).
inline double clique_vector_limit(std::size_t d, std::size_t k) {
  const double kk = static_cast<double>(k);
  return std::sqrt(4.0 * kk * kk + static_cast<double>(d) - kk);
}

struct EstimateBudget {
  std::size_t max_depth = 8;
  std::size_t max_order = 16;
  std::size_t max_n = 10000;
  double tol = 1e-10;
  std::size_t cap = kDefaultBasisCap;
};

namespace detail {

// Runs fn at the largest parameter <= requested whose basis fits the cap.
// `for_depth` maps a depth known to fit to the largest parameter it allows.
template <class Fn, class ForDepth>
NormEstimate shrink_until_fits(std::size_t requested, std::size_t floor, Fn&& fn,
                               ForDepth&& for_depth) {
  for (std::size_t p = requested;;) {
    try {
      return fn(p);
    } catch (const BasisTooLarge& e) {
      const std::size_t next = std::min(p - 1, for_depth(e.fitting_depth()));
      if (next < floor) throw;
      p = next;
    }
  }
}

}  // namespace detail

/// Best of the three lower-bound methods within the budget. Depth and
/// moment order shrink when the basis would exceed the cap.
inline NormEstimate best_lower(const Graph& g, const EstimateBudget& budget) {
  if (budget.max_depth < 1 || budget.max_order < 2 || budget.max_n < 2) {
    throw BadParams("estimate budgets must be positive (depth >= 1, order >= 2, N >= 2)");
  }
  std::vector<NormEstimate> candidates;
  candidates.push_back(detail::shrink_until_fits(
      budget.max_depth, 1,
      [&](std::size_t depth) { return truncated_norm(g, depth, budget.tol, budget.cap); },
      [](std::size_t depth) { return depth; }));
  const std::size_t order = budget.max_order - budget.max_order % 2;
  candidates.push_back(detail::shrink_until_fits(
      order, 2,
      [&](std::size_t o) {
        o -= o % 2;
        NormEstimate e;
        e.value = moment_norm_lower(g, o, budget.cap);
        e.method = EstimateMethod::MomentRoot;
        e.depth_or_order = o;
        return e;
      },
      [](std::size_t depth) { return 2 * depth; }));
  if (g.d() <= kCliqueSolverCap) {
    candidates.push_back(clique_vector_bound(g, clique_number(g).witness, budget.max_n));
  }
  return *std::max_element(candidates.begin(), candidates.end(),
                           [](const auto& a, const auto& b) { return a.value < b.value; });
}

}  // namespace epsfree
