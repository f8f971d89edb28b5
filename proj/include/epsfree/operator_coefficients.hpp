#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "epsfree/errors.hpp"
#include "epsfree/fock_space.hpp"
#include "epsfree/graph.hpp"
#include "epsfree/lanczos.hpp"
#include "epsfree/norm_bounds.hpp"
#include "epsfree/spectral_estimator.hpp"

namespace epsfree {

/// Matrix-free Σ a_i ⊗ s_i on C^k ⊗ (truncated Fock space). Vectors are
/// blocked by Fock index: entry (fock * k + coeff).
class TensorOperator {
 public:
  TensorOperator(MatrixCoefficients coeffs, std::shared_ptr<const SumOperator> sum)
      : coeffs_(std::move(coeffs)), sum_(std::move(sum)) {
    coeffs_.validate();
    if (coeffs_.matrices.size() != sum_->space().letters()) {
      throw BadParams("expected " + std::to_string(sum_->space().letters()) +
                      " coefficient matrices, got " + std::to_string(coeffs_.matrices.size()));
    }
    adjoints_.reserve(coeffs_.matrices.size());
    for (const auto& a : coeffs_.matrices) adjoints_.push_back(a.adjoint());
  }

  std::size_t coeff_dim() const noexcept { return coeffs_.k; }
  std::size_t fock_dim() const noexcept { return sum_->dim(); }
  std::size_t dim() const noexcept { return coeffs_.k * sum_->dim(); }
  const MatrixCoefficients& coefficients() const noexcept { return coeffs_; }
  const SumOperator& sum() const noexcept { return *sum_; }

  /// y = (Σ a_i ⊗ s_i) x, or the adjoint Σ a_i* ⊗ s_i when `adjoint`.
  void apply(std::span<const std::complex<double>> x, std::span<std::complex<double>> y,
             bool adjoint = false) const {
    const auto k = static_cast<Eigen::Index>(coeffs_.k);
    const auto& mats = adjoint ? adjoints_ : coeffs_.matrices;
    parallel_for(sum_->dim(), [&](std::size_t lo, std::size_t hi) {
      Eigen::VectorXcd acc(k);
      for (std::size_t r = lo; r < hi; ++r) {
        acc.setZero();
        const auto cols = sum_->row_cols(r);
        const auto lets = sum_->row_letters(r);
        for (std::size_t e = 0; e < cols.size(); ++e) {
          Eigen::Map<const Eigen::VectorXcd> xin(x.data() + cols[e] * coeffs_.k, k);
          acc.noalias() += mats[lets[e]] * xin;
        }
        Eigen::Map<Eigen::VectorXcd>(y.data() + r * coeffs_.k, k) = acc;
      }
    });
  }

 private:
  MatrixCoefficients coeffs_;
  std::vector<Eigen::MatrixXcd> adjoints_;
  std::shared_ptr<const SumOperator> sum_;
};

inline TensorOperator tensor_operator(const MatrixCoefficients& c, const Graph& g,
                                      std::size_t depth, std::size_t cap = kDefaultBasisCap) {
  if (depth < 1) throw BadParams("tensor_operator needs depth >= 1");
  auto sum = std::make_shared<const SumOperator>(std::make_shared<const FockSpace>(g, depth, cap));
  return TensorOperator(c, std::move(sum));
}

namespace detail {

inline Eigen::VectorXcd seeded_start(std::size_t n) {
  std::mt19937_64 rng(0x5eed);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    const double im = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    v(i) = {re, im};
  }
  return v;
}

}  // namespace detail

/// ‖T‖ of the truncated tensor operator, a lower bound on the untruncated
/// norm. Real scalar coefficients reuse the real Σ w_i s_i path with start
/// e_0 (so all-ones coefficients reproduce truncated_norm exactly). Every
/// other family runs Lanczos on the positive operator T*T and reports the
/// square root of its top Ritz value; residual and tol refer to T*T.
inline NormEstimate tensor_norm(const TensorOperator& t, double tol = 1e-10,
                                LanczosOptions opts = {}) {
  opts.tol = tol;
  const auto& c = t.coefficients();
  NormEstimate out;
  out.method = EstimateMethod::Lanczos;
  out.depth_or_order = t.sum().space().depth();
  LanczosResult r;
  bool squared = false;
  if (c.k == 1 && c.real()) {
    std::vector<double> w;
    for (const auto& a : c.matrices) w.push_back(a(0, 0).real());
    Eigen::VectorXd start = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(t.dim()));
    start(0) = 1.0;
    r = lanczos_max<double>(
        t.dim(),
        [&](const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y) {
          t.sum().apply_weighted(w, {x.data(), static_cast<std::size_t>(x.size())},
                                 {y.data(), static_cast<std::size_t>(y.size())});
        },
        start, opts);
  } else {
    const std::size_t n = t.dim();
    Eigen::VectorXcd tmp(static_cast<Eigen::Index>(n));
    r = lanczos_max<std::complex<double>>(
        n,
        [&](const Eigen::Ref<const Eigen::VectorXcd>& x, Eigen::Ref<Eigen::VectorXcd> y) {
          t.apply({x.data(), n}, {tmp.data(), n});
          t.apply({tmp.data(), n}, {y.data(), n}, true);
        },
        detail::seeded_start(n), opts);
    squared = true;
  }
  if (squared) r.value = std::sqrt(std::max(0.0, r.value));
  out.value = std::max(0.0, r.value);
  out.residual = r.residual;
  out.converged = r.converged;
  return out;
}

struct KhintchineCheck {
  double lhs_lower = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  double margin = 0.0;
  NormEstimate estimate;
};

/// Compares the truncated norm of Σ a_i ⊗ s_i with the right-hand side of
/// the operator-coefficient inequality.
inline KhintchineCheck khintchine_check(const MatrixCoefficients& c, const Graph& g,
                                        std::size_t depth, KhintchineVariant variant,
                                        double tol = 1e-10,
                                        std::size_t cap = kDefaultBasisCap) {
  KhintchineCheck out;
  out.rhs = khintchine_rhs(GraphInvariants::of(g), c, variant);
  out.estimate = tensor_norm(tensor_operator(c, g, depth, cap), tol);
  out.lhs_lower = out.estimate.value;
  out.satisfied = out.lhs_lower <= out.rhs + kBoundSlack;
  out.margin = out.rhs - out.lhs_lower;
  return out;
}

}  // namespace epsfree
