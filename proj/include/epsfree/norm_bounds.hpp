#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "epsfree/clique.hpp"
#include "epsfree/errors.hpp"
#include "epsfree/families.hpp"
#include "epsfree/graph.hpp"
#include "epsfree/spectral_estimator.hpp"
#include "epsfree/spectrum.hpp"

namespace epsfree {

/// Slack allowed when comparing closed-form bounds with each other.
inline constexpr double kBoundSlack = 1e-9;

/// Spectral, clique and structural data of one graph, computed once and
/// shared by every bound.
struct GraphInvariants {
  std::size_t d = 0;
  SpectralData spectrum;
  CliqueData clique;
  StructuralPredicates structure;

  static GraphInvariants of(const Graph& g) {
    return {g.d(), epsfree::spectrum(g), clique_number(g), structural_predicates(g)};
  }

  double lambda1() const { return spectrum.lambda1(); }
  double lambda2() const { return spectrum.lambda2(); }
  double omega() const { return static_cast<double>(clique.omega); }
  double dd() const { return static_cast<double>(d); }

  /// Connected, regular, and of degree below d − 1.
  bool regular_bound_applies() const {
    return structure.is_connected && structure.is_regular && structure.degree &&
           *structure.degree + 1 < d;
  }
};

// The two Khintchine constants multiply the square root of the larger Gram
// norm; the scalar bounds are the same expressions with Gram norm d, so both
// routes produce identical bits.

inline double eigen_constant(const GraphInvariants& inv) {
  return 2.0 * std::sqrt(inv.lambda1() + 1.0);
}

inline std::optional<double> regular_constant(const GraphInvariants& inv) {
  if (!inv.regular_bound_applies()) return std::nullopt;
  const double gap = inv.lambda1() - inv.lambda2();
  return 2.0 * std::sqrt(inv.dd() * (inv.lambda2() + 1.0) / (inv.dd() - gap));
}

/// 2√(d(λ1+1)).
inline double upper_eigen(const GraphInvariants& inv) {
  return eigen_constant(inv) * std::sqrt(inv.dd());
}

/// 2d√((λ2+1)/(d−(λ1−λ2))) for connected regular graphs of degree < d−1.
inline std::optional<double> upper_regular(const GraphInvariants& inv) {
  auto c = regular_constant(inv);
  if (!c) return std::nullopt;
  return *c * std::sqrt(inv.dd());
}

/// 2√(d + λ1 ω).
inline double upper_clique_eigen(const GraphInvariants& inv) {
  return 2.0 * std::sqrt(inv.dd() + inv.lambda1() * inv.omega());
}

/// 2√d, the norm in the free case.
inline double lower_free(std::size_t d) { return 2.0 * std::sqrt(static_cast<double>(d)); }

/// max(√(4ω² + d − ω), 2√d).
inline double lower_clique(const GraphInvariants& inv) {
  const double w = inv.omega();
  return std::max(std::sqrt(4.0 * w * w + inv.dd() - w), lower_free(inv.d));
}

/// 2√(2d + 2λ1 ω) for the 2d Haar unitaries λ(g_i^{±1}).
inline double haar_unitary_upper(const GraphInvariants& inv) {
  return 2.0 * std::sqrt(2.0 * inv.dd() + 2.0 * inv.lambda1() * inv.omega());
}

/// 2√(d ω), the comparison constant with all coefficients equal to 1.
inline double clique_khintchine_benchmark(const GraphInvariants& inv) {
  return 2.0 * std::sqrt(inv.dd() * inv.omega());
}

inline double upper_eigen(const Graph& g) { return upper_eigen(GraphInvariants::of(g)); }
inline std::optional<double> upper_regular(const Graph& g) {
  return upper_regular(GraphInvariants::of(g));
}
inline double upper_clique_eigen(const Graph& g) {
  return upper_clique_eigen(GraphInvariants::of(g));
}
inline double lower_clique(const Graph& g) { return lower_clique(GraphInvariants::of(g)); }
inline double haar_unitary_upper(const Graph& g) {
  return haar_unitary_upper(GraphInvariants::of(g));
}

/// Both sides of the gap identity
///   d(λ1+1)(1 − (λ1−λ2)/d) − d(λ2+1) = (λ1−λ2)(d − λ1 − 1).
struct GapIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds(double tol = kBoundSlack) const {
    return std::abs(lhs - rhs) <= tol && rhs >= -tol;
  }
};

inline GapIdentity gap_identity(const GraphInvariants& inv) {
  const double l1 = inv.lambda1(), l2 = inv.lambda2(), d = inv.dd();
  return {d * (l1 + 1.0) * (1.0 - (l1 - l2) / d) - d * (l2 + 1.0), (l1 - l2) * (d - l1 - 1.0)};
}

/// d complex k×k coefficient matrices a_1, …, a_d.
struct MatrixCoefficients {
  std::size_t k = 1;
  std::vector<Eigen::MatrixXcd> matrices;

  void validate() const {
    if (k < 1) throw BadParams("coefficient dimension k must be >= 1");
    for (std::size_t i = 0; i < matrices.size(); ++i) {
      if (static_cast<std::size_t>(matrices[i].rows()) != k ||
          static_cast<std::size_t>(matrices[i].cols()) != k) {
        throw BadParams("coefficient " + std::to_string(to_display_index(i)) + " is not " +
                        std::to_string(k) + "x" + std::to_string(k));
      }
    }
  }

  bool self_adjoint(double tol = 0.0) const {
    for (const auto& a : matrices) {
      if ((a - a.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
  }

  bool real() const {
    for (const auto& a : matrices) {
      if (a.imag().cwiseAbs().maxCoeff() != 0.0) return false;
    }
    return true;
  }

  static MatrixCoefficients scalar_ones(std::size_t d) {
    MatrixCoefficients c;
    c.k = 1;
    c.matrices.assign(d, Eigen::MatrixXcd::Ones(1, 1));
    return c;
  }
};

/// max(‖Σ a_i* a_i‖, ‖Σ a_i a_i*‖).
inline double gram_norm(const MatrixCoefficients& c) {
  c.validate();
  const auto k = static_cast<Eigen::Index>(c.k);
  Eigen::MatrixXcd col = Eigen::MatrixXcd::Zero(k, k), row = Eigen::MatrixXcd::Zero(k, k);
  for (const auto& a : c.matrices) {
    col += a.adjoint() * a;
    row += a * a.adjoint();
  }
  return std::max({0.0, hermitian_max_eigenvalue(col), hermitian_max_eigenvalue(row)});
}

enum class KhintchineVariant { Eigen, Regular };

/// Right-hand side of the operator-coefficient inequality:
/// constant(variant) · max(‖Σ a_i* a_i‖, ‖Σ a_i a_i*‖)^{1/2}.
inline double khintchine_rhs(const GraphInvariants& inv, const MatrixCoefficients& c,
                             KhintchineVariant variant) {
  if (c.matrices.size() != inv.d) {
    throw BadParams("expected " + std::to_string(inv.d) + " coefficient matrices, got " +
                    std::to_string(c.matrices.size()));
  }
  double constant = eigen_constant(inv);
  if (variant == KhintchineVariant::Regular) {
    auto rc = regular_constant(inv);
    if (!rc) {
      throw NotApplicable(
          "regular-graph bound needs a connected regular graph of degree < d - 1");
    }
    constant = *rc;
  }
  return constant * std::sqrt(gram_norm(c));
}

inline double khintchine_rhs(const Graph& g, const MatrixCoefficients& c,
                             KhintchineVariant variant) {
  return khintchine_rhs(GraphInvariants::of(g), c, variant);
}

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct BoundsReport {
  std::size_t d = 0;
  double lambda1 = 0.0;
  std::optional<double> lambda2;  // absent for d = 1
  std::size_t omega = 0;
  std::vector<std::size_t> clique_witness;
  double upper_eigen = 0.0;
  std::optional<double> upper_regular;
  double upper_clique_eigen = 0.0;
  double lower_clique = 0.0;
  double lower_free = 0.0;
  double haar_upper = 0.0;
  double benchmark_clique_khintchine = 0.0;
  GapIdentity gap;
  std::optional<NormEstimate> numerical_lower;
  std::vector<Check> flags;

  double min_upper() const {
    double m = std::min(upper_eigen, upper_clique_eigen);
    if (upper_regular) m = std::min(m, *upper_regular);
    return m;
  }

  bool all_passed() const {
    return std::all_of(flags.begin(), flags.end(), [](const Check& c) { return c.passed; });
  }
};

struct ReportOptions {
  bool numerical = false;
  EstimateBudget budget;
};

inline BoundsReport report(const Graph& g, const ReportOptions& opts = {}) {
  const GraphInvariants inv = GraphInvariants::of(g);
  BoundsReport r;
  r.d = g.d();
  r.lambda1 = inv.lambda1();
  if (g.d() > 1) r.lambda2 = inv.lambda2();
  r.omega = inv.clique.omega;
  r.clique_witness = inv.clique.witness;
  r.upper_eigen = upper_eigen(inv);
  r.upper_regular = upper_regular(inv);
  r.upper_clique_eigen = upper_clique_eigen(inv);
  r.lower_clique = lower_clique(inv);
  r.lower_free = lower_free(g.d());
  r.haar_upper = haar_unitary_upper(inv);
  r.benchmark_clique_khintchine = clique_khintchine_benchmark(inv);
  r.gap = gap_identity(inv);
  if (opts.numerical) r.numerical_lower = best_lower(g, opts.budget);

  auto flag = [&r](std::string name, bool ok, std::string detail = {}) {
    r.flags.push_back({std::move(name), ok, std::move(detail)});
  };
  const auto& ev = inv.spectrum.eigenvalues;
  const double tol = inv.spectrum.tolerance;
  double trace = 0.0;
  for (double e : ev) trace += e;
  flag("spectrum_trace_zero", std::abs(trace) <= tol);
  flag("spectrum_range",
       ev.back() >= -(inv.dd() - 1.0) - tol && ev.front() <= inv.dd() - 1.0 + tol);
  flag("clique_witness", is_clique(g, inv.clique.witness) && inv.clique.omega >= 1 &&
                             inv.clique.omega <= g.d());
  flag("wilf", inv.dd() / (inv.dd() - inv.lambda1()) <= inv.omega() + kBoundSlack);
  flag("lower_free_le_lower_clique", r.lower_free <= r.lower_clique);
  if (r.upper_regular) {
    flag("regular_le_eigen", *r.upper_regular <= r.upper_eigen + kBoundSlack);
  }
  flag("gap_identity", r.gap.holds());
  flag("clique_eigen_le_benchmark",
       r.upper_clique_eigen <= r.benchmark_clique_khintchine + kBoundSlack);
  double lower = r.lower_clique;
  if (r.numerical_lower) lower = std::max(lower, r.numerical_lower->value);
  flag("sandwich", lower <= r.min_upper() + kBoundSlack);
  return r;
}

}  // namespace epsfree
