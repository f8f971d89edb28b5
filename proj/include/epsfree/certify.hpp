#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "epsfree/fock_space.hpp"
#include "epsfree/graph.hpp"
#include "epsfree/moments.hpp"
#include "epsfree/norm_bounds.hpp"
#include "epsfree/spectral_estimator.hpp"
#include "epsfree/trace_monoid.hpp"

namespace epsfree {

struct CertifyOptions {
  std::size_t commutation_depth = 4;
  std::size_t vanishing_length = 4;
  std::size_t marginal_order = 8;  // checks τ[s_i^{2n}] for 2n <= this
  std::size_t moment_order = 12;
  EstimateBudget budget{6, 12, 10000, 1e-10, kDefaultBasisCap};
};

struct CertifyResult {
  BoundsReport report;
  std::vector<Check> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

namespace detail {

// Calls fn on every tuple over {0..d-1} of length exactly n.
template <class Fn>
void for_each_tuple(std::size_t d, std::size_t n, Fn&& fn) {
  std::vector<std::size_t> t(n, 0);
  while (true) {
    fn(std::span<const std::size_t>(t));
    std::size_t pos = n;
    while (pos > 0 && ++t[pos - 1] == d) t[--pos] = 0;
    if (pos == 0) return;
  }
}

}  // namespace detail

/// Runs every structural, algebraic and numerical invariant on one graph.
inline CertifyResult certify(const Graph& g, const CertifyOptions& opts = {}) {
  CertifyResult out;
  ReportOptions ropts;
  ropts.numerical = true;
  ropts.budget = opts.budget;
  out.report = report(g, ropts);
  for (const auto& f : out.report.flags) out.checks.push_back({"report." + f.name, f.passed, {}});

  auto add = [&out](std::string name, bool ok, std::string detail = {}) {
    out.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  {
    const FockSpace fs(g, opts.commutation_depth, opts.budget.cap);
    long worst = 0;
    for (std::size_t i = 0; i < g.d(); ++i) {
      for (std::size_t j = 0; j < g.d(); ++j) worst = std::max(worst, check_commutation(i, j, fs));
    }
    add("commutation_relation", worst == 0, "max residual " + std::to_string(worst));
  }

  {
    const std::size_t order = opts.marginal_order - opts.marginal_order % 2;
    const FockSpace fs(g, moment_depth(std::max<std::size_t>(order, opts.vanishing_length)),
                       opts.budget.cap);
    bool ok = true;
    for (std::size_t i = 0; i < g.d() && ok; ++i) {
      for (std::size_t n = 1; 2 * n <= order && ok; ++n) {
        const std::vector<std::size_t> word(2 * n, i);
        ok = vacuum_moment(fs, word) == catalan(n);
      }
    }
    add("marginal_semicircle", ok);

    std::size_t tested = 0;
    bool vanish = true;
    for (std::size_t n = 1; n <= opts.vanishing_length && vanish; ++n) {
      detail::for_each_tuple(g.d(), n, [&](std::span<const std::size_t> t) {
        if (!vanish || !in_reduced_index_set(t, g)) return;
        ++tested;
        vanish = vacuum_moment(fs, t) == 0;
      });
    }
    add("epsilon_freeness_vanishing", vanish, std::to_string(tested) + " tuples");
  }

  {
    const MomentSequence m = sum_moments(g, opts.moment_order, opts.budget.cap);
    bool parity = m.values[0] == 1;
    bool monotone = true;
    bool free_min = true;
    double prev = 0.0;
    for (std::size_t k = 1; k <= m.max_order(); ++k) {
      if (k % 2 == 1) {
        parity = parity && m.values[k] == 0;
        continue;
      }
      const double root = moment_root(m, k);
      monotone = monotone && root >= prev * (1.0 - 1e-12);
      prev = root;
      const BigInt free_value = boost::multiprecision::pow(BigInt(g.d()),
                                                           static_cast<unsigned>(k / 2)) *
                                catalan(k / 2);
      free_min = free_min && m.values[k] >= free_value;
    }
    add("moment_parity", parity);
    add("moment_root_monotone", monotone);
    add("free_minimality", free_min);
  }

  {
    bool monotone = true;
    double prev = 0.0;
    for (std::size_t depth = 1; depth <= opts.budget.max_depth; ++depth) {
      NormEstimate e;
      try {
        e = truncated_norm(g, depth, opts.budget.tol, opts.budget.cap);
      } catch (const BasisTooLarge&) {
        break;
      }
      monotone = monotone && e.value >= prev - 1e-8;
      prev = e.value;
    }
    add("lanczos_monotone_in_depth", monotone);
  }

  const double best = out.report.numerical_lower ? out.report.numerical_lower->value : 0.0;
  add("best_lower_le_uppers", best <= out.report.min_upper() + kBoundSlack,
      std::to_string(best) + " <= " + std::to_string(out.report.min_upper()));
  return out;
}

}  // namespace epsfree
