#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "epsfree/errors.hpp"
#include "epsfree/fock_space.hpp"
#include "epsfree/graph.hpp"

namespace epsfree {

using BigInt = boost::multiprecision::cpp_int;

/// Catalan numbers by C_{n+1} = Σ C_k C_{n-k}, memoized.
inline BigInt catalan(std::size_t n) {
  static std::mutex mutex;
  static std::vector<BigInt> cache{BigInt(1)};
  std::lock_guard lock(mutex);
  while (cache.size() <= n) {
    const std::size_t m = cache.size();
    BigInt next = 0;
    for (std::size_t k = 0; k < m; ++k) next += cache[k] * cache[m - 1 - k];
    cache.push_back(next);
  }
  return cache[n];
}

/// Natural log of a positive big integer, accurate to double precision.
inline double log_big(const BigInt& v) {
  if (v <= 0) throw BadParams("log of a nonpositive integer");
  const std::size_t bits = boost::multiprecision::msb(v) + 1;
  if (bits <= 53) return std::log(v.convert_to<double>());
  const std::size_t shift = bits - 53;
  const BigInt top = v >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

/// Depth that keeps a length-n word exact: a ±1 level walk of length n
/// from the vacuum back to the vacuum never climbs above ⌊n/2⌋, so the
/// components cut off by truncation could never have returned.
inline std::size_t moment_depth(std::size_t n) { return std::max<std::size_t>(1, n / 2); }

/// τ[s_{i_1} ⋯ s_{i_n}] on a prebuilt space whose depth is at least
/// moment_depth(n). Letters are 0-based; operators act right to left.
inline BigInt vacuum_moment(const FockSpace& fs, std::span<const std::size_t> word) {
  if (fs.depth() < moment_depth(word.size())) {
    throw BadParams("Fock space depth " + std::to_string(fs.depth()) +
                    " too small for a word of length " + std::to_string(word.size()));
  }
  for (std::size_t c : word) detail::check_letter(c, fs);
  // Sparse vector as parallel (state, coefficient) lists; states reached in
  // few steps from the vacuum are few.
  std::vector<std::pair<StateIndex, BigInt>> v{{0, BigInt(1)}}, next;
  for (std::size_t step = word.size(); step-- > 0;) {
    const std::size_t i = word[step];
    next.clear();
    for (const auto& [k, coef] : v) {
      if (StateIndex r = fs.create(i, k); r != kNoState) next.emplace_back(r, coef);
      if (StateIndex r = fs.annihilate(i, k); r != kNoState) next.emplace_back(r, coef);
    }
    std::sort(next.begin(), next.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    v.clear();
    for (auto& [k, coef] : next) {
      if (!v.empty() && v.back().first == k) {
        v.back().second += coef;
      } else {
        v.emplace_back(k, std::move(coef));
      }
    }
  }
  for (const auto& [k, coef] : v) {
    if (k == 0) return coef;
  }
  return 0;
}

inline BigInt vacuum_moment(const Graph& g, std::span<const std::size_t> word,
                            std::size_t cap = kDefaultBasisCap) {
  const FockSpace fs(g, moment_depth(word.size()), cap);
  return vacuum_moment(fs, word);
}

struct MomentSequence {
  std::string graph_id;
  std::vector<BigInt> values;  // values[k] = τ[(Σ s_i)^k]

  std::size_t max_order() const { return values.size() - 1; }
};

namespace detail {

template <class T>
void power_iterate_vacuum(const SumOperator& a, std::size_t max_order, MomentSequence& out) {
  std::vector<T> v(a.dim()), w(a.dim());
  v[0] = 1;
  out.values.push_back(1);
  for (std::size_t k = 1; k <= max_order; ++k) {
    a.apply<T>(v, w);
    std::swap(v, w);
    out.values.push_back(BigInt(v[0]));
  }
}

// Every entry of A^k e_0 is at most ‖A‖^k <= (2d)^k.
inline bool fits_in_int128(std::size_t d, std::size_t max_order) {
  return static_cast<double>(max_order) * std::log2(2.0 * static_cast<double>(d)) < 125.0;
}

}  // namespace detail

/// m_k = <A^k e_0, e_0> for k <= max_order, A = Σ s_i, by repeated exact
/// integer application at depth max_order/2. Runs in 128-bit integers when
/// the entries provably fit, otherwise in arbitrary precision.
inline MomentSequence sum_moments(const Graph& g, std::size_t max_order,
                                  std::size_t cap = kDefaultBasisCap) {
  auto fs = std::make_shared<const FockSpace>(g, moment_depth(max_order), cap);
  const SumOperator a(fs);
  MomentSequence out;
  out.graph_id = g.digest();
  if (detail::fits_in_int128(g.d(), max_order)) {
    detail::power_iterate_vacuum<__int128>(a, max_order, out);
  } else {
    detail::power_iterate_vacuum<BigInt>(a, max_order, out);
  }
  return out;
}

/// (m_{2n})^{1/2n}, a lower bound on ‖Σ s_i‖ for every n.
inline double moment_root(const MomentSequence& m, std::size_t order_2n) {
  if (order_2n < 2 || order_2n % 2 != 0 || order_2n > m.max_order()) {
    throw BadParams("moment root needs an even order in [2, " + std::to_string(m.max_order()) +
                    "], got " + std::to_string(order_2n));
  }
  return std::exp(log_big(m.values[order_2n]) / static_cast<double>(order_2n));
}

inline double moment_norm_lower(const Graph& g, std::size_t order_2n,
                                std::size_t cap = kDefaultBasisCap) {
  if (order_2n < 2 || order_2n % 2 != 0) {
    throw BadParams("moment order must be even and >= 2, got " + std::to_string(order_2n));
  }
  return moment_root(sum_moments(g, order_2n, cap), order_2n);
}

}  // namespace epsfree
