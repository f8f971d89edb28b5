#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "epsfree/errors.hpp"
#include "epsfree/graph.hpp"

namespace epsfree {

/// Vertex cap of the exact clique solver (one machine word per vertex set).
inline constexpr std::size_t kCliqueSolverCap = 64;

struct CliqueData {
  std::size_t omega = 0;
  std::vector<std::size_t> witness;  // 0-based, ascending
};

namespace detail {

class MaxCliqueSearch {
 public:
  explicit MaxCliqueSearch(const Graph& g) : adj_(g.d(), 0) {
    for (std::size_t i = 0; i < g.d(); ++i) {
      for (std::size_t j = 0; j < g.d(); ++j) {
        if (g.adjacent(i, j)) adj_[i] |= std::uint64_t{1} << j;
      }
    }
  }

  std::uint64_t run(std::uint64_t all) {
    expand(0, all, 0);
    return best_;
  }

 private:
  // Bron–Kerbosch with Tomita pivoting, pruned by the current best size.
  void expand(std::uint64_t r, std::uint64_t p, std::uint64_t x) {
    const int r_size = std::popcount(r);
    if (p == 0 && x == 0) {
      if (r_size > best_size_) {
        best_size_ = r_size;
        best_ = r;
      }
      return;
    }
    if (r_size + std::popcount(p) <= best_size_) return;

    std::uint64_t pivot_nbrs = 0;
    int pivot_score = -1;
    for (std::uint64_t px = p | x; px != 0; px &= px - 1) {
      const int u = std::countr_zero(px);
      const int score = std::popcount(p & adj_[static_cast<std::size_t>(u)]);
      if (score > pivot_score) {
        pivot_score = score;
        pivot_nbrs = adj_[static_cast<std::size_t>(u)];
      }
    }
    for (std::uint64_t cand = p & ~pivot_nbrs; cand != 0; cand &= cand - 1) {
      const int v = std::countr_zero(cand);
      const std::uint64_t bit = std::uint64_t{1} << v;
      const std::uint64_t nbrs = adj_[static_cast<std::size_t>(v)];
      expand(r | bit, p & nbrs, x & nbrs);
      p &= ~bit;
      x |= bit;
      if (r_size + std::popcount(p) <= best_size_) return;
    }
  }

  std::vector<std::uint64_t> adj_;
  std::uint64_t best_ = 0;
  int best_size_ = 0;
};

}  // namespace detail

/// Exact clique number with a witness. Throws SizeLimitExceeded when
/// d > kCliqueSolverCap.
inline CliqueData clique_number(const Graph& g) {
  if (g.d() > kCliqueSolverCap) {
    throw SizeLimitExceeded("exact clique solver supports at most " +
                            std::to_string(kCliqueSolverCap) + " vertices, got " +
                            std::to_string(g.d()));
  }
  const std::uint64_t all =
      g.d() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.d()) - 1;
  const std::uint64_t best = detail::MaxCliqueSearch(g).run(all);
  CliqueData out;
  for (std::size_t v = 0; v < g.d(); ++v) {
    if ((best >> v) & 1U) out.witness.push_back(v);
  }
  out.omega = out.witness.size();
  return out;
}

inline bool is_clique(const Graph& g, const std::vector<std::size_t>& vertices) {
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    if (vertices[a] >= g.d()) return false;
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (!g.adjacent(vertices[a], vertices[b])) return false;
    }
  }
  return true;
}

}  // namespace epsfree
