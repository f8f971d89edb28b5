#pragma once

#include <algorithm>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "epsfree/errors.hpp"

namespace epsfree {

/// Largest vertex count a Graph may carry. Trace letters are stored one per
/// byte, which fixes this limit.
inline constexpr std::size_t kMaxVertices = 256;

using VertexSet = std::bitset<kMaxVertices>;
using Edge = std::pair<std::size_t, std::size_t>;

// Vertices are 0-based everywhere inside the library and in file formats;
// text meant for people shows them 1-based. These two helpers are the only
// place where the shift happens.
inline constexpr std::size_t to_display_index(std::size_t internal) noexcept {
  return internal + 1;
}
inline constexpr std::size_t from_display_index(std::size_t shown) noexcept {
  return shown - 1;
}

/// Simple undirected graph without self-loops, stored as adjacency rows.
/// An edge {i, j} means the generators i and j commute.
class Graph {
 public:
  /// Validates a square 0/1 matrix. Errors name the first offending pair
  /// in row-major order.
  static Graph from_matrix(const std::vector<std::vector<int>>& raw) {
    const std::size_t d = raw.size();
    if (d == 0) {
      throw GraphError(GraphError::Kind::BadSize, 0, 0, "graph must have at least one vertex");
    }
    if (d > kMaxVertices) {
      throw GraphError(GraphError::Kind::BadSize, d, d,
                       "graph has " + std::to_string(d) + " vertices, limit is " +
                           std::to_string(kMaxVertices));
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (raw[i].size() != d) {
        throw GraphError(GraphError::Kind::NotSquare, i, raw[i].size(),
                         "adjacency row " + std::to_string(i) + " has " +
                             std::to_string(raw[i].size()) + " entries, expected " +
                             std::to_string(d));
      }
    }
    Graph g(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const int v = raw[i][j];
        const std::string at = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        if (v != 0 && v != 1) {
          throw GraphError(GraphError::Kind::NonBinaryEntry, i, j, "non-binary entry at " + at);
        }
        if (i == j && v != 0) {
          throw GraphError(GraphError::Kind::NonZeroDiagonal, i, j, "nonzero diagonal at " + at);
        }
        // Symmetry is checked from the lower triangle, so the pair reported
        // is (i, j) with i > j.
        if (j < i && v != raw[j][i]) {
          throw GraphError(GraphError::Kind::NonSymmetric, i, j, "non-symmetric entry at " + at);
        }
        if (v == 1) g.rows_[i].set(j);
      }
    }
    return g;
  }

  /// Builds a graph from 0-based edges with i < j. Rejects self-loops,
  /// out-of-range endpoints, and duplicates.
  static Graph from_edges(std::size_t d, const std::vector<Edge>& edges) {
    if (d == 0 || d > kMaxVertices) {
      throw GraphError(GraphError::Kind::BadSize, d, d,
                       "vertex count " + std::to_string(d) + " outside [1, " +
                           std::to_string(kMaxVertices) + "]");
    }
    Graph g(d);
    for (const auto& [a, b] : edges) {
      const std::string at = "[" + std::to_string(a) + "," + std::to_string(b) + "]";
      if (a >= d || b >= d) {
        throw GraphError(GraphError::Kind::BadSize, a, b, "edge " + at + " out of range");
      }
      if (a == b) {
        throw GraphError(GraphError::Kind::NonZeroDiagonal, a, b, "self-loop edge " + at);
      }
      if (a > b) {
        throw GraphError(GraphError::Kind::NonSymmetric, a, b,
                         "edge " + at + " must be listed with i < j");
      }
      if (g.rows_[a].test(b)) {
        throw GraphError(GraphError::Kind::NonBinaryEntry, a, b, "duplicate edge " + at);
      }
      g.rows_[a].set(b);
      g.rows_[b].set(a);
    }
    return g;
  }

  std::size_t d() const noexcept { return rows_.size(); }

  bool adjacent(std::size_t i, std::size_t j) const { return rows_[i].test(j); }

  /// True when the generators i and j commute, i.e. i != j and ε_ij = 1.
  bool commute(std::size_t i, std::size_t j) const { return rows_[i].test(j); }

  const VertexSet& neighbors(std::size_t i) const { return rows_[i]; }

  std::size_t degree(std::size_t i) const { return rows_[i].count(); }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& r : rows_) total += r.count();
    return total / 2;
  }

  /// Edges with i < j, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < d(); ++i) {
      for (std::size_t j = i + 1; j < d(); ++j) {
        if (rows_[i].test(j)) out.emplace_back(i, j);
      }
    }
    return out;
  }

  std::vector<std::vector<int>> matrix() const {
    std::vector<std::vector<int>> m(d(), std::vector<int>(d(), 0));
    for (std::size_t i = 0; i < d(); ++i) {
      for (std::size_t j = 0; j < d(); ++j) m[i][j] = rows_[i].test(j) ? 1 : 0;
    }
    return m;
  }

  Graph complement() const {
    Graph g(d());
    for (std::size_t i = 0; i < d(); ++i) {
      for (std::size_t j = 0; j < d(); ++j) {
        if (i != j && !rows_[i].test(j)) g.rows_[i].set(j);
      }
    }
    return g;
  }

  /// FNV-1a over the upper triangle; identifies a graph in moment tables.
  std::string digest() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t byte) {
      h ^= byte;
      h *= 1099511628211ULL;
    };
    mix(d() & 0xff);
    mix((d() >> 8) & 0xff);
    for (const auto& [a, b] : edges()) {
      mix(a);
      mix(b);
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k) {
      out[static_cast<std::size_t>(k)] = kHex[h & 0xf];
      h >>= 4;
    }
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.rows_ == b.rows_; }

 private:
  explicit Graph(std::size_t d) : rows_(d) {}

  std::vector<VertexSet> rows_;
};

/// Enumerates every labeled graph on d vertices; the i-th bit of the mask
/// toggles the i-th upper-triangle pair in row-major order.
inline std::vector<Graph> all_labeled_graphs(std::size_t d) {
  std::vector<Edge> pairs;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
  }
  if (pairs.size() > 20) throw BadParams("too many labeled graphs to enumerate");
  std::vector<Graph> out;
  out.reserve(std::size_t{1} << pairs.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if ((mask >> b) & 1U) edges.push_back(pairs[b]);
    }
    out.push_back(Graph::from_edges(d, edges));
  }
  return out;
}

}  // namespace epsfree
