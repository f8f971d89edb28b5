#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "epsfree/errors.hpp"
#include "epsfree/graph.hpp"

namespace epsfree {

struct StructuralPredicates {
  bool is_connected = false;
  bool is_regular = false;
  std::optional<std::size_t> degree;  // set iff regular
};

inline StructuralPredicates structural_predicates(const Graph& g) {
  StructuralPredicates out;
  std::vector<bool> seen(g.d(), false);
  std::queue<std::size_t> frontier;
  seen[0] = true;
  frontier.push(0);
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t v = frontier.front();
    frontier.pop();
    for (std::size_t u = 0; u < g.d(); ++u) {
      if (g.adjacent(v, u) && !seen[u]) {
        seen[u] = true;
        ++reached;
        frontier.push(u);
      }
    }
  }
  out.is_connected = reached == g.d();
  out.is_regular = true;
  for (std::size_t v = 1; v < g.d(); ++v) {
    if (g.degree(v) != g.degree(0)) out.is_regular = false;
  }
  if (out.is_regular) out.degree = g.degree(0);
  return out;
}

enum class Family { Empty, Complete, Cycle, CompleteMultipartite, XyModel, ErdosRenyi };

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::Empty: return "empty";
    case Family::Complete: return "complete";
    case Family::Cycle: return "cycle";
    case Family::CompleteMultipartite: return "complete_multipartite";
    case Family::XyModel: return "xy_model";
    case Family::ErdosRenyi: return "erdos_renyi";
  }
  return "unknown";
}

inline Family parse_family(std::string_view name) {
  for (Family f : {Family::Empty, Family::Complete, Family::Cycle, Family::CompleteMultipartite,
                   Family::XyModel, Family::ErdosRenyi}) {
    if (family_name(f) == name) return f;
  }
  throw BadParams("unknown graph family '" + std::string(name) + "'");
}

namespace detail {

inline void require_size(std::size_t d, std::size_t lo, std::string_view family) {
  if (d < lo || d > kMaxVertices) {
    throw BadParams(std::string(family) + " needs " + std::to_string(lo) + " <= d <= " +
                    std::to_string(kMaxVertices) + ", got " + std::to_string(d));
  }
}

}  // namespace detail

inline Graph empty_graph(std::size_t d) {
  detail::require_size(d, 1, "empty");
  return Graph::from_edges(d, {});
}

inline Graph complete_graph(std::size_t d) {
  detail::require_size(d, 1, "complete");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) e.emplace_back(i, j);
  }
  return Graph::from_edges(d, e);
}

/// The cycle 0-1-...-(d-1)-0.
inline Graph cycle_graph(std::size_t d) {
  detail::require_size(d, 3, "cycle");
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < d; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(0, d - 1);
  return Graph::from_edges(d, e);
}

/// Parts occupy consecutive vertex blocks; vertices in different parts are
/// adjacent.
inline Graph complete_multipartite(const std::vector<std::size_t>& parts) {
  if (parts.empty()) throw BadParams("complete_multipartite needs at least one part");
  std::vector<std::size_t> part_of;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (parts[p] == 0) throw BadParams("complete_multipartite part sizes must be positive");
    part_of.insert(part_of.end(), parts[p], p);
  }
  detail::require_size(part_of.size(), 1, "complete_multipartite");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < part_of.size(); ++i) {
    for (std::size_t j = i + 1; j < part_of.size(); ++j) {
      if (part_of[i] != part_of[j]) e.emplace_back(i, j);
    }
  }
  return Graph::from_edges(part_of.size(), e);
}

/// Complement of the d-cycle: only cyclic neighbours (including 1 and d)
/// are free, every other pair commutes.
inline Graph xy_model(std::size_t d) {
  detail::require_size(d, 4, "xy_model");
  return cycle_graph(d).complement();
}

/// G(d, p) with std::mt19937_64 seeded by `seed`. Each pair i < j in
/// row-major order consumes one 64-bit draw u and is an edge iff
/// (u >> 11) * 2^-53 < p.
inline Graph erdos_renyi(std::size_t d, double p, std::uint64_t seed) {
  detail::require_size(d, 1, "erdos_renyi");
  if (!(p >= 0.0 && p <= 1.0)) throw BadParams("erdos_renyi needs 0 <= p <= 1");
  std::mt19937_64 rng(seed);
  std::vector<Edge> e;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < p) e.emplace_back(i, j);
    }
  }
  return Graph::from_edges(d, e);
}

/// Dispatches on the family. `params` holds d for empty, complete, cycle and
/// xy_model; the part sizes for complete_multipartite; d and p for
/// erdos_renyi (seed defaults to 0).
inline Graph generate_family(Family family, const std::vector<double>& params,
                             std::optional<std::uint64_t> seed = std::nullopt) {
  auto as_count = [](double v, std::string_view what) {
    if (!(v >= 0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw BadParams(std::string(what) + " must be a nonnegative integer");
    }
    return static_cast<std::size_t>(v);
  };
  auto single = [&](std::string_view fam) {
    if (params.size() != 1) throw BadParams(std::string(fam) + " takes exactly one parameter d");
    return as_count(params[0], "d");
  };
  switch (family) {
    case Family::Empty: return empty_graph(single("empty"));
    case Family::Complete: return complete_graph(single("complete"));
    case Family::Cycle: return cycle_graph(single("cycle"));
    case Family::XyModel: return xy_model(single("xy_model"));
    case Family::CompleteMultipartite: {
      std::vector<std::size_t> parts;
      for (double v : params) parts.push_back(as_count(v, "part size"));
      return complete_multipartite(parts);
    }
    case Family::ErdosRenyi:
      if (params.size() != 2) throw BadParams("erdos_renyi takes parameters d and p");
      return erdos_renyi(as_count(params[0], "d"), params[1], seed.value_or(0));
  }
  throw BadParams("unknown graph family");
}

}  // namespace epsfree
