#pragma once

// Brute-force oracles shared by the unit and acceptance suites. Nothing in
// here calls the library's normal forms, Fock space or moment code.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <vector>

#include "epsfree/graph.hpp"

namespace epsfree::testing {

using Word = std::vector<std::size_t>;

/// Every word reachable from w by swapping adjacent commuting letters.
inline std::set<Word> orbit(const Word& w, const Graph& g) {
  std::set<Word> seen{w};
  std::queue<Word> todo;
  todo.push(w);
  while (!todo.empty()) {
    Word u = todo.front();
    todo.pop();
    for (std::size_t p = 0; p + 1 < u.size(); ++p) {
      if (u[p] != u[p + 1] && g.adjacent(u[p], u[p + 1])) {
        Word v = u;
        std::swap(v[p], v[p + 1]);
        if (seen.insert(v).second) todo.push(v);
      }
    }
  }
  return seen;
}

inline Word orbit_min(const Word& w, const Graph& g) { return *orbit(w, g).begin(); }

/// All words of length n over {0..d-1}.
inline std::vector<Word> all_words(std::size_t d, std::size_t n) {
  std::vector<Word> out;
  Word w(n, 0);
  while (true) {
    out.push_back(w);
    std::size_t pos = n;
    while (pos > 0 && ++w[pos - 1] == d) w[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

/// Number of ∼ classes of length n, by orbit enumeration.
inline std::size_t brute_class_count(const Graph& g, std::size_t n) {
  std::set<Word> reps;
  for (const auto& w : all_words(g.d(), n)) reps.insert(orbit_min(w, g));
  return reps.size();
}

/// Vacuum moment on a Fock space whose states are orbit minima computed by
/// exhaustive swapping, with creation/annihilation read off the orbit.
inline long brute_vacuum_moment(const Graph& g, const Word& word) {
  std::map<Word, long> v{{Word{}, 1}};
  for (std::size_t step = word.size(); step-- > 0;) {
    const std::size_t i = word[step];
    std::map<Word, long> next;
    for (const auto& [w, c] : v) {
      Word up{i};
      up.insert(up.end(), w.begin(), w.end());
      next[orbit_min(up, g)] += c;
      for (const Word& rep : orbit(w, g)) {
        if (!rep.empty() && rep.front() == i) {
          next[orbit_min(Word(rep.begin() + 1, rep.end()), g)] += c;
          break;
        }
      }
    }
    v.clear();
    for (auto& [w, c] : next) {
      if (c != 0) v[w] = c;
    }
  }
  auto it = v.find(Word{});
  return it == v.end() ? 0 : it->second;
}

/// All pair partitions of {0..2n-1} as lists of (opener, closer).
inline void for_each_pairing(std::size_t m,
                             const std::function<void(const std::vector<std::pair<int, int>>&)>& fn) {
  std::vector<int> open;
  std::vector<std::pair<int, int>> pairs;
  std::vector<bool> used(m, false);
  std::function<void()> rec = [&]() {
    auto first = std::find(used.begin(), used.end(), false);
    if (first == used.end()) {
      fn(pairs);
      return;
    }
    const int a = static_cast<int>(first - used.begin());
    used[a] = true;
    for (int b = a + 1; b < static_cast<int>(m); ++b) {
      if (used[b]) continue;
      used[b] = true;
      pairs.emplace_back(a, b);
      rec();
      pairs.pop_back();
      used[b] = false;
    }
    used[a] = false;
  };
  if (m % 2 == 0) rec();
}

inline bool crosses(std::pair<int, int> p, std::pair<int, int> q) {
  return (p.first < q.first && q.first < p.second && p.second < q.second) ||
         (q.first < p.first && p.first < q.second && q.second < p.second);
}

/// τ[s_{w_1}⋯s_{w_m}] for free (all pairings non-crossing) or classically
/// independent (only same-letter pairs must not cross) semicircles, by
/// counting monochromatic pair partitions.
inline long pairing_moment(const Word& w, bool classical) {
  long count = 0;
  for_each_pairing(w.size(), [&](const std::vector<std::pair<int, int>>& pairs) {
    for (const auto& p : pairs) {
      if (w[static_cast<std::size_t>(p.first)] != w[static_cast<std::size_t>(p.second)]) return;
    }
    for (std::size_t a = 0; a < pairs.size(); ++a) {
      for (std::size_t b = a + 1; b < pairs.size(); ++b) {
        if (!crosses(pairs[a], pairs[b])) continue;
        const bool same = w[static_cast<std::size_t>(pairs[a].first)] ==
                          w[static_cast<std::size_t>(pairs[b].first)];
        if (!classical || same) return;
      }
    }
    ++count;
  });
  return count;
}

/// Clique number by checking every vertex subset.
inline std::size_t brute_clique_number(const Graph& g) {
  std::size_t best = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << g.d()); ++mask) {
    bool ok = true;
    for (std::size_t a = 0; a < g.d() && ok; ++a) {
      if (!((mask >> a) & 1U)) continue;
      for (std::size_t b = a + 1; b < g.d() && ok; ++b) {
        if (((mask >> b) & 1U) && !g.adjacent(a, b)) ok = false;
      }
    }
    if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcountll(mask)));
  }
  return best;
}

/// Coefficients (constant term first) of det(x I − A) for a small integer
/// matrix, by expanding the Leibniz formula over all permutations.
inline std::vector<long> characteristic_polynomial(const std::vector<std::vector<int>>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<long> total(n + 1, 0);
  do {
    long sign = 1;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (perm[i] > perm[j]) sign = -sign;
      }
    }
    std::vector<long> poly{1};
    for (std::size_t i = 0; i < n; ++i) {
      // entry (x δ − a)
      std::vector<long> factor{-static_cast<long>(a[i][perm[i]]), perm[i] == i ? 1L : 0L};
      std::vector<long> next(poly.size() + 1, 0);
      for (std::size_t p = 0; p < poly.size(); ++p) {
        next[p] += poly[p] * factor[0];
        next[p + 1] += poly[p] * factor[1];
      }
      poly = next;
    }
    for (std::size_t p = 0; p < poly.size() && p <= n; ++p) total[p] += sign * poly[p];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace epsfree::testing
