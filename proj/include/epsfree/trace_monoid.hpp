#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "epsfree/errors.hpp"
#include "epsfree/graph.hpp"

namespace epsfree {

/// Default cap on the number of Fock basis states produced by enumeration.
inline constexpr std::size_t kDefaultBasisCap = 5'000'000;

/// A word over the 0-based alphabet {0..d-1} modulo the commutation of
/// adjacent letters, held as its lexicographically least representative.
/// Each byte of `letters` is one letter.
struct Trace {
  std::string letters;

  std::size_t size() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  std::size_t letter(std::size_t pos) const {
    return static_cast<unsigned char>(letters[pos]);
  }

  friend bool operator==(const Trace&, const Trace&) = default;
  friend auto operator<=>(const Trace& a, const Trace& b) { return a.letters <=> b.letters; }
};

/// Comma-separated 1-based letters; the empty trace prints as "0".
inline std::string to_string(const Trace& t) {
  if (t.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(to_display_index(t.letter(k)));
  }
  return out;
}

namespace detail {

inline unsigned letter_at(std::string_view w, std::size_t pos) {
  return static_cast<unsigned char>(w[pos]);
}

// Greedy extraction of the smallest letter that can be moved to the front.
// A letter occurrence can be moved to the front iff it is the first
// occurrence of that letter and every earlier letter commutes with it.
inline std::string canonical(std::string_view word, const Graph& g) {
  std::string rest(word);
  std::string out;
  out.reserve(rest.size());
  while (!rest.empty()) {
    VertexSet seen;
    std::size_t best_pos = 0;
    unsigned best = ~0U;
    for (std::size_t pos = 0; pos < rest.size(); ++pos) {
      const unsigned c = letter_at(rest, pos);
      if (!seen.test(c) && c < best && (g.neighbors(c) & seen) == seen) {
        best = c;
        best_pos = pos;
      }
      seen.set(c);
    }
    out.push_back(rest[best_pos]);
    rest.erase(best_pos, 1);
  }
  return out;
}

inline std::string encode_word(std::span<const std::size_t> word, const Graph& g) {
  std::string w;
  w.reserve(word.size());
  for (std::size_t c : word) {
    if (c >= g.d()) {
      throw LetterOutOfRange("letter " + std::to_string(to_display_index(c)) +
                             " outside 1.." + std::to_string(g.d()));
    }
    w.push_back(static_cast<char>(static_cast<unsigned char>(c)));
  }
  return w;
}

}  // namespace detail

/// Canonical form of a word of 0-based letters.
inline Trace normal_form(std::span<const std::size_t> word, const Graph& g) {
  return Trace{detail::canonical(detail::encode_word(word, g), g)};
}

inline Trace normal_form(std::initializer_list<std::size_t> word, const Graph& g) {
  return normal_form(std::span<const std::size_t>(word.begin(), word.size()), g);
}

inline bool equivalent(std::span<const std::size_t> u, std::span<const std::size_t> v,
                       const Graph& g) {
  return normal_form(u, g) == normal_form(v, g);
}

/// Position of the occurrence of `i` that can be moved to the front of `t`,
/// or npos when `i` is not an initial letter.
inline std::size_t initial_position(const Trace& t, std::size_t i, const Graph& g) {
  for (std::size_t pos = 0; pos < t.size(); ++pos) {
    const std::size_t c = t.letter(pos);
    if (c == i) return pos;
    if (!g.commute(c, i)) return std::string::npos;
  }
  return std::string::npos;
}

/// Letters i such that some representative of t starts with i, ascending.
inline std::vector<std::size_t> initial_letters(const Trace& t, const Graph& g) {
  std::vector<std::size_t> out;
  VertexSet seen;
  for (std::size_t pos = 0; pos < t.size(); ++pos) {
    const std::size_t c = t.letter(pos);
    if (!seen.test(c) && (g.neighbors(c) & seen) == seen) out.push_back(c);
    seen.set(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The trace i·t.
inline Trace prepend(std::size_t i, const Trace& t, const Graph& g) {
  std::string w;
  w.reserve(t.size() + 1);
  w.push_back(static_cast<char>(static_cast<unsigned char>(i)));
  w += t.letters;
  return Trace{detail::canonical(w, g)};
}

/// Removes the initial occurrence of `i` at `pos` and re-normalizes.
inline Trace remove_at(const Trace& t, std::size_t pos, const Graph& g) {
  std::string w = t.letters;
  w.erase(pos, 1);
  return Trace{detail::canonical(w, g)};
}

struct TraceEnumeration {
  std::vector<std::vector<Trace>> levels;  // levels[n]: traces of length n, sorted

  std::vector<std::size_t> counts() const {
    std::vector<std::size_t> c;
    c.reserve(levels.size());
    for (const auto& l : levels) c.push_back(l.size());
    return c;
  }
  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& l : levels) n += l.size();
    return n;
  }
};

/// One canonical trace per class for every length 0..max_len, built level by
/// level from prepending each letter. Throws BasisTooLarge once the running
/// total exceeds `cap`.
inline TraceEnumeration enumerate_traces(const Graph& g, std::size_t max_len,
                                         std::size_t cap = kDefaultBasisCap) {
  TraceEnumeration out;
  out.levels.push_back({Trace{}});
  std::size_t total = 1;
  if (total > cap) throw BasisTooLarge(total, cap);
  for (std::size_t n = 0; n < max_len; ++n) {
    std::unordered_set<std::string> next;
    for (const Trace& w : out.levels.back()) {
      for (std::size_t i = 0; i < g.d(); ++i) {
        if (next.insert(prepend(i, w, g).letters).second && total + next.size() > cap) {
          throw BasisTooLarge(total + next.size(), cap, n);
        }
      }
    }
    std::vector<Trace> level;
    level.reserve(next.size());
    for (auto& s : next) level.push_back(Trace{s});
    std::sort(level.begin(), level.end());
    total += level.size();
    out.levels.push_back(std::move(level));
  }
  return out;
}

/// Membership in the index set on which centred ε-free moments vanish: every
/// two equal indices are separated by a different index that does not
/// commute with them.
inline bool in_reduced_index_set(std::span<const std::size_t> tuple, const Graph& g) {
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (tuple[k] >= g.d()) {
      throw LetterOutOfRange("index " + std::to_string(to_display_index(tuple[k])) +
                             " outside 1.." + std::to_string(g.d()));
    }
  }
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    // Checking the next equal index suffices: a separator for (k, l) also
    // separates k from any later repeat.
    for (std::size_t l = k + 1; l < tuple.size(); ++l) {
      if (tuple[l] != tuple[k]) continue;
      bool separated = false;
      for (std::size_t m = k + 1; m < l && !separated; ++m) {
        separated = tuple[m] != tuple[k] && !g.commute(tuple[k], tuple[m]);
      }
      if (!separated) return false;
      break;
    }
  }
  return true;
}

}  // namespace epsfree
