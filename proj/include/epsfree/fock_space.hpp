#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "epsfree/errors.hpp"
#include "epsfree/graph.hpp"
#include "epsfree/parallel.hpp"
#include "epsfree/trace_monoid.hpp"

namespace epsfree {

using StateIndex = std::uint32_t;
inline constexpr StateIndex kNoState = std::numeric_limits<StateIndex>::max();

/// Traces of length <= depth, ordered by length and then lexicographically.
class FockBasis {
 public:
  FockBasis(const Graph& g, std::size_t depth, std::size_t cap = kDefaultBasisCap)
      : depth_(depth) {
    TraceEnumeration e = enumerate_traces(g, depth, cap);
    states_.reserve(e.total());
    for (auto& level : e.levels) {
      level_offsets_.push_back(states_.size());
      for (auto& t : level) states_.push_back(std::move(t));
    }
    level_offsets_.push_back(states_.size());
    index_.reserve(states_.size());
    for (std::size_t k = 0; k < states_.size(); ++k) {
      index_.emplace(states_[k].letters, static_cast<StateIndex>(k));
    }
  }

  std::size_t depth() const noexcept { return depth_; }
  std::size_t dim() const noexcept { return states_.size(); }
  const std::vector<Trace>& states() const noexcept { return states_; }
  const Trace& state(std::size_t k) const { return states_[k]; }

  /// Start index of each length 0..depth, plus dim() at the end.
  const std::vector<std::size_t>& level_offsets() const noexcept { return level_offsets_; }

  std::size_t level_of(std::size_t k) const { return states_[k].size(); }

  StateIndex index(const Trace& t) const {
    auto it = index_.find(t.letters);
    return it == index_.end() ? kNoState : it->second;
  }

 private:
  std::size_t depth_;
  std::vector<Trace> states_;
  std::vector<std::size_t> level_offsets_;
  std::unordered_map<std::string, StateIndex> index_;
};

/// Real sparse matrix in coordinate form, sorted by (col, row).
struct SparseOperator {
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  std::size_t dim = 0;
  std::vector<Entry> entries;
  bool symmetric = false;

  std::vector<double> apply(std::span<const double> x) const {
    std::vector<double> y(dim, 0.0);
    for (const auto& e : entries) y[e.row] += e.value * x[e.col];
    return y;
  }
};

/// Coordinate text dump: one "row col value" line per entry, 0-based.
inline void write_coordinate(std::ostream& os, const SparseOperator& op) {
  for (const auto& e : op.entries) os << e.row << ' ' << e.col << ' ' << e.value << '\n';
}

/// Truncated ε-Fock space with the action of every l_i and l_i* stored as
/// one target index per basis state (each column has at most one 1).
class FockSpace {
 public:
  FockSpace(const Graph& g, std::size_t depth, std::size_t cap = kDefaultBasisCap)
      : graph_(g), basis_(g, depth, cap) {
    const std::size_t d = g.d();
    const std::size_t dim = basis_.dim();
    const std::size_t interior = basis_.level_offsets()[depth];
    create_.assign(d, std::vector<StateIndex>(dim, kNoState));
    annihilate_.assign(d, std::vector<StateIndex>(dim, kNoState));
    for (std::size_t k = 0; k < dim; ++k) {
      const Trace& w = basis_.state(k);
      if (k < interior) {
        for (std::size_t i = 0; i < d; ++i) create_[i][k] = basis_.index(prepend(i, w, g));
      }
      for (std::size_t i : initial_letters(w, g)) {
        annihilate_[i][k] = basis_.index(remove_at(w, initial_position(w, i, g), g));
      }
    }
  }

  const Graph& graph() const noexcept { return graph_; }
  const FockBasis& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return basis_.dim(); }
  std::size_t depth() const noexcept { return basis_.depth(); }
  std::size_t letters() const noexcept { return graph_.d(); }

  /// Index of l_i e_k, or kNoState when e_k sits on the top level.
  StateIndex create(std::size_t i, std::size_t k) const { return create_[i][k]; }
  /// Index of l_i* e_k, or kNoState when i is not an initial letter of e_k.
  StateIndex annihilate(std::size_t i, std::size_t k) const { return annihilate_[i][k]; }

 private:
  Graph graph_;
  FockBasis basis_;
  std::vector<std::vector<StateIndex>> create_;
  std::vector<std::vector<StateIndex>> annihilate_;
};

namespace detail {

inline void check_letter(std::size_t i, const FockSpace& fs) {
  if (i >= fs.letters()) {
    throw LetterOutOfRange("letter " + std::to_string(to_display_index(i)) + " outside 1.." +
                           std::to_string(fs.letters()));
  }
}

inline SparseOperator from_map(const FockSpace& fs, std::size_t i, bool creation) {
  SparseOperator op;
  op.dim = fs.dim();
  for (std::size_t k = 0; k < fs.dim(); ++k) {
    const StateIndex r = creation ? fs.create(i, k) : fs.annihilate(i, k);
    if (r != kNoState) op.entries.push_back({r, k, 1.0});
  }
  return op;
}

}  // namespace detail

inline SparseOperator creation_operator(std::size_t i, const FockSpace& fs) {
  detail::check_letter(i, fs);
  return detail::from_map(fs, i, true);
}

inline SparseOperator annihilation_operator(std::size_t i, const FockSpace& fs) {
  detail::check_letter(i, fs);
  return detail::from_map(fs, i, false);
}

/// s_i = l_i + l_i*, compressed to the truncated space (symmetric).
inline SparseOperator semicircle_operator(std::size_t i, const FockSpace& fs) {
  detail::check_letter(i, fs);
  SparseOperator op;
  op.dim = fs.dim();
  op.symmetric = true;
  for (std::size_t k = 0; k < fs.dim(); ++k) {
    // The annihilation target has a lower level than the creation target,
    // so it also has the smaller index.
    if (StateIndex r = fs.annihilate(i, k); r != kNoState) op.entries.push_back({r, k, 1.0});
    if (StateIndex r = fs.create(i, k); r != kNoState) op.entries.push_back({r, k, 1.0});
  }
  return op;
}

/// Row-compressed Σ_i w_i s_i on a FockSpace. Every nonzero belongs to
/// exactly one letter, recorded per entry, so arbitrary per-letter weights
/// can be applied without rebuilding.
class SumOperator {
 public:
  explicit SumOperator(std::shared_ptr<const FockSpace> fs) : fs_(std::move(fs)) {
    const std::size_t dim = fs_->dim();
    row_ptr_.reserve(dim + 1);
    row_ptr_.push_back(0);
    std::vector<std::pair<StateIndex, std::uint8_t>> row;
    for (std::size_t r = 0; r < dim; ++r) {
      row.clear();
      // Symmetric: row r holds the images of column r.
      for (std::size_t i = 0; i < fs_->letters(); ++i) {
        if (StateIndex c = fs_->annihilate(i, r); c != kNoState) row.emplace_back(c, i);
        if (StateIndex c = fs_->create(i, r); c != kNoState) row.emplace_back(c, i);
      }
      std::sort(row.begin(), row.end());
      for (auto [c, i] : row) {
        cols_.push_back(c);
        letter_.push_back(i);
      }
      row_ptr_.push_back(cols_.size());
    }
  }

  const FockSpace& space() const noexcept { return *fs_; }
  std::shared_ptr<const FockSpace> space_ptr() const noexcept { return fs_; }
  std::size_t dim() const noexcept { return row_ptr_.size() - 1; }
  std::size_t nnz() const noexcept { return cols_.size(); }

  std::span<const StateIndex> row_cols(std::size_t r) const {
    return {cols_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }
  std::span<const std::uint8_t> row_letters(std::size_t r) const {
    return {letter_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }

  /// y = (Σ s_i) x for any additive element type (integers, big integers,
  /// floating point). Rows are independent and summed in column order.
  template <class T>
  void apply(std::span<const T> x, std::span<T> y) const {
    parallel_for(dim(), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t r = lo; r < hi; ++r) {
        T acc{};
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += x[cols_[k]];
        y[r] = acc;
      }
    });
  }

  /// y = (Σ w_i s_i) x with real per-letter weights.
  void apply_weighted(std::span<const double> weights, std::span<const double> x,
                      std::span<double> y) const {
    parallel_for(dim(), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t r = lo; r < hi; ++r) {
        double acc = 0.0;
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
          acc += weights[letter_[k]] * x[cols_[k]];
        }
        y[r] = acc;
      }
    });
  }

  SparseOperator to_sparse() const {
    SparseOperator op;
    op.dim = dim();
    op.symmetric = true;
    for (std::size_t r = 0; r < dim(); ++r) {
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
        op.entries.push_back({r, cols_[k], 1.0});
      }
    }
    // Symmetric, so (row, col) order of the rows equals (col, row) order of
    // the transpose; swap to honour the column-major convention.
    for (auto& e : op.entries) std::swap(e.row, e.col);
    return op;
  }

 private:
  std::shared_ptr<const FockSpace> fs_;
  std::vector<std::size_t> row_ptr_;
  std::vector<StateIndex> cols_;
  std::vector<std::uint8_t> letter_;
};

/// Max |entry| of (l_i* l_j − ε_ij l_j l_i* − δ_ij I) e_w over states with
/// |w| <= depth − 1, where truncation cannot interfere. Exact integers.
inline long check_commutation(std::size_t i, std::size_t j, const FockSpace& fs) {
  detail::check_letter(i, fs);
  detail::check_letter(j, fs);
  if (fs.depth() < 2) throw BadParams("check_commutation needs depth >= 2");
  const long eps = fs.graph().commute(i, j) ? 1 : 0;
  const std::size_t interior = fs.basis().level_offsets()[fs.depth()];
  long worst = 0;
  std::vector<std::pair<StateIndex, long>> terms;
  for (std::size_t k = 0; k < interior; ++k) {
    terms.clear();
    if (StateIndex a = fs.create(j, k); a != kNoState) {
      if (StateIndex b = fs.annihilate(i, a); b != kNoState) terms.emplace_back(b, 1);
    }
    if (StateIndex a = fs.annihilate(i, k); a != kNoState && eps != 0) {
      if (StateIndex b = fs.create(j, a); b != kNoState) terms.emplace_back(b, -eps);
    }
    if (i == j) terms.emplace_back(static_cast<StateIndex>(k), -1);
    std::sort(terms.begin(), terms.end());
    for (std::size_t t = 0; t < terms.size();) {
      long sum = 0;
      std::size_t u = t;
      for (; u < terms.size() && terms[u].first == terms[t].first; ++u) sum += terms[u].second;
      worst = std::max(worst, sum < 0 ? -sum : sum);
      t = u;
    }
  }
  return worst;
}

}  // namespace epsfree
