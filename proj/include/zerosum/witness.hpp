#pragma once

// The matrix class M_n and witness extraction.
//
// M_n: integer n x n matrices with every diagonal entry >= -1, every
// off-diagonal entry >= 0 and every row summing to 1. For each member there is
// a nonempty set I of rows whose sum is a nonzero 0/1 vector; find_witness
// constructs one by induction on n:
//
//   (a) n <= 2: try every nonempty subset.
//   (b) a row with nonnegative diagonal is itself a 0/1 vector with one 1.
//   (c) all diagonals are -1, so the off-diagonal mass is 2n. If every column
//       carries exactly 2 of it, all rows sum to the all-ones vector.
//   (d) otherwise some column c carries at most 1.
//       (d0) 0: drop row and column c and recurse.
//       (d1) 1: the unique row p with m[p][c] = 1 has its other unit in some
//            column q. Fold column p into column q, drop rows and columns c
//            and p, recurse to get I'. Then I' itself works unless q is in I'
//            and the original column-q sum over I' is -1, in which case
//            I' + {p} works.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zerosum/errors.hpp"

namespace zerosum {

// Untrusted dense integer matrix, as read from input.
using IntMatrix = std::vector<std::vector<std::int64_t>>;

class MembershipError : public InputError {
 public:
  enum class Kind { not_square, diagonal_below_minus_one, negative_off_diagonal, row_sum_not_one };

  MembershipError(Kind kind, std::size_t row, std::optional<std::size_t> col)
      : InputError(describe(kind, row, col)), kind_(kind), row_(row), col_(col) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t row() const noexcept { return row_; }
  std::optional<std::size_t> col() const noexcept { return col_; }

 private:
  static std::string describe(Kind kind, std::size_t row, std::optional<std::size_t> col) {
    std::string where = "row " + std::to_string(row);
    if (col) where += ", column " + std::to_string(*col);
    switch (kind) {
      case Kind::not_square: return "matrix is not square (" + where + ")";
      case Kind::diagonal_below_minus_one: return "diagonal entry below -1 at " + where;
      case Kind::negative_off_diagonal: return "negative off-diagonal entry at " + where;
      case Kind::row_sum_not_one: return "row sum is not 1 at " + where;
    }
    return where;
  }

  Kind kind_;
  std::size_t row_;
  std::optional<std::size_t> col_;
};

class ConstraintMatrix;
ConstraintMatrix validate_membership(const IntMatrix& m);

namespace detail {
struct trusted_t {};
inline constexpr trusted_t trusted{};
}  // namespace detail

// A member of M_n, stored dense row-major. Only obtainable through
// validate_membership or internal builders that uphold the class invariants.
class ConstraintMatrix {
 public:
  std::size_t order() const noexcept { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const std::int64_t> row(std::size_t i) const {
    return std::span<const std::int64_t>(entries_).subspan(i * n_, n_);
  }
  std::span<const std::int64_t> entries() const noexcept { return entries_; }

  IntMatrix to_rows() const {
    IntMatrix rows(n_);
    for (std::size_t i = 0; i < n_; ++i) rows[i].assign(row(i).begin(), row(i).end());
    return rows;
  }

  friend bool operator==(const ConstraintMatrix&, const ConstraintMatrix&) = default;

  // Skips validation; callers guarantee membership.
  ConstraintMatrix(detail::trusted_t, std::size_t n, std::vector<std::int64_t> entries)
      : n_(n), entries_(std::move(entries)) {}

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> entries_;
};

// Scans row-major and reports the first violated invariant.
inline ConstraintMatrix validate_membership(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) throw InputError("matrix must have order at least 1");
  std::vector<std::int64_t> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw MembershipError(MembershipError::Kind::not_square, i, std::nullopt);
    std::int64_t sum = 0;
    bool overflow = false;
    for (std::size_t j = 0; j < n; ++j) {
      auto x = m[i][j];
      if (i == j && x < -1) throw MembershipError(MembershipError::Kind::diagonal_below_minus_one, i, j);
      if (i != j && x < 0) throw MembershipError(MembershipError::Kind::negative_off_diagonal, i, j);
      overflow = overflow || __builtin_add_overflow(sum, x, &sum);
      entries.push_back(x);
    }
    if (overflow || sum != 1) throw MembershipError(MembershipError::Kind::row_sum_not_one, i, std::nullopt);
  }
  return ConstraintMatrix(detail::trusted, n, std::move(entries));
}

struct WitnessSubset {
  std::vector<std::size_t> rows;      // I, ascending, 0-based
  std::vector<std::int64_t> vector;   // sum of the rows in I
  friend bool operator==(const WitnessSubset&, const WitnessSubset&) = default;
};

// Sum of the given rows of m.
inline std::vector<std::int64_t> row_sum(const ConstraintMatrix& m, std::span<const std::size_t> rows) {
  std::vector<std::int64_t> v(m.order(), 0);
  for (auto i : rows) {
    auto r = m.row(i);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += r[j];
  }
  return v;
}

inline bool is_nonzero_zero_one(std::span<const std::int64_t> v) {
  bool any_one = false;
  for (auto x : v) {
    if (x != 0 && x != 1) return false;
    any_one = any_one || x == 1;
  }
  return any_one;
}

// Recomputes the row sum from scratch; independent of find_witness.
inline bool verify_witness(const ConstraintMatrix& m, const WitnessSubset& w) {
  if (w.rows.empty() || w.vector.size() != m.order()) return false;
  std::vector<bool> seen(m.order(), false);
  for (auto i : w.rows) {
    if (i >= m.order() || seen[i]) return false;
    seen[i] = true;
  }
  std::vector<std::int64_t> v(m.order(), 0);
  for (auto i : w.rows) {
    for (std::size_t j = 0; j < m.order(); ++j) v[j] += m(i, j);
  }
  return v == w.vector && is_nonzero_zero_one(v);
}

// One recursion level as seen by a LevelVisitor: the surviving original
// indices and the level's matrix restricted to them.
struct WitnessLevel {
  std::span<const std::size_t> indices;
  const IntMatrix& matrix;
};

struct NoLevelVisitor {
  void operator()(const WitnessLevel&) const noexcept {}
};

// Builds a witness for m. The optional visitor sees every sub-matrix the
// induction descends into (tests use it to check that each stays in the
// class); with the default visitor nothing is materialized.
template <class LevelVisitor = NoLevelVisitor>
WitnessSubset find_witness(const ConstraintMatrix& m, LevelVisitor&& visit = {}) {
  const std::size_t n = m.order();
  std::vector<std::int64_t> w(m.entries().begin(), m.entries().end());
  auto at = [&](std::size_t i, std::size_t j) -> std::int64_t& { return w[i * n + j]; };

  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});

  // Off-diagonal column sums over the active rows.
  std::vector<std::int64_t> colsum(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) colsum[j] += at(i, j);
    }
  }

  struct Fold {
    std::size_t p, q;
    std::vector<std::int64_t> col_q;  // column q of this level, before folding
  };
  std::vector<Fold> folds;

  auto drop = [&](std::initializer_list<std::size_t> gone) {
    for (auto r : gone) {
      for (auto j : active) {
        if (j != r) colsum[j] -= at(r, j);
      }
    }
    std::erase_if(active, [&](std::size_t x) {
      return std::find(gone.begin(), gone.end(), x) != gone.end();
    });
  };

  std::vector<std::size_t> rows;
  for (;;) {
    if constexpr (!std::is_same_v<std::remove_cvref_t<LevelVisitor>, NoLevelVisitor>) {
      IntMatrix level(active.size(), std::vector<std::int64_t>(active.size()));
      for (std::size_t a = 0; a < active.size(); ++a) {
        for (std::size_t b = 0; b < active.size(); ++b) level[a][b] = at(active[a], active[b]);
      }
      visit(WitnessLevel{active, level});
    }

    const std::size_t k = active.size();
    if (k <= 2) {
      for (unsigned mask = 1; mask < (1u << k); ++mask) {
        bool ok = true;
        bool any_one = false;
        for (auto col : active) {
          std::int64_t s = 0;
          for (std::size_t b = 0; b < k; ++b) {
            if (mask >> b & 1u) s += at(active[b], col);
          }
          ok = ok && (s == 0 || s == 1);
          any_one = any_one || s == 1;
        }
        if (ok && any_one) {
          for (std::size_t b = 0; b < k; ++b) {
            if (mask >> b & 1u) rows.push_back(active[b]);
          }
          break;
        }
      }
      if (rows.empty()) throw InternalError("no witness in base case");
      break;
    }

    auto nonneg_diag = std::find_if(active.begin(), active.end(),
                                    [&](std::size_t i) { return at(i, i) >= 0; });
    if (nonneg_diag != active.end()) {
      rows.push_back(*nonneg_diag);
      break;
    }

    auto light = std::find_if(active.begin(), active.end(),
                              [&](std::size_t j) { return colsum[j] != 2; });
    if (light == active.end()) {
      rows = active;
      break;
    }
    // Total off-diagonal mass is 2k, so a column below 2 exists whenever
    // some column differs from 2.
    light = std::find_if(active.begin(), active.end(), [&](std::size_t j) { return colsum[j] <= 1; });
    if (light == active.end()) throw InternalError("no column with off-diagonal sum at most 1");
    const std::size_t c = *light;

    if (colsum[c] == 0) {
      drop({c});
      continue;
    }

    auto p_it = std::find_if(active.begin(), active.end(),
                             [&](std::size_t i) { return i != c && at(i, c) == 1; });
    if (p_it == active.end()) throw InternalError("column with sum 1 has no unit entry");
    const std::size_t p = *p_it;
    auto q_it = std::find_if(active.begin(), active.end(),
                             [&](std::size_t j) { return j != c && j != p && at(p, j) > 0; });
    if (q_it == active.end()) throw InternalError("row p has no second unit");
    const std::size_t q = *q_it;

    drop({c, p});
    Fold fold{p, q, std::vector<std::int64_t>(n, 0)};
    std::int64_t qsum = 0;
    for (auto i : active) {
      fold.col_q[i] = at(i, q);
      at(i, q) += at(i, p);
      if (i != q) qsum += at(i, q);
    }
    colsum[q] = qsum;
    folds.push_back(std::move(fold));
  }

  std::vector<bool> in_rows(n, false);
  for (auto i : rows) in_rows[i] = true;
  for (auto it = folds.rbegin(); it != folds.rend(); ++it) {
    if (!in_rows[it->q]) continue;
    std::int64_t sigma_q = 0;
    for (auto i : rows) sigma_q += it->col_q[i];
    if (sigma_q < 0) {
      rows.push_back(it->p);
      in_rows[it->p] = true;
    }
  }
  std::sort(rows.begin(), rows.end());

  WitnessSubset result{rows, row_sum(m, rows)};
  if (!is_nonzero_zero_one(result.vector)) throw InternalError("extracted rows do not sum to a 0/1 vector");
  return result;
}

// Every witness of m in increasing order of the indicator read as a binary
// number with row 0 as the least significant bit.
inline std::vector<WitnessSubset> all_witnesses(const ConstraintMatrix& m, std::size_t max_order = 25) {
  const std::size_t n = m.order();
  if (n > max_order) throw BudgetExceeded("all_witnesses supports order at most " + std::to_string(max_order));
  std::vector<WitnessSubset> out;
  std::vector<std::int64_t> v(n, 0);
  // v tracks the row sum of the current mask; stepping to mask + 1 clears the
  // trailing ones and sets the next bit.
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto t = static_cast<std::size_t>(__builtin_ctzll(mask));
    for (std::size_t b = 0; b < t; ++b) {
      for (std::size_t j = 0; j < n; ++j) v[j] -= m(b, j);
    }
    for (std::size_t j = 0; j < n; ++j) v[j] += m(t, j);
    if (is_nonzero_zero_one(v)) {
      WitnessSubset ws;
      for (std::size_t b = 0; b < n; ++b) {
        if (mask >> b & 1u) ws.rows.push_back(b);
      }
      ws.vector = v;
      out.push_back(std::move(ws));
    }
  }
  return out;
}

}  // namespace zerosum
