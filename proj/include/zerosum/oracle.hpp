#pragma once

// Brute-force ground truth at desk scale. Nothing here shares code with the
// constructive paths it is used to check.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zerosum/char3.hpp"
#include "zerosum/errors.hpp"
#include "zerosum/group.hpp"
#include "zerosum/sumfull.hpp"
#include "zerosum/witness.hpp"

namespace zerosum {

struct SearchBudget {
  std::size_t max_n = 25;
  std::uint64_t max_group = 1'000'000;
  double time_cap = 60.0;  // seconds

  void validate() const {
    if (max_n == 0 || max_group == 0 || !(time_cap > 0)) throw InputError("budget values must be positive");
  }
};

namespace detail {

class Deadline {
 public:
  explicit Deadline(double seconds)
      : end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(seconds))) {}

  void check(const char* what) const {
    if (std::chrono::steady_clock::now() > end_) throw BudgetExceeded(std::string(what) + ": time cap exceeded");
  }

 private:
  std::chrono::steady_clock::time_point end_;
};

}  // namespace detail

// Least nonempty zero-sum subset in indicator order (the indicator read as a
// binary number, index 0 least significant), or nothing if A is zero-sum-free.
inline std::optional<std::vector<std::size_t>> brute_force_zero_sum(const InputSet& a,
                                                                    const SearchBudget& budget = {}) {
  budget.validate();
  const std::size_t n = a.size();
  if (n > budget.max_n || n > 62) {
    throw BudgetExceeded("subset enumeration over " + std::to_string(n) + " elements exceeds max_n " +
                         std::to_string(budget.max_n));
  }
  const auto& g = a.spec();
  std::vector<GroupElement> neg;
  for (const auto& x : a.elements()) neg.push_back(negate(x, g));

  detail::Deadline deadline(budget.time_cap);
  GroupElement acc = zero(g);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto t = static_cast<std::size_t>(__builtin_ctzll(mask));
    for (std::size_t b = 0; b < t; ++b) add_into(acc, neg[b], g);
    add_into(acc, a[t], g);
    if (acc.is_zero()) {
      std::vector<std::size_t> subset;
      for (std::size_t b = 0; b < n; ++b) {
        if (mask >> b & 1u) subset.push_back(b);
      }
      return subset;
    }
    if ((mask & 0xffff) == 0) deadline.check("brute_force_zero_sum");
  }
  return std::nullopt;
}

inline constexpr std::size_t kMaxEnumerationOrder = 6;

// Every admissible row i of an order-n member of M_n, in lexicographic order.
inline std::vector<std::vector<std::int64_t>> class_rows(std::size_t n, std::size_t i) {
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<std::int64_t> row(n, 0);
  std::function<void(std::size_t, std::int64_t)> fill = [&](std::size_t col, std::int64_t remaining) {
    if (col == n) {
      if (remaining == 0) rows.push_back(row);
      return;
    }
    const std::int64_t lo = col == i ? -1 : 0;
    for (std::int64_t x = lo; x <= 2; ++x) {
      if (col == i && x > 1) break;
      row[col] = x;
      fill(col + 1, remaining - x);
    }
    row[col] = 0;
  };
  fill(0, 1);
  return rows;
}

// |M_n| = (1 + (n - 1) + C(n, 2))^n.
inline std::uint64_t class_size(std::size_t n) {
  const std::uint64_t per_row = 1 + (n - 1) + n * (n - 1) / 2;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= per_row;
  return total;
}

// Streams every member of M_n exactly once in row-wise lexicographic order.
// With shard_count > 1 only matrices whose first-row option index is
// congruent to shard_index are produced. Returns the number visited.
template <class Visitor>
std::uint64_t enumerate_class(std::size_t n, Visitor&& visit, std::size_t shard_index = 0,
                              std::size_t shard_count = 1, std::optional<double> time_cap = std::nullopt) {
  if (n == 0 || n > kMaxEnumerationOrder) {
    throw BudgetExceeded("enumerate_class supports 1 <= n <= " + std::to_string(kMaxEnumerationOrder));
  }
  if (shard_count == 0 || shard_index >= shard_count) throw InputError("bad shard");
  std::optional<detail::Deadline> deadline;
  if (time_cap) deadline.emplace(*time_cap);

  std::vector<std::vector<std::vector<std::int64_t>>> options(n);
  for (std::size_t i = 0; i < n; ++i) options[i] = class_rows(n, i);

  std::vector<std::size_t> choice(n, 0);
  choice[0] = shard_index;
  if (choice[0] >= options[0].size()) return 0;
  std::vector<std::int64_t> entries(n * n);
  auto load = [&](std::size_t i) {
    std::copy(options[i][choice[i]].begin(), options[i][choice[i]].end(),
              entries.begin() + static_cast<std::ptrdiff_t>(i * n));
  };
  for (std::size_t i = 0; i < n; ++i) load(i);

  std::uint64_t visited = 0;
  for (;;) {
    visit(ConstraintMatrix(detail::trusted, n, entries));
    ++visited;
    if (deadline && (visited & 0xfff) == 0) deadline->check("enumerate_class");

    // Odometer with the last row varying fastest.
    std::size_t i = n;
    for (;;) {
      if (i == 0) return visited;
      --i;
      const std::size_t step = i == 0 ? shard_count : 1;
      choice[i] += step;
      if (choice[i] < options[i].size()) {
        load(i);
        break;
      }
      if (i == 0) return visited;
      choice[i] = 0;
      load(i);
    }
  }
}

// Exact maximum length of a zero-sum-free sequence in (Z_p)^m, by exhaustive
// search over multisets. Throws BudgetExceeded when a zero-sum-free sequence
// of length `cap` exists, since the maximum is then not certified.
inline std::size_t max_zero_sum_free_length(std::int64_t p, std::size_t m, std::size_t cap = 8) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  std::size_t size = 1;
  for (std::size_t d = 0; d < m; ++d) {
    size *= static_cast<std::size_t>(p);
    if (size > 27) throw BudgetExceeded("max_zero_sum_free_length needs p^m <= 27");
  }
  if (cap > 8) throw BudgetExceeded("max_zero_sum_free_length needs cap <= 8");

  // Element x <-> base-p digits of x; table[x][y] = index of x + y.
  std::vector<std::vector<std::size_t>> table(size, std::vector<std::size_t>(size));
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      std::size_t r = 0, place = 1, xx = x, yy = y;
      for (std::size_t d = 0; d < m; ++d) {
        const auto pp = static_cast<std::size_t>(p);
        r += ((xx % pp + yy % pp) % pp) * place;
        xx /= pp;
        yy /= pp;
        place *= pp;
      }
      table[x][y] = r;
    }
  }

  // sums: bit s set iff some nonempty sub-multiset sums to element s.
  std::size_t best = 0;
  std::function<void(std::size_t, std::size_t, std::uint32_t)> grow = [&](std::size_t from, std::size_t length,
                                                                          std::uint32_t sums) {
    best = std::max(best, length);
    if (length == cap) return;
    for (std::size_t x = from; x < size; ++x) {
      std::uint32_t next = sums | (std::uint32_t{1} << x);
      for (std::size_t s = 0; s < size; ++s) {
        if (sums >> s & 1u) next |= std::uint32_t{1} << table[s][x];
      }
      if (next & 1u) continue;
      grow(x, length + 1, next);
    }
  };
  grow(0, 0, 0);
  if (best >= cap) throw BudgetExceeded("zero-sum-free sequence reaches the length cap");
  return best;
}

// All-quadruples scan with the same contract as is_sidon: the first pair
// (k, l) in lexicographic order whose sum matches some earlier pair (i, j),
// together with the earliest such (i, j).
inline SidonVerdict quadruple_oracle(std::span<const GroupElement> b, const GroupSpec& g) {
  if (b.size() > 50) throw BudgetExceeded("quadruple_oracle supports at most 50 elements");
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k; l < n; ++l) {
      for (std::size_t i = 0; i <= k; ++i) {
        for (std::size_t j = i; j < n; ++j) {
          if (i == k && j >= l) break;
          if (add(b[i], b[j], g) == add(b[k], b[l], g)) return {AdditiveQuadruple{{b[i], b[j], b[k], b[l]}}};
        }
      }
    }
  }
  return {};
}

}  // namespace zerosum
