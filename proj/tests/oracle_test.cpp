#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "zerosum/extractor.hpp"
#include "zerosum/gen.hpp"
#include "zerosum/oracle.hpp"

using namespace zerosum;

namespace {

InputSet ints(std::vector<std::int64_t> values) {
  auto g = GroupSpec::integers();
  std::vector<GroupElement> xs;
  for (auto v : values) xs.push_back(GroupElement({v}));
  return InputSet(g, xs);
}

// Longest zero-sum-free sequence in (Z_p)^m by plain recursion over
// nondecreasing sequences, testing every nonempty subsequence directly.
std::size_t naive_zero_sum_free(std::int64_t p, std::size_t m) {
  auto g = GroupSpec::elementary(p, m);
  auto elems = all_elements(g);
  std::vector<std::size_t> seq;
  std::size_t best = 0;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    best = std::max(best, seq.size());
    for (std::size_t x = from; x < elems.size(); ++x) {
      seq.push_back(x);
      bool free = true;
      // Only subsequences containing the new last term can be new.
      const std::size_t n = seq.size();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)) && free; ++mask) {
        GroupElement acc = elems[x];
        for (std::size_t b = 0; b + 1 < n; ++b) {
          if (mask >> b & 1u) acc = add(acc, elems[seq[b]], g);
        }
        free = !acc.is_zero();
      }
      if (free) grow(x);
      seq.pop_back();
    }
  };
  grow(0);
  return best;
}

}  // namespace

TEST(BruteForceTest, Examples) {
  EXPECT_EQ(brute_force_zero_sum(ints({1, 2, -3})), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(brute_force_zero_sum(ints({1, 2, 4})), std::nullopt);
  // Sorted: -1, 1, 5.
  EXPECT_EQ(brute_force_zero_sum(ints({-1, 1, 5})), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(brute_force_zero_sum(ints({0, 7})), (std::vector<std::size_t>{0}));
}

TEST(BruteForceTest, Budgets) {
  std::vector<std::int64_t> many;
  for (std::int64_t v = 1; v <= 30; ++v) many.push_back(v);
  EXPECT_THROW(brute_force_zero_sum(ints(many)), BudgetExceeded);
  SearchBudget bad;
  bad.time_cap = 0;
  EXPECT_THROW(brute_force_zero_sum(ints({1}), bad), InputError);
}

TEST(BruteForceTest, EverySumFullSetHasAZeroSum) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto a = mixed_sumfull_instance(seed);
    if (a.size() > 20) continue;
    auto found = brute_force_zero_sum(a);
    ASSERT_TRUE(found.has_value()) << "seed " << seed;
    std::vector<GroupElement> terms;
    for (auto k : *found) terms.push_back(a[k]);
    ASSERT_TRUE(scalar_sum(terms, a.spec()).is_zero());
  }
}

TEST(ClassTest, Sizes) {
  EXPECT_EQ(class_size(1), 1u);
  EXPECT_EQ(class_size(2), 9u);
  EXPECT_EQ(class_size(3), 216u);
  EXPECT_EQ(class_size(4), 10'000u);
  EXPECT_EQ(class_size(5), 759'375u);
}

TEST(ClassTest, RowOptions) {
  EXPECT_EQ(class_rows(1, 0), (std::vector<std::vector<std::int64_t>>{{1}}));
  EXPECT_EQ(class_rows(2, 0), (std::vector<std::vector<std::int64_t>>{{-1, 2}, {0, 1}, {1, 0}}));
  for (std::size_t n = 1; n <= 6; ++n) {
    EXPECT_EQ(class_rows(n, n - 1).size(), 1 + (n - 1) + n * (n - 1) / 2);
  }
}

TEST(ClassTest, EnumerationIsCompleteAndDistinct) {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::set<IntMatrix> seen;
    auto count = enumerate_class(n, [&](const ConstraintMatrix& m) {
      auto rows = m.to_rows();
      ASSERT_NO_THROW(validate_membership(rows));
      seen.insert(std::move(rows));
    });
    EXPECT_EQ(count, class_size(n));
    EXPECT_EQ(seen.size(), class_size(n));
  }
  enumerate_class(1, [](const ConstraintMatrix& m) { EXPECT_EQ(m.to_rows(), (IntMatrix{{1}})); });
}

TEST(ClassTest, ShardsPartitionTheClass) {
  std::set<IntMatrix> seen;
  std::uint64_t total = 0;
  for (std::size_t shard = 0; shard < 4; ++shard) {
    total += enumerate_class(3, [&](const ConstraintMatrix& m) { ASSERT_TRUE(seen.insert(m.to_rows()).second); },
                             shard, 4);
  }
  EXPECT_EQ(total, class_size(3));
  EXPECT_EQ(seen.size(), class_size(3));
  // More shards than first-row options: the surplus shards are empty.
  EXPECT_EQ(enumerate_class(2, [](const ConstraintMatrix&) {}, 5, 8), 0u);
}

TEST(ClassTest, Guards) {
  EXPECT_THROW(enumerate_class(0, [](const ConstraintMatrix&) {}), BudgetExceeded);
  EXPECT_THROW(enumerate_class(7, [](const ConstraintMatrix&) {}), BudgetExceeded);
  EXPECT_THROW(enumerate_class(2, [](const ConstraintMatrix&) {}, 2, 2), InputError);
}

TEST(ZeroSumFreeTest, SmallGroups) {
  EXPECT_EQ(max_zero_sum_free_length(2, 1), 1u);
  EXPECT_EQ(max_zero_sum_free_length(2, 2), 2u);
  EXPECT_EQ(max_zero_sum_free_length(3, 2), 4u);
  EXPECT_EQ(max_zero_sum_free_length(2, 3), 3u);
  EXPECT_EQ(max_zero_sum_free_length(5, 1), 4u);
}

TEST(ZeroSumFreeTest, MatchesNaiveSearch) {
  for (auto [p, m] : std::vector<std::pair<std::int64_t, std::size_t>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}}) {
    EXPECT_EQ(max_zero_sum_free_length(p, m), naive_zero_sum_free(p, m)) << p << "^" << m;
  }
}

TEST(ZeroSumFreeTest, Guards) {
  EXPECT_THROW(max_zero_sum_free_length(4, 1), InputError);
  EXPECT_THROW(max_zero_sum_free_length(2, 5), BudgetExceeded);
  EXPECT_THROW(max_zero_sum_free_length(2, 2, 9), BudgetExceeded);
  // The true maximum in (Z_3)^2 is 4, so a cap of 4 cannot certify it.
  EXPECT_THROW(max_zero_sum_free_length(3, 2, 4), BudgetExceeded);
}
