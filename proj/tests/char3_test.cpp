#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <variant>
#include <vector>

#include "zerosum/char3.hpp"
#include "zerosum/extractor.hpp"
#include "zerosum/gen.hpp"
#include "zerosum/oracle.hpp"

using namespace zerosum;

namespace {

std::vector<GroupElement> ints(std::vector<std::int64_t> values) {
  std::vector<GroupElement> xs;
  for (auto v : values) xs.push_back(GroupElement({v}));
  return xs;
}

InputSet f3_nonzero(std::size_t d) {
  auto g = GroupSpec::elementary(3, d);
  auto xs = all_elements(g);
  xs.erase(xs.begin());  // zero comes first
  return InputSet(g, xs);
}

std::vector<GroupElement> random_distinct(SplitMix64& rng, const GroupSpec& g, std::size_t n, std::int64_t bound) {
  std::set<GroupElement> seen;
  std::vector<GroupElement> out;
  for (int tries = 0; out.size() < n && tries < 10'000; ++tries) {
    auto x = random_element(rng, g, bound);
    if (seen.insert(x).second) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST(SidonTest, TwoBasisVectors) {
  auto g = GroupSpec::elementary(3, 2);
  std::vector<GroupElement> b{GroupElement({1, 0}), GroupElement({0, 1})};
  EXPECT_TRUE(is_sidon(b, g).sidon());
}

TEST(SidonTest, ArithmeticProgressionIncludesDoubledTerms) {
  // Pairs may repeat an element: 0 + 2 == 1 + 1 is found before 0 + 3 == 1 + 2.
  auto g = GroupSpec::integers();
  auto v = is_sidon(ints({0, 1, 2, 3}), g);
  ASSERT_FALSE(v.sidon());
  EXPECT_EQ(v.violation->terms, (std::array<GroupElement, 4>{GroupElement({0}), GroupElement({2}),
                                                             GroupElement({1}), GroupElement({1})}));
  EXPECT_TRUE(is_valid_quadruple(*v.violation, g));
}

TEST(SidonTest, SidonIntegers) {
  EXPECT_TRUE(is_sidon(ints({1, 2, 5}), GroupSpec::integers()).sidon());
  EXPECT_TRUE(is_sidon(ints({}), GroupSpec::integers()).sidon());
  EXPECT_TRUE(is_sidon(ints({4}), GroupSpec::integers()).sidon());
}

TEST(SidonTest, CharacteristicThreeRelation) {
  // In F_3, x + x == y + z whenever x, y, z are distinct: 2x = -x = y + z.
  auto g = GroupSpec::cyclic(3);
  auto v = is_sidon(ints({0, 1, 2}), g);
  ASSERT_FALSE(v.sidon());
  EXPECT_TRUE(is_valid_quadruple(*v.violation, g));
}

TEST(SidonTest, AgreesWithQuadrupleOracle) {
  SplitMix64 rng(31);
  int non_sidon = 0;
  for (int s = 0; s < 1000; ++s) {
    const auto g = s % 2 ? GroupSpec::integers() : GroupSpec::elementary(3, 2 + rng.below(4));
    auto b = random_distinct(rng, g, 1 + rng.below(12), 200);
    auto v = is_sidon(b, g);
    ASSERT_EQ(v, quadruple_oracle(b, g));
    if (!v.sidon()) {
      ++non_sidon;
      ASSERT_TRUE(is_valid_quadruple(*v.violation, g));
    }
  }
  EXPECT_GT(non_sidon, 100);
}

TEST(QuadrupleTest, ValidityRejectsTrivialAndWrongSums) {
  auto g = GroupSpec::integers();
  auto x = GroupElement({1}), y = GroupElement({2});
  EXPECT_FALSE(is_valid_quadruple({{x, y, y, x}}, g));
  EXPECT_FALSE(is_valid_quadruple({{x, y, x, y}}, g));
  EXPECT_FALSE(is_valid_quadruple({{x, x, y, y}}, g));
}

TEST(SubgroupTest, Closures) {
  auto z5 = GroupSpec::cyclic(5);
  EXPECT_EQ(subgroup_closure({}, z5).size(), 1u);
  auto z6 = GroupSpec::cyclic(6);
  auto two = ints({2});
  auto h = subgroup_closure(two, z6);
  EXPECT_EQ(std::vector<GroupElement>(h.elements().begin(), h.elements().end()), ints({0, 2, 4}));
  EXPECT_FALSE(h.contains(GroupElement({3})));

  auto f = GroupSpec::elementary(3, 2);
  std::vector<GroupElement> diag{GroupElement({1, 1})};
  EXPECT_EQ(subgroup_closure(diag, f).size(), 3u);
  EXPECT_TRUE(SubgroupHandle::trivial(f).contains(zero(f)));
}

TEST(SubgroupTest, Errors) {
  EXPECT_THROW(subgroup_closure({}, GroupSpec::integers()), InputError);
  EXPECT_THROW(subgroup_closure({}, GroupSpec::elementary(3, 13)), BudgetExceeded);
  EXPECT_THROW(subgroup_closure({}, GroupSpec::elementary(3, 4), 80), BudgetExceeded);
}

TEST(ComplementGeneratingTest, Examples) {
  auto a = f3_nonzero(2);
  auto e1 = *a.index_of(GroupElement({1, 0}));
  std::vector<std::size_t> b{e1};
  EXPECT_TRUE(check_complement_generating(a, b));
  EXPECT_TRUE(check_complement_generating(a, {}));

  auto g = GroupSpec::elementary(3, 2);
  InputSet basis(g, {GroupElement({1, 0}), GroupElement({0, 1})});
  std::vector<std::size_t> second{*basis.index_of(GroupElement({0, 1}))};
  EXPECT_FALSE(check_complement_generating(basis, second));
  std::vector<std::size_t> out_of_range{7};
  EXPECT_THROW(check_complement_generating(basis, out_of_range), InputError);
}

TEST(OlsonBoundTest, Values) {
  std::vector<std::int64_t> ones2{1, 1}, ones3{1, 1, 1}, two{2};
  EXPECT_EQ(olson_bound(3, ones2), 4);
  EXPECT_EQ(olson_bound(2, ones3), 3);
  EXPECT_EQ(olson_bound(3, two), 8);
  EXPECT_THROW(olson_bound(4, ones2), InputError);
  std::vector<std::int64_t> zero_exp{0};
  EXPECT_THROW(olson_bound(3, zero_exp), InputError);
}

TEST(FpBasisTest, Examples) {
  std::vector<std::vector<std::int64_t>> v{{1, 0}, {2, 0}, {0, 1}, {1, 1}};
  auto b = fp_basis(v, 3);
  EXPECT_EQ(b.rank, 2u);
  EXPECT_EQ(b.indices, (std::vector<std::size_t>{0, 2}));
  std::vector<std::vector<std::int64_t>> none{{0, 0, 0}};
  EXPECT_EQ(fp_basis(none, 3).rank, 0u);
}

TEST(FpBasisTest, RankMatchesSpanSize) {
  // |span| = 3^rank, with the span computed by closure.
  SplitMix64 rng(8);
  for (int s = 0; s < 300; ++s) {
    const std::size_t d = 1 + rng.below(4);
    auto g = GroupSpec::elementary(3, d);
    auto xs = random_distinct(rng, g, 1 + rng.below(6), 0);
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& x : xs) rows.emplace_back(x.coords().begin(), x.coords().end());
    auto basis = fp_basis(rows, 3);
    std::uint64_t expected = 1;
    for (std::size_t k = 0; k < basis.rank; ++k) expected *= 3;
    ASSERT_EQ(subgroup_closure(xs, g).size(), expected);
    std::vector<GroupElement> chosen;
    for (auto k : basis.indices) chosen.push_back(xs[k]);
    ASSERT_EQ(subgroup_closure(chosen, g).size(), expected);
  }
}

TEST(ChainTest, NonzeroResiduesModSeven) {
  auto g = GroupSpec::cyclic(7);
  InputSet a(g, ints({1, 2, 3, 4, 5, 6}));
  auto r = chain_extract(a, SubgroupHandle::trivial(g));
  EXPECT_EQ(r.b_chain.size() + 1, r.a_chain.size());
  EXPECT_EQ(r.a_chain[r.window_begin], r.a_chain.back());
  EXPECT_TRUE(verify_chain_outcome(r, a));
}

TEST(ChainTest, FollowsTheTableFromTheFirstElementOutsideH) {
  auto g = GroupSpec::cyclic(7);
  InputSet a(g, ints({1, 2, 3, 4, 5, 6}));
  const auto table = require_sum_full(a);
  auto r = chain_extract(a, SubgroupHandle::trivial(g));
  ASSERT_EQ(r.a_chain.front(), 0u);
  for (std::size_t k = 0; k + 1 < r.a_chain.size(); ++k) {
    const auto [i, j] = table[r.a_chain[k]];
    // Every summand is outside the trivial subgroup, so i is always taken.
    ASSERT_EQ(r.a_chain[k + 1], i);
    ASSERT_EQ(r.b_chain[k], j);
  }
}

TEST(ChainTest, SkipsSummandsInsideH) {
  // In Z_6, take H = {0, 3}.
  auto g = GroupSpec::cyclic(6);
  InputSet a(g, ints({1, 2, 3, 4, 5}));
  auto three = ints({3});
  auto h = subgroup_closure(three, g);
  auto r = chain_extract(a, h);
  for (auto k : r.a_chain) ASSERT_FALSE(h.contains(a[k]));
  EXPECT_TRUE(verify_chain_outcome(r, a));
}

TEST(ChainTest, ZeroElementShortCircuits) {
  auto g = GroupSpec::cyclic(5);
  InputSet a(g, ints({0, 1, 2, 3, 4}));
  auto r = chain_extract(a, SubgroupHandle::trivial(g));
  EXPECT_EQ(std::get<ZeroSumList>(r.outcome), (ZeroSumList{{0}, true}));
  EXPECT_TRUE(verify_chain_outcome(r, a));
}

TEST(ChainTest, Errors) {
  auto g = GroupSpec::cyclic(7);
  InputSet a(g, ints({1, 2, 3, 4, 5, 6}));
  std::vector<GroupElement> gen{GroupElement({1})};
  EXPECT_THROW(chain_extract(a, subgroup_closure(gen, g)), InputError);
  InputSet not_full(g, ints({1, 2}));
  EXPECT_THROW(chain_extract(not_full, SubgroupHandle::trivial(g)), NotSumFullError);
}

TEST(ChainTest, RandomFiniteInstances) {
  int quadruples = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    auto a = mixed_sumfull_instance(seed);
    if (!a.spec().is_finite()) continue;
    auto r = chain_extract(a, SubgroupHandle::trivial(a.spec()));
    ASSERT_TRUE(verify_chain_outcome(r, a)) << "seed " << seed;
    if (std::holds_alternative<ChainQuadruple>(r.outcome)) ++quadruples;
  }
  RecordProperty("quadruples", quadruples);
}

TEST(ChainTest, VerifierRejectsTampering) {
  auto g = GroupSpec::cyclic(7);
  InputSet a(g, ints({1, 2, 3, 4, 5, 6}));
  auto r = chain_extract(a, SubgroupHandle::trivial(g));
  ASSERT_TRUE(verify_chain_outcome(r, a));
  auto bad = r;
  bad.outcome = ZeroSumList{{0, 1}, true};  // 1 + 2 != 0
  EXPECT_FALSE(verify_chain_outcome(bad, a));
  bad.outcome = ZeroSumList{{}, true};
  EXPECT_FALSE(verify_chain_outcome(bad, a));
  bad.outcome = ZeroSumList{{0, 5}, false};  // distinct flag is wrong
  EXPECT_FALSE(verify_chain_outcome(bad, a));
}

TEST(AuditTest, FullPuncturedPlaneFailsCardinality) {
  auto a = f3_nonzero(2);
  auto rep = audit_char3(a);
  EXPECT_EQ(rep.n, 8u);
  EXPECT_EQ(rep.span_dim, 2u);
  EXPECT_FALSE(rep.restricted_to_span);
  EXPECT_EQ(rep.first_failure, 1);
  ASSERT_FALSE(rep.zero_sum.empty());
  std::vector<GroupElement> terms;
  for (auto k : rep.zero_sum) terms.push_back(a[k]);
  EXPECT_TRUE(scalar_sum(terms, a.spec()).is_zero());
  ASSERT_EQ(rep.steps.size(), 5u);
  for (std::size_t k = 0; k < rep.steps.size(); ++k) EXPECT_EQ(rep.steps[k].number, static_cast<int>(k + 1));
}

TEST(AuditTest, SpanDeficientInputIsRestricted) {
  // Nonzero points of a line in F_3^3: {x, 2x} with x + x = 2x, 2x + 2x = x.
  auto g = GroupSpec::elementary(3, 3);
  InputSet a(g, {GroupElement({1, 1, 0}), GroupElement({2, 2, 0})});
  auto rep = audit_char3(a);
  EXPECT_EQ(rep.ambient_dim, 3u);
  EXPECT_EQ(rep.span_dim, 1u);
  EXPECT_TRUE(rep.restricted_to_span);
  EXPECT_GT(rep.first_failure, 0);
}

TEST(AuditTest, RejectsOtherGroupsAndNonSumFullSets) {
  InputSet z7(GroupSpec::cyclic(7), ints({1, 2, 3, 4, 5, 6}));
  EXPECT_THROW(audit_char3(z7), InputError);
  auto g = GroupSpec::elementary(3, 2);
  InputSet basis(g, {GroupElement({1, 0}), GroupElement({0, 1})});
  EXPECT_THROW(audit_char3(basis), NotSumFullError);
}

TEST(AuditTest, RandomSumFullSetsAlwaysFailSomewhere) {
  int audited = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GenConfig cfg{seed, GroupSpec::elementary(3, 2 + seed % 3), GenMode::prune_closure, 6 + seed % 15, 0};
    auto a = random_sumfull_set(cfg);
    if (!a) continue;
    ++audited;
    auto rep = audit_char3(*a);
    ASSERT_GE(rep.first_failure, 1);
    ASSERT_LE(rep.first_failure, 5);
    ASSERT_EQ(rep.steps[static_cast<std::size_t>(rep.first_failure - 1)].status, StepStatus::fails);
    if (!rep.zero_sum.empty()) {
      std::vector<GroupElement> terms;
      for (auto k : rep.zero_sum) terms.push_back((*a)[k]);
      ASSERT_TRUE(scalar_sum(terms, a->spec()).is_zero());
    }
    if (rep.chain) {
      ASSERT_TRUE(verify_chain_outcome(*rep.chain, *a));
    }
  }
  EXPECT_GT(audited, 20);
}
