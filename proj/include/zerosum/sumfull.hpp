#pragma once

// Sum-fullness: every element of A is a_i + a_j for two elements other than
// itself (the two summands may coincide with each other). The check fixes one
// representation per element, the lexicographically least pair (i, j), i <= j.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "zerosum/errors.hpp"
#include "zerosum/group.hpp"

namespace zerosum {

// A finite nonempty subset of an abelian group, stored canonically: sorted
// and duplicate-free. Indices into an InputSet are 0-based positions in that
// order.
class InputSet {
 public:
  // Canonicalizes, sorts and drops repeats. Throws InputError when nothing
  // remains or an element does not fit the group.
  InputSet(GroupSpec spec, std::vector<GroupElement> elements) : spec_(std::move(spec)) {
    for (auto& x : elements) {
      auto coords = std::vector<std::int64_t>(x.coords().begin(), x.coords().end());
      x = make_element(spec_, std::move(coords));
    }
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty()) throw InputError("input set is empty");
    elements_ = std::move(elements);
  }

  const GroupSpec& spec() const noexcept { return spec_; }
  std::span<const GroupElement> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const GroupElement& operator[](std::size_t k) const { return elements_[k]; }

  std::optional<std::size_t> index_of(const GroupElement& x) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
    if (it == elements_.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
  }

  friend bool operator==(const InputSet&, const InputSet&) = default;

 private:
  GroupSpec spec_;
  std::vector<GroupElement> elements_;
};

struct Representation {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const Representation&, const Representation&) = default;
};

// reps[k] = (i, j) with a_k = a_i + a_j, i <= j, i != k, j != k.
struct RepresentationTable {
  std::vector<Representation> reps;

  std::size_t size() const noexcept { return reps.size(); }
  const Representation& operator[](std::size_t k) const { return reps[k]; }
  friend bool operator==(const RepresentationTable&, const RepresentationTable&) = default;
};

struct NotSumFull {
  std::size_t index = 0;  // least element with no representation
  friend bool operator==(const NotSumFull&, const NotSumFull&) = default;
};

using SumFullResult = std::variant<RepresentationTable, NotSumFull>;

namespace detail {

// Least (i, j), i <= j, i != k, j != k with a_i + a_j = a_k, or nothing.
// Only elements with alive[idx] are eligible, when alive is given.
template <class Lookup>
std::optional<Representation> least_representation(std::span<const GroupElement> a,
                                                   const GroupSpec& g, std::size_t k,
                                                   const Lookup& lookup,
                                                   const std::vector<bool>* alive,
                                                   GroupElement& scratch) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == k || (alive && !(*alive)[i])) continue;
    subtract_into(scratch, a[k], a[i], g);
    auto it = lookup.find(scratch);
    if (it == lookup.end()) continue;
    std::size_t j = it->second;
    if (j < i || j == k || (alive && !(*alive)[j])) continue;
    return Representation{i, j};
  }
  return std::nullopt;
}

inline std::unordered_map<GroupElement, std::size_t, GroupElementHash> index_map(
    std::span<const GroupElement> a) {
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> lookup;
  lookup.reserve(a.size() * 2);
  for (std::size_t k = 0; k < a.size(); ++k) lookup.emplace(a[k], k);
  return lookup;
}

}  // namespace detail

inline SumFullResult check_sum_full(const InputSet& a) {
  const auto elems = a.elements();
  const auto lookup = detail::index_map(elems);
  RepresentationTable table;
  table.reps.reserve(elems.size());
  GroupElement scratch;
  for (std::size_t k = 0; k < elems.size(); ++k) {
    auto rep = detail::least_representation(elems, a.spec(), k, lookup, nullptr, scratch);
    if (!rep) return NotSumFull{k};
    table.reps.push_back(*rep);
  }
  return table;
}

// Like check_sum_full but throws NotSumFullError instead of returning it.
inline RepresentationTable require_sum_full(const InputSet& a) {
  auto result = check_sum_full(a);
  if (auto* bad = std::get_if<NotSumFull>(&result)) throw NotSumFullError(bad->index);
  return std::get<RepresentationTable>(std::move(result));
}

// True iff t is a valid representation table for a (any valid pairs, not
// necessarily the least ones).
inline bool table_is_valid(const RepresentationTable& t, const InputSet& a) {
  if (t.size() != a.size()) return false;
  for (std::size_t k = 0; k < t.size(); ++k) {
    auto [i, j] = t[k];
    if (i >= a.size() || j >= a.size() || i > j || i == k || j == k) return false;
    if (add(a[i], a[j], a.spec()) != a[k]) return false;
  }
  return true;
}

// All pairwise sums a_i + a_j, i <= j, sorted and duplicate-free.
inline std::vector<GroupElement> restricted_double(const InputSet& a) {
  std::vector<GroupElement> sums;
  const auto elems = a.elements();
  sums.reserve(elems.size() * (elems.size() + 1) / 2);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i; j < elems.size(); ++j) sums.push_back(add(elems[i], elems[j], a.spec()));
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return sums;
}

}  // namespace zerosum
