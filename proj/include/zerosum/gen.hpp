#pragma once

// Seeded instance generators. All randomness comes from SplitMix64 so a seed
// reproduces the same instance on every platform:
//
//   state += 0x9e3779b97f4a7c15
//   z = state
//   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   return z ^ (z >> 31)
//
// Bounded draws use rejection: r is redrawn while r < 2^64 mod bound, then
// reduced mod bound.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "zerosum/errors.hpp"
#include "zerosum/group.hpp"
#include "zerosum/sumfull.hpp"
#include "zerosum/witness.hpp"

namespace zerosum {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw InputError("empty range");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      auto r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(span));
  }

 private:
  std::uint64_t state_;
};

// Uniform weak composition of `mass` into `slots` parts: stars and bars, with
// the star positions drawn as a uniform subset by selection sampling.
inline std::vector<std::int64_t> random_weak_composition(SplitMix64& rng, std::int64_t mass, std::size_t slots) {
  std::vector<std::int64_t> parts(slots, 0);
  if (mass == 0) return parts;
  if (slots == 0) throw InputError("cannot distribute positive mass over zero slots");
  const auto positions = static_cast<std::uint64_t>(mass) + slots - 1;
  auto needed = static_cast<std::uint64_t>(mass);
  std::size_t bars = 0;
  for (std::uint64_t t = 0; t < positions && needed > 0; ++t) {
    if (rng.below(positions - t) < needed) {
      ++parts[bars];
      --needed;
    } else {
      ++bars;
    }
  }
  return parts;
}

// Each row independently: diagonal uniform in {-1, 0, 1}, then 1 - diagonal
// spread over the off-diagonal slots as a uniform weak composition.
inline ConstraintMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InputError("matrix order must be at least 1");
  SplitMix64 rng(seed);
  std::vector<std::int64_t> entries(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (n == 1) {
      entries[0] = 1;
      break;
    }
    const std::int64_t d = static_cast<std::int64_t>(rng.below(3)) - 1;
    const auto parts = random_weak_composition(rng, 1 - d, n - 1);
    entries[i * n + i] = d;
    for (std::size_t j = 0, slot = 0; j < n; ++j) {
      if (j != i) entries[i * n + j] = parts[slot++];
    }
  }
  return ConstraintMatrix(detail::trusted, n, std::move(entries));
}

enum class GenMode { full_nonzero, prune_closure };

struct GenConfig {
  std::uint64_t seed = 0;
  GroupSpec group;
  GenMode mode = GenMode::prune_closure;
  std::size_t size = 20;     // initial sample size for prune_closure
  std::int64_t bound = 50;   // free coordinates drawn from [-bound, bound]
};

// Every element of a finite group, in canonical order.
inline std::vector<GroupElement> all_elements(const GroupSpec& g, std::uint64_t max_order = 1'000'000) {
  if (g.order() > max_order) throw BudgetExceeded("group too large to list");
  std::vector<GroupElement> out;
  std::vector<std::int64_t> coords(g.dimension(), 0);
  for (;;) {
    out.emplace_back(coords);
    std::size_t t = g.torsion.size();
    for (;;) {
      if (t == 0) return out;
      --t;
      if (++coords[t] < g.torsion[t]) break;
      coords[t] = 0;
    }
  }
}

enum class PruneOrder { rounds, one_at_a_time };

// Largest sum-full subset of `elements` (the union of all sum-full subsets).
// `rounds` deletes every unrepresentable element per pass; `one_at_a_time`
// deletes the highest-index unrepresentable element, then rescans.
inline std::vector<GroupElement> prune_to_sum_full(std::vector<GroupElement> elements, const GroupSpec& g,
                                                   PruneOrder order = PruneOrder::rounds) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  const auto lookup = detail::index_map(elements);
  std::vector<bool> alive(elements.size(), true);
  GroupElement scratch;
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::size_t> doomed;
    for (std::size_t k = 0; k < elements.size(); ++k) {
      if (!alive[k]) continue;
      if (!detail::least_representation(std::span<const GroupElement>(elements), g, k, lookup, &alive, scratch)) {
        doomed.push_back(k);
      }
    }
    if (doomed.empty()) break;
    changed = true;
    if (order == PruneOrder::rounds) {
      for (auto k : doomed) alive[k] = false;
    } else {
      alive[doomed.back()] = false;
    }
  }
  std::vector<GroupElement> out;
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (alive[k]) out.push_back(elements[k]);
  }
  return out;
}

inline GroupElement random_element(SplitMix64& rng, const GroupSpec& g, std::int64_t bound) {
  std::vector<std::int64_t> coords(g.dimension());
  for (std::size_t f = 0; f < g.free_rank; ++f) coords[f] = rng.between(-bound, bound);
  for (std::size_t t = 0; t < g.torsion.size(); ++t) {
    coords[g.free_rank + t] = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(g.torsion[t])));
  }
  return GroupElement(std::move(coords));
}

// A sum-full set, or nothing when the construction yields none. Outputs are
// always verified with check_sum_full.
inline std::optional<InputSet> random_sumfull_set(const GenConfig& cfg) {
  std::vector<GroupElement> candidate;
  if (cfg.mode == GenMode::full_nonzero) {
    candidate = all_elements(cfg.group);
    candidate.erase(candidate.begin());  // zero is first in canonical order
  } else {
    if (cfg.bound < 0) throw InputError("bound must be non-negative");
    SplitMix64 rng(cfg.seed);
    for (std::size_t s = 0; s < cfg.size; ++s) candidate.push_back(random_element(rng, cfg.group, cfg.bound));
    candidate = prune_to_sum_full(std::move(candidate), cfg.group);
  }
  if (candidate.empty()) return std::nullopt;
  InputSet set(cfg.group, std::move(candidate));
  if (!std::holds_alternative<RepresentationTable>(check_sum_full(set))) return std::nullopt;
  return set;
}

// One draw from the mixed sum-full test distribution:
//   1/4  Z_m \ {0}, 5 <= m <= 64
//   1/4  (Z_p)^d \ {0}, p prime, p^d <= 729
//   1/2  pruned random subsets of Z with |a_i| <= 50 and at most 20 elements
// Draws that yield no sum-full set are skipped, so every seed gives a set.
inline InputSet mixed_sumfull_instance(std::uint64_t seed) {
  static constexpr std::int64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
  SplitMix64 rng(seed);
  for (;;) {
    GenConfig cfg;
    const auto family = rng.below(4);
    if (family == 0) {
      cfg.mode = GenMode::full_nonzero;
      cfg.group = GroupSpec::cyclic(5 + static_cast<std::int64_t>(rng.below(60)));
    } else if (family == 1) {
      cfg.mode = GenMode::full_nonzero;
      const auto p = kPrimes[rng.below(std::size(kPrimes))];
      std::size_t max_d = 0;
      for (std::int64_t q = p; q <= 729; q *= p) ++max_d;
      cfg.group = GroupSpec::elementary(p, 1 + rng.below(max_d));
    } else {
      cfg.mode = GenMode::prune_closure;
      cfg.group = GroupSpec::integers();
      cfg.size = 4 + rng.below(17);
      cfg.bound = rng.between(3, 50);
      cfg.seed = rng.next();
    }
    if (auto set = random_sumfull_set(cfg)) return std::move(*set);
  }
}

}  // namespace zerosum
