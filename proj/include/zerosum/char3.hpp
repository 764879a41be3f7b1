#pragma once

// Sidon sets, the chain construction for sum-full sets relative to a proper
// subgroup, subgroup generation, Olson's bound, linear algebra over F_p, and
// a step-by-step audit of the F_3 counting argument.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "zerosum/errors.hpp"
#include "zerosum/extractor.hpp"
#include "zerosum/group.hpp"
#include "zerosum/sumfull.hpp"

namespace zerosum {

// terms[0] + terms[1] == terms[2] + terms[3] with {terms[0], terms[1]} !=
// {terms[2], terms[3]}.
struct AdditiveQuadruple {
  std::array<GroupElement, 4> terms;
  friend bool operator==(const AdditiveQuadruple&, const AdditiveQuadruple&) = default;
};

inline bool is_valid_quadruple(const AdditiveQuadruple& q, const GroupSpec& g) {
  const auto& [a1, a2, a3, a4] = q.terms;
  for (const auto& x : q.terms) {
    if (!conforms(x, g)) return false;
  }
  if (add(a1, a2, g) != add(a3, a4, g)) return false;
  const bool same_pair = (a1 == a3 && a2 == a4) || (a1 == a4 && a2 == a3);
  return !same_pair;
}

struct SidonVerdict {
  std::optional<AdditiveQuadruple> violation;
  bool sidon() const noexcept { return !violation.has_value(); }
  friend bool operator==(const SidonVerdict&, const SidonVerdict&) = default;
};

// Scans pairs (i, j), i <= j, in lexicographic order and stops at the first
// pair whose sum was already produced by an earlier pair. The quadruple is
// (earlier pair, this pair).
inline SidonVerdict is_sidon(std::span<const GroupElement> b, const GroupSpec& g) {
  std::map<GroupElement, std::pair<std::size_t, std::size_t>> first_pair;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i; j < b.size(); ++j) {
      auto [it, fresh] = first_pair.try_emplace(add(b[i], b[j], g), i, j);
      if (!fresh) {
        auto [k, l] = it->second;
        return {AdditiveQuadruple{{b[k], b[l], b[i], b[j]}}};
      }
    }
  }
  return {};
}

// A subgroup of a finite group, realized as its sorted element list. The
// trivial subgroup is available in every group.
class SubgroupHandle {
 public:
  SubgroupHandle(std::vector<GroupElement> generators, std::vector<GroupElement> realized)
      : generators_(std::move(generators)), realized_(std::move(realized)) {
    std::sort(realized_.begin(), realized_.end());
  }

  static SubgroupHandle trivial(const GroupSpec& g) { return SubgroupHandle({}, {zero(g)}); }

  std::span<const GroupElement> generators() const noexcept { return generators_; }
  std::span<const GroupElement> elements() const noexcept { return realized_; }
  std::size_t size() const noexcept { return realized_.size(); }
  bool contains(const GroupElement& x) const {
    return std::binary_search(realized_.begin(), realized_.end(), x);
  }

 private:
  std::vector<GroupElement> generators_;
  std::vector<GroupElement> realized_;
};

inline constexpr std::uint64_t kDefaultMaxGroup = 1'000'000;

// Breadth-first closure of {0} under adding generators. In a finite group
// this is the generated subgroup.
inline SubgroupHandle subgroup_closure(std::span<const GroupElement> gens, const GroupSpec& g,
                                       std::uint64_t max_group = kDefaultMaxGroup) {
  if (!g.is_finite()) throw InputError("subgroup closure needs a finite ambient group");
  if (g.order() > max_group) {
    throw BudgetExceeded("ambient group order " + std::to_string(g.order()) + " exceeds " +
                         std::to_string(max_group));
  }
  for (const auto& x : gens) {
    if (!conforms(x, g)) throw InputError("generator does not belong to the group");
  }
  std::set<GroupElement> seen{zero(g)};
  std::deque<GroupElement> frontier{zero(g)};
  while (!frontier.empty()) {
    auto x = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& s : gens) {
      auto y = add(x, s, g);
      if (seen.insert(y).second) frontier.push_back(std::move(y));
    }
  }
  return SubgroupHandle(std::vector<GroupElement>(gens.begin(), gens.end()),
                        std::vector<GroupElement>(seen.begin(), seen.end()));
}

// Does A \ B generate the whole ambient group?
inline bool check_complement_generating(const InputSet& a, std::span<const std::size_t> b,
                                        std::uint64_t max_group = kDefaultMaxGroup) {
  std::vector<bool> removed(a.size(), false);
  for (auto k : b) {
    if (k >= a.size()) throw InputError("subset index out of range");
    removed[k] = true;
  }
  std::vector<GroupElement> rest;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!removed[k]) rest.push_back(a[k]);
  }
  return subgroup_closure(rest, a.spec(), max_group).size() == a.spec().order();
}

// ---------------------------------------------------------------------------
// Chain construction.
//
// Starting from a_1 outside H, follow a_k = a_{k+1} + b_k where a_{k+1} is a
// summand of the fixed representation of a_k lying outside H. The first
// repeat a_i = a_j telescopes to b_i + ... + b_{j-1} = 0. If those b's are
// pairwise distinct they form a zero-sum subset; otherwise a repeat
// b_s = b_t gives a_s + a_{t+1} = a_{s+1} + a_t.

struct ZeroSumList {
  std::vector<std::size_t> indices;  // in chain order
  bool distinct = true;
  friend bool operator==(const ZeroSumList&, const ZeroSumList&) = default;
};

struct ChainQuadruple {
  std::array<std::size_t, 4> indices;  // a_s, a_{t+1}, a_{s+1}, a_t
  AdditiveQuadruple quadruple;
  friend bool operator==(const ChainQuadruple&, const ChainQuadruple&) = default;
};

struct ChainResult {
  std::vector<std::size_t> a_chain;  // a_1, a_2, ..., ending with the repeated element
  std::vector<std::size_t> b_chain;  // b_1, b_2, ...; one shorter than a_chain
  std::size_t window_begin = 0;      // a_chain[window_begin] == a_chain.back()
  std::variant<ZeroSumList, ChainQuadruple> outcome;
};

inline ChainResult chain_extract(const InputSet& a, const SubgroupHandle& h) {
  const auto table = require_sum_full(a);
  std::optional<std::size_t> start;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!h.contains(a[k])) {
      start = k;
      break;
    }
  }
  if (!start) throw InputError("every element of A lies in H");

  if (auto z = a.index_of(zero(a.spec()))) {
    return ChainResult{{}, {}, 0, ZeroSumList{{*z}, true}};
  }

  ChainResult r;
  std::vector<std::ptrdiff_t> position(a.size(), -1);
  r.a_chain.push_back(*start);
  position[*start] = 0;
  for (;;) {
    auto [i, j] = table[r.a_chain.back()];
    const bool take_i = !h.contains(a[i]);
    const std::size_t next = take_i ? i : j;
    r.b_chain.push_back(take_i ? j : i);
    r.a_chain.push_back(next);
    if (position[next] >= 0) {
      r.window_begin = static_cast<std::size_t>(position[next]);
      break;
    }
    position[next] = static_cast<std::ptrdiff_t>(r.a_chain.size() - 1);
  }

  const std::size_t lo = r.window_begin;
  const std::size_t hi = r.a_chain.size() - 1;
  for (std::size_t s = lo; s < hi; ++s) {
    for (std::size_t t = s + 1; t < hi; ++t) {
      if (r.b_chain[s] != r.b_chain[t]) continue;
      const auto as = r.a_chain[s], as1 = r.a_chain[s + 1];
      const auto at = r.a_chain[t], at1 = r.a_chain[t + 1];
      if (as == as1) {
        r.outcome = ZeroSumList{{r.b_chain[s]}, true};
        return r;
      }
      if (as == at) throw InternalError("chain window repeats an element");
      r.outcome = ChainQuadruple{{as, at1, as1, at}, AdditiveQuadruple{{a[as], a[at1], a[as1], a[at]}}};
      return r;
    }
  }
  r.outcome = ZeroSumList{std::vector<std::size_t>(r.b_chain.begin() + static_cast<std::ptrdiff_t>(lo),
                                                   r.b_chain.begin() + static_cast<std::ptrdiff_t>(hi)),
                          true};
  return r;
}

// Checks the outcome's own invariant by recomputation.
inline bool verify_chain_outcome(const ChainResult& r, const InputSet& a) {
  if (const auto* list = std::get_if<ZeroSumList>(&r.outcome)) {
    if (list->indices.empty()) return false;
    std::vector<GroupElement> terms;
    for (auto k : list->indices) {
      if (k >= a.size()) return false;
      terms.push_back(a[k]);
    }
    auto sorted = list->indices;
    std::sort(sorted.begin(), sorted.end());
    const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    return distinct == list->distinct && scalar_sum(terms, a.spec()).is_zero();
  }
  const auto& q = std::get<ChainQuadruple>(r.outcome);
  for (std::size_t t = 0; t < 4; ++t) {
    if (q.indices[t] >= a.size() || a[q.indices[t]] != q.quadruple.terms[t]) return false;
  }
  return is_valid_quadruple(q.quadruple, a.spec());
}

// ---------------------------------------------------------------------------
// Olson's bound and F_p linear algebra.

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d <= p / d; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// Largest length of a zero-sum-free sequence in the p-group with invariants
// p^a_1, ..., p^a_m: sum of p^a_i minus m.
inline std::int64_t olson_bound(std::int64_t p, std::span<const std::int64_t> exponents) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  std::int64_t total = 0;
  for (auto alpha : exponents) {
    if (alpha < 1) throw InputError("exponents must be at least 1");
    std::int64_t power = 1;
    for (std::int64_t e = 0; e < alpha; ++e) {
      if (__builtin_mul_overflow(power, p, &power)) throw OverflowError("p^alpha overflows 64 bits");
    }
    if (__builtin_add_overflow(total, power - 1, &total)) throw OverflowError("bound overflows 64 bits");
  }
  return total;
}

struct FpBasis {
  std::size_t rank = 0;
  std::vector<std::size_t> indices;  // positions in the input, ascending
  friend bool operator==(const FpBasis&, const FpBasis&) = default;
};

namespace detail {

inline std::int64_t mul_mod(std::int64_t x, std::int64_t y, std::int64_t p) {
  return static_cast<std::int64_t>(static_cast<__int128>(x) * y % p);
}

inline std::int64_t inv_mod(std::int64_t x, std::int64_t p) {
  std::int64_t result = 1, base = x % p, e = p - 2;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return result;
}

}  // namespace detail

// Greedy elimination: an input vector joins the basis when it is independent
// of the ones kept so far, which yields the lexicographically first basis.
inline FpBasis fp_basis(std::span<const std::vector<std::int64_t>> vectors, std::int64_t p) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  FpBasis out;
  std::vector<std::vector<std::int64_t>> rows;  // pivot entry normalized to 1
  std::vector<std::size_t> pivots;
  for (std::size_t idx = 0; idx < vectors.size(); ++idx) {
    auto v = vectors[idx];
    for (auto& x : v) {
      if (x < 0 || x >= p) throw InputError("coordinate outside [0, p)");
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto f = v[pivots[r]];
      if (f == 0) continue;
      for (std::size_t c = 0; c < v.size(); ++c) {
        v[c] = (v[c] - detail::mul_mod(f, rows[r][c], p) % p + p) % p;
      }
    }
    auto lead = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
    if (lead == v.end()) continue;
    const auto inv = detail::inv_mod(*lead, p);
    for (auto& x : v) x = detail::mul_mod(x, inv, p);
    pivots.push_back(static_cast<std::size_t>(lead - v.begin()));
    rows.push_back(std::move(v));
    out.indices.push_back(idx);
  }
  out.rank = rows.size();
  return out;
}

// ---------------------------------------------------------------------------
// Audit of the F_3 counting argument. Assuming A sum-full and zero-sum-free
// in its span V of dimension m:
//   1. |A| <= 2m by Olson's bound;
//   2. pick the least a and its fixed representation a = b + c;
//   3. {a, b, c} is Sidon;
//   4. so A \ {a, b, c} still spans V; fix a basis B inside it;
//   5. so A \ B spans V, impossible since |A \ B| <= m and a, b, c are
//      dependent.
// A is never zero-sum-free, so some step fails; the report says which and
// exhibits the structure behind the failure when it can.

enum class StepStatus { holds, fails, skipped };

struct AuditStep {
  int number = 0;
  std::string name;
  StepStatus status = StepStatus::skipped;
  std::string detail;
};

struct AuditReport {
  std::size_t n = 0;
  std::size_t ambient_dim = 0;
  std::size_t span_dim = 0;
  bool restricted_to_span = false;
  std::optional<std::array<std::size_t, 3>> triple;  // a, b, c
  std::vector<std::size_t> basis;
  std::vector<AuditStep> steps;
  int first_failure = 0;
  std::optional<AdditiveQuadruple> quadruple;
  std::optional<ChainResult> chain;
  std::vector<std::size_t> zero_sum;  // ascending indices, when one was surfaced
};

namespace detail {

inline std::vector<std::vector<std::int64_t>> coordinate_rows(const InputSet& a,
                                                              std::span<const std::size_t> which) {
  std::vector<std::vector<std::int64_t>> rows;
  for (auto k : which) rows.emplace_back(a[k].coords().begin(), a[k].coords().end());
  return rows;
}

inline std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> removed) {
  std::vector<bool> gone(n, false);
  for (auto k : removed) gone[k] = true;
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < n; ++k) {
    if (!gone[k]) rest.push_back(k);
  }
  return rest;
}

}  // namespace detail

inline AuditReport audit_char3(const InputSet& a, std::uint64_t max_group = kDefaultMaxGroup) {
  const auto& g = a.spec();
  if (g.free_rank != 0 || std::any_of(g.torsion.begin(), g.torsion.end(), [](auto m) { return m != 3; })) {
    throw InputError("audit needs an elementary abelian 3-group");
  }
  const auto table = require_sum_full(a);

  AuditReport rep;
  rep.n = a.size();
  rep.ambient_dim = g.torsion.size();
  std::vector<std::size_t> all(a.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const auto rank_of = [&](std::span<const std::size_t> idx) {
    return fp_basis(detail::coordinate_rows(a, idx), 3).rank;
  };
  rep.span_dim = rank_of(all);
  rep.restricted_to_span = rep.span_dim < rep.ambient_dim;
  const std::size_t m = rep.span_dim;

  auto record = [&](int number, std::string name, StepStatus status, std::string detail) {
    rep.steps.push_back({number, std::move(name), status, std::move(detail)});
    if (status == StepStatus::fails && rep.first_failure == 0) rep.first_failure = number;
  };

  // Surfaces the zero-sum structure implied by A \ removed not spanning:
  // run the chain against H = <A \ removed>.
  auto surface_chain = [&](std::span<const std::size_t> removed) {
    try {
      const auto rest = detail::complement(a.size(), removed);
      std::vector<GroupElement> gens;
      for (auto k : rest) gens.push_back(a[k]);
      auto chain = chain_extract(a, subgroup_closure(gens, g, max_group));
      if (auto* list = std::get_if<ZeroSumList>(&chain.outcome); list && list->distinct && rep.zero_sum.empty()) {
        rep.zero_sum = list->indices;
        std::sort(rep.zero_sum.begin(), rep.zero_sum.end());
      }
      rep.chain = std::move(chain);
    } catch (const BudgetExceeded&) {
    }
  };

  const bool small = a.size() <= 2 * m;
  record(1, "olson_cardinality", small ? StepStatus::holds : StepStatus::fails,
         "n = " + std::to_string(a.size()) + ", 2m = " + std::to_string(2 * m));
  if (!small) {
    auto result = extract(a);
    if (auto* cert = std::get_if<ZeroSumCertificate>(&result)) rep.zero_sum = cert->subset;
  }

  const std::size_t ia = 0;
  const auto [ib, ic] = table[ia];
  rep.triple = {ia, ib, ic};
  record(2, "representation", StepStatus::holds,
         "a = a[" + std::to_string(ia) + "] = a[" + std::to_string(ib) + "] + a[" + std::to_string(ic) + "]");

  std::vector<std::size_t> triple_idx{ia, ib, ic};
  std::sort(triple_idx.begin(), triple_idx.end());
  triple_idx.erase(std::unique(triple_idx.begin(), triple_idx.end()), triple_idx.end());
  std::vector<GroupElement> triple;
  for (auto k : triple_idx) triple.push_back(a[k]);
  auto sidon = is_sidon(triple, g);
  record(3, "sidon_triple", sidon.sidon() ? StepStatus::holds : StepStatus::fails,
         sidon.sidon() ? "{a, b, c} has no nontrivial additive quadruple" : "{a, b, c} has an additive quadruple");
  if (!sidon.sidon()) rep.quadruple = sidon.violation;

  const auto rest = detail::complement(a.size(), triple_idx);
  const auto rest_rank = rank_of(rest);
  const bool rest_spans = rest_rank == m;
  record(4, "triple_complement_spans", rest_spans ? StepStatus::holds : StepStatus::fails,
         "rank of A \\ {a, b, c} is " + std::to_string(rest_rank) + ", m = " + std::to_string(m));
  if (!rest_spans) {
    surface_chain(triple_idx);
    record(5, "basis_complement_spans", StepStatus::skipped, "no basis inside A \\ {a, b, c}");
  } else {
    for (auto pos : fp_basis(detail::coordinate_rows(a, rest), 3).indices) rep.basis.push_back(rest[pos]);
    const auto outside = detail::complement(a.size(), rep.basis);
    const auto outside_rank = rank_of(outside);
    const bool spans = outside_rank == m;
    record(5, "basis_complement_spans", spans ? StepStatus::holds : StepStatus::fails,
           "|A \\ B| = " + std::to_string(outside.size()) + ", rank " + std::to_string(outside_rank) +
               ", m = " + std::to_string(m) + "; a, b, c are dependent");
    if (!spans) surface_chain(rep.basis);
  }

  if (rep.first_failure == 0) throw InternalError("every audit step holds for a sum-full set");
  return rep;
}

}  // namespace zerosum
