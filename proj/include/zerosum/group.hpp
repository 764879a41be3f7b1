#pragma once

// Finitely generated abelian groups Z^r x Z_{m_1} x ... x Z_{m_t} with exact,
// overflow-checked 64-bit arithmetic.
//
// An element is a flat coordinate vector: the r free coordinates first, then
// one residue per torsion factor. Torsion residues are always stored reduced
// into [0, m_i), so equality of elements is plain coordinate equality and the
// lexicographic order on coordinates is the canonical total order.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zerosum/errors.hpp"

namespace zerosum {

struct GroupSpec {
  std::size_t free_rank = 0;
  std::vector<std::int64_t> torsion;

  GroupSpec() = default;
  GroupSpec(std::size_t rank, std::vector<std::int64_t> moduli)
      : free_rank(rank), torsion(std::move(moduli)) {
    for (auto m : torsion) {
      if (m < 2) throw InputError("torsion modulus must be at least 2, got " + std::to_string(m));
    }
  }

  static GroupSpec integers(std::size_t rank = 1) { return GroupSpec(rank, {}); }
  static GroupSpec cyclic(std::int64_t m) { return GroupSpec(0, {m}); }
  // (Z_p)^d, i.e. the d-dimensional vector space over the p-element field.
  static GroupSpec elementary(std::int64_t p, std::size_t d) {
    return GroupSpec(0, std::vector<std::int64_t>(d, p));
  }

  std::size_t dimension() const noexcept { return free_rank + torsion.size(); }
  bool is_finite() const noexcept { return free_rank == 0; }
  bool is_trivial() const noexcept { return dimension() == 0; }

  // Number of elements. Throws for infinite groups or when the order does
  // not fit in 64 bits.
  std::uint64_t order() const {
    if (!is_finite()) throw InputError("group has infinite order");
    std::uint64_t result = 1;
    for (auto m : torsion) {
      if (__builtin_mul_overflow(result, static_cast<std::uint64_t>(m), &result)) {
        throw OverflowError("group order overflows 64 bits");
      }
    }
    return result;
  }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}

  std::span<const std::int64_t> coords() const noexcept { return coords_; }
  std::span<std::int64_t> coords() noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }

  std::span<const std::int64_t> free_part(const GroupSpec& g) const {
    return coords().first(g.free_rank);
  }
  std::span<const std::int64_t> torsion_part(const GroupSpec& g) const {
    return coords().subspan(g.free_rank);
  }

  bool is_zero() const noexcept {
    for (auto c : coords_) {
      if (c != 0) return false;
    }
    return true;
  }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

 private:
  std::vector<std::int64_t> coords_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& x) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto c : x.coords()) {
      h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

namespace detail {

inline std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw OverflowError("free coordinate overflows 64 bits");
  return r;
}

inline std::int64_t checked_neg(std::int64_t x) {
  std::int64_t r;
  if (__builtin_sub_overflow(std::int64_t{0}, x, &r)) {
    throw OverflowError("free coordinate overflows 64 bits");
  }
  return r;
}

// x, y in [0, m); never overflows.
inline std::int64_t mod_add(std::int64_t x, std::int64_t y, std::int64_t m) noexcept {
  std::int64_t r = x - (m - y);
  return r < 0 ? r + m : r;
}

inline std::int64_t reduce(std::int64_t x, std::int64_t m) noexcept {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

inline void require_shape(const GroupElement& x, const GroupSpec& g) {
  if (x.size() != g.dimension()) {
    throw InputError("element has " + std::to_string(x.size()) + " coordinates, group expects " +
                     std::to_string(g.dimension()));
  }
}

}  // namespace detail

// True when x has the right length and reduced torsion residues.
inline bool conforms(const GroupElement& x, const GroupSpec& g) noexcept {
  if (x.size() != g.dimension()) return false;
  for (std::size_t t = 0; t < g.torsion.size(); ++t) {
    auto v = x[g.free_rank + t];
    if (v < 0 || v >= g.torsion[t]) return false;
  }
  return true;
}

// Builds the canonical element with the given coordinates; torsion
// coordinates may be any integer and are reduced.
inline GroupElement make_element(const GroupSpec& g, std::vector<std::int64_t> coords) {
  if (coords.size() != g.dimension()) {
    throw InputError("element has " + std::to_string(coords.size()) + " coordinates, group expects " +
                     std::to_string(g.dimension()));
  }
  for (std::size_t t = 0; t < g.torsion.size(); ++t) {
    coords[g.free_rank + t] = detail::reduce(coords[g.free_rank + t], g.torsion[t]);
  }
  return GroupElement(std::move(coords));
}

inline GroupElement zero(const GroupSpec& g) {
  return GroupElement(std::vector<std::int64_t>(g.dimension(), 0));
}

// acc += x, in place.
inline void add_into(GroupElement& acc, const GroupElement& x, const GroupSpec& g) {
  detail::require_shape(acc, g);
  detail::require_shape(x, g);
  auto out = acc.coords();
  auto in = x.coords();
  for (std::size_t f = 0; f < g.free_rank; ++f) out[f] = detail::checked_add(out[f], in[f]);
  for (std::size_t t = 0; t < g.torsion.size(); ++t) {
    auto k = g.free_rank + t;
    out[k] = detail::mod_add(out[k], in[k], g.torsion[t]);
  }
}

inline GroupElement add(const GroupElement& x, const GroupElement& y, const GroupSpec& g) {
  GroupElement r = x;
  add_into(r, y, g);
  return r;
}

inline GroupElement negate(const GroupElement& x, const GroupSpec& g) {
  detail::require_shape(x, g);
  GroupElement r = x;
  auto out = r.coords();
  for (std::size_t f = 0; f < g.free_rank; ++f) out[f] = detail::checked_neg(out[f]);
  for (std::size_t t = 0; t < g.torsion.size(); ++t) {
    auto k = g.free_rank + t;
    out[k] = out[k] == 0 ? 0 : g.torsion[t] - out[k];
  }
  return r;
}

// out = x - y, reusing out's storage.
inline void subtract_into(GroupElement& out, const GroupElement& x, const GroupElement& y,
                          const GroupSpec& g) {
  detail::require_shape(x, g);
  detail::require_shape(y, g);
  if (out.size() != x.size()) out = GroupElement(std::vector<std::int64_t>(x.size()));
  auto o = out.coords();
  for (std::size_t f = 0; f < g.free_rank; ++f) {
    std::int64_t r;
    if (__builtin_sub_overflow(x[f], y[f], &r)) throw OverflowError("free coordinate overflows 64 bits");
    o[f] = r;
  }
  for (std::size_t t = 0; t < g.torsion.size(); ++t) {
    auto k = g.free_rank + t;
    o[k] = detail::mod_add(x[k], y[k] == 0 ? 0 : g.torsion[t] - y[k], g.torsion[t]);
  }
}

inline GroupElement subtract(const GroupElement& x, const GroupElement& y, const GroupSpec& g) {
  GroupElement r;
  subtract_into(r, x, y, g);
  return r;
}

inline GroupElement scalar_sum(std::span<const GroupElement> elements, const GroupSpec& g) {
  GroupElement acc = zero(g);
  for (const auto& x : elements) add_into(acc, x, g);
  return acc;
}

}  // namespace zerosum
