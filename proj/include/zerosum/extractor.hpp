#pragma once

// Sum-full set -> zero-sum subset.
//
// Each fixed representation a_k = a_i + a_j becomes row k of a matrix: -1 in
// column k, +1 in columns i and j. Every row is orthogonal to (a_1, ..., a_n)
// and the matrix lies in M_n, so a witness row set sums to a 0/1 vector v that
// is orthogonal to a as well; the support of v is a zero-sum subset.

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "zerosum/errors.hpp"
#include "zerosum/group.hpp"
#include "zerosum/sumfull.hpp"
#include "zerosum/witness.hpp"

namespace zerosum {

struct CertificateTrail {
  RepresentationTable table;
  IntMatrix matrix;
  WitnessSubset witness;
  friend bool operator==(const CertificateTrail&, const CertificateTrail&) = default;
};

struct ZeroSumCertificate {
  std::vector<std::size_t> subset;     // S, ascending
  std::vector<GroupElement> elements;  // a_k for k in S
  // Empty when the input contains zero and {0} was returned directly.
  std::optional<CertificateTrail> trail;
  friend bool operator==(const ZeroSumCertificate&, const ZeroSumCertificate&) = default;
};

using ExtractResult = std::variant<ZeroSumCertificate, NotSumFull>;

inline ConstraintMatrix build_matrix(const RepresentationTable& t) {
  const std::size_t n = t.size();
  if (n == 0) throw InputError("representation table is empty");
  std::vector<std::int64_t> entries(n * n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    auto [i, j] = t[k];
    if (i >= n || j >= n || i == k || j == k) {
      throw InputError("representation of element " + std::to_string(k) + " is invalid");
    }
    entries[k * n + k] -= 1;
    entries[k * n + i] += 1;
    entries[k * n + j] += 1;
  }
  return ConstraintMatrix(detail::trusted, n, std::move(entries));
}

inline std::vector<std::size_t> support(std::span<const std::int64_t> v) {
  std::vector<std::size_t> s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 1) s.push_back(k);
  }
  return s;
}

inline ExtractResult extract(const InputSet& a) {
  if (auto z = a.index_of(zero(a.spec()))) {
    return ZeroSumCertificate{{*z}, {a[*z]}, std::nullopt};
  }
  auto checked = check_sum_full(a);
  if (auto* bad = std::get_if<NotSumFull>(&checked)) return *bad;
  auto& table = std::get<RepresentationTable>(checked);

  auto matrix = build_matrix(table);
  auto witness = find_witness(matrix);

  ZeroSumCertificate cert;
  cert.subset = support(witness.vector);
  for (auto k : cert.subset) cert.elements.push_back(a[k]);
  if (cert.subset.empty() || !scalar_sum(cert.elements, a.spec()).is_zero()) {
    throw InternalError("extracted subset does not sum to zero");
  }
  cert.trail = CertificateTrail{std::move(table), matrix.to_rows(), std::move(witness)};
  return cert;
}

// Re-derives every claim of the certificate from a alone.
inline bool verify_certificate(const ZeroSumCertificate& c, const InputSet& a) {
  if (c.subset.empty() || c.subset.size() != c.elements.size()) return false;
  for (std::size_t s = 0; s < c.subset.size(); ++s) {
    if (c.subset[s] >= a.size()) return false;
    if (s > 0 && c.subset[s] <= c.subset[s - 1]) return false;
    if (c.elements[s] != a[c.subset[s]]) return false;
  }
  if (!scalar_sum(c.elements, a.spec()).is_zero()) return false;

  if (!c.trail) return c.subset.size() == 1 && a[c.subset[0]].is_zero();

  const auto& trail = *c.trail;
  if (!table_is_valid(trail.table, a)) return false;
  const auto expected = build_matrix(trail.table);
  if (trail.matrix != expected.to_rows()) return false;
  if (!verify_witness(expected, trail.witness)) return false;
  return support(trail.witness.vector) == c.subset;
}

}  // namespace zerosum
