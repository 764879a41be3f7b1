#pragma once

// JSON encodings shared by the command-line tool and the tests.
//
// Instance:    {"format": 1, "group": {"free_rank": r, "torsion": [m1, ...]},
//               "elements": [[x1, ..., x_{r+t}], ...]}
// Matrix:      {"matrix": [[...], ...]}
// Witness:     {"rows": [...], "vector": [...]}
// Certificate: {"format": 1, "group": ..., "subset": [...], "elements": [...],
//               "sum_check": "zero", "trail": {"kind": "pipeline" | "zero_element", ...}}
//
// Indices are 0-based positions in the canonical (sorted, duplicate-free)
// element order.

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "zerosum/char3.hpp"
#include "zerosum/errors.hpp"
#include "zerosum/extractor.hpp"
#include "zerosum/group.hpp"
#include "zerosum/sumfull.hpp"
#include "zerosum/witness.hpp"

namespace zerosum::io {

using nlohmann::json;

inline constexpr int kFormat = 1;

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

// 64-bit FNV-1a, chained through h; used to fingerprint JSON outputs.
inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = kFnvOffset) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("bad ") + what + ": " + e.what());
  }
}

}  // namespace detail

inline json to_json(const GroupSpec& g) { return {{"free_rank", g.free_rank}, {"torsion", g.torsion}}; }

inline GroupSpec group_from_json(const json& j) {
  auto rank = detail::as<std::int64_t>(detail::field(j, "free_rank"), "free_rank");
  if (rank < 0) throw InputError("free_rank must be non-negative");
  auto torsion = j.contains("torsion") ? detail::as<std::vector<std::int64_t>>(j.at("torsion"), "torsion")
                                       : std::vector<std::int64_t>{};
  return GroupSpec(static_cast<std::size_t>(rank), std::move(torsion));
}

inline json to_json(const GroupElement& x) { return std::vector<std::int64_t>(x.coords().begin(), x.coords().end()); }

inline json to_json(std::span<const GroupElement> xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

inline std::vector<GroupElement> elements_from_json(const json& j, const GroupSpec& g) {
  if (!j.is_array()) throw InputError("elements must be an array");
  std::vector<GroupElement> out;
  for (const auto& e : j) out.push_back(make_element(g, detail::as<std::vector<std::int64_t>>(e, "element")));
  return out;
}

inline json to_json(const InputSet& a) {
  return {{"format", kFormat}, {"group", to_json(a.spec())}, {"elements", to_json(a.elements())}};
}

inline InputSet instance_from_json(const json& j) {
  auto g = group_from_json(detail::field(j, "group"));
  return InputSet(g, elements_from_json(detail::field(j, "elements"), g));
}

inline json to_json(const RepresentationTable& t) {
  json out = json::array();
  for (const auto& r : t.reps) out.push_back({r.i, r.j});
  return out;
}

inline RepresentationTable table_from_json(const json& j) {
  RepresentationTable t;
  for (const auto& pair : detail::as<std::vector<std::vector<std::size_t>>>(j, "representations")) {
    if (pair.size() != 2) throw InputError("representation must be a pair");
    t.reps.push_back({pair[0], pair[1]});
  }
  return t;
}

inline IntMatrix matrix_from_json(const json& j) { return detail::as<IntMatrix>(j, "matrix"); }

inline json to_json(const WitnessSubset& w) { return {{"rows", w.rows}, {"vector", w.vector}}; }

inline WitnessSubset witness_from_json(const json& j) {
  return {detail::as<std::vector<std::size_t>>(detail::field(j, "rows"), "rows"),
          detail::as<std::vector<std::int64_t>>(detail::field(j, "vector"), "vector")};
}

inline json to_json(const ZeroSumCertificate& c, const GroupSpec& g) {
  json trail;
  if (c.trail) {
    trail = {{"kind", "pipeline"},
             {"representations", to_json(c.trail->table)},
             {"matrix", c.trail->matrix},
             {"witness", to_json(c.trail->witness)}};
  } else {
    trail = {{"kind", "zero_element"}};
  }
  return {{"format", kFormat},         {"group", to_json(g)},  {"subset", c.subset},
          {"elements", to_json(c.elements)}, {"sum_check", "zero"}, {"trail", trail}};
}

inline ZeroSumCertificate certificate_from_json(const json& j) {
  const auto g = group_from_json(detail::field(j, "group"));
  ZeroSumCertificate c;
  c.subset = detail::as<std::vector<std::size_t>>(detail::field(j, "subset"), "subset");
  c.elements = elements_from_json(detail::field(j, "elements"), g);
  const auto& trail = detail::field(j, "trail");
  const auto kind = detail::as<std::string>(detail::field(trail, "kind"), "trail kind");
  if (kind == "pipeline") {
    c.trail = CertificateTrail{table_from_json(detail::field(trail, "representations")),
                               matrix_from_json(detail::field(trail, "matrix")),
                               witness_from_json(detail::field(trail, "witness"))};
  } else if (kind != "zero_element") {
    throw InputError("unknown trail kind \"" + kind + "\"");
  }
  return c;
}

inline json to_json(const AdditiveQuadruple& q) {
  json out = json::array();
  for (const auto& x : q.terms) out.push_back(to_json(x));
  return out;
}

inline json to_json(const SidonVerdict& v) {
  json out = {{"sidon", v.sidon()}};
  if (v.violation) out["quadruple"] = to_json(*v.violation);
  return out;
}

inline json to_json(const ChainResult& r) {
  json out = {{"a_chain", r.a_chain}, {"b_chain", r.b_chain}, {"window_begin", r.window_begin}};
  if (const auto* list = std::get_if<ZeroSumList>(&r.outcome)) {
    out["outcome"] = "zero_sum";
    out["indices"] = list->indices;
    out["distinct"] = list->distinct;
  } else {
    const auto& q = std::get<ChainQuadruple>(r.outcome);
    out["outcome"] = "quadruple";
    out["indices"] = q.indices;
    out["quadruple"] = to_json(q.quadruple);
  }
  return out;
}

inline const char* to_string(StepStatus s) {
  switch (s) {
    case StepStatus::holds: return "holds";
    case StepStatus::fails: return "fails";
    case StepStatus::skipped: return "skipped";
  }
  return "?";
}

inline json to_json(const AuditReport& r) {
  json steps = json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"step", s.number}, {"name", s.name}, {"status", to_string(s.status)}, {"detail", s.detail}});
  }
  json out = {{"format", kFormat},
              {"n", r.n},
              {"ambient_dim", r.ambient_dim},
              {"span_dim", r.span_dim},
              {"restricted_to_span", r.restricted_to_span},
              {"steps", steps},
              {"first_failure", r.first_failure},
              {"basis", r.basis}};
  if (r.triple) out["triple"] = *r.triple;
  if (r.quadruple) out["quadruple"] = to_json(*r.quadruple);
  if (r.chain) out["chain"] = to_json(*r.chain);
  out["zero_sum"] = r.zero_sum.empty() ? json(nullptr) : json(r.zero_sum);
  return out;
}

}  // namespace zerosum::io
